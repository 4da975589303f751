#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bias/bias.hpp"
#include "corpus/types.hpp"
#include "embedding/model.hpp"
#include "json.hpp"
#include "toxicity/classifier.hpp"

namespace targettox::indicator {

struct AdjectiveRecord {
  std::string word;
  std::uint64_t frequency = 0;
  double fpr = 0.0;
  double toxicity = 0.0;
  double bias = 0.0;  // signed, for the active pair

  bool operator==(const AdjectiveRecord&) const = default;
};

using FrequencyTable = std::map<std::string, std::uint64_t, std::less<>>;

// Share of the table each word strictly outnumbers. Ties get the same value.
// Throws Error(InvalidArgument) on an empty table.
std::map<std::string, double, std::less<>> frequency_percentile_ranking(const FrequencyTable& freqs);

// Mean of bias * fpr * toxicity. Every bias must be positive (pass records
// already oriented toward the target). Throws Error(Data) "no biased
// adjectives" on empty input.
double targeted_toxicity(std::span<const AdjectiveRecord> records);

inline double saliency(const AdjectiveRecord& r) { return r.bias * r.fpr; }

enum class Direction { TowardA, TowardB };
const char* direction_name(Direction d);

// Records leaning to one side of the pair, with the bias flipped to a
// positive magnitude for TowardB. Zero-bias records belong to neither side.
std::vector<AdjectiveRecord> oriented(std::span<const AdjectiveRecord> records, Direction d);

// Top k by saliency (ties broken by word) among the oriented records.
std::vector<AdjectiveRecord> top_salient(std::span<const AdjectiveRecord> records, Direction d,
                                         std::size_t k);

enum class CiMethod { Normal, Percentile };
const char* ci_method_name(CiMethod m);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

double mean_of(std::span<const double> xs);
// Normal: mean +/- 1.96 * sd / sqrt(n) with the n-1 sample sd.
// Percentile: linearly interpolated 2.5th and 97.5th percentiles.
Interval confidence_interval(std::span<const double> xs, CiMethod method);

// Per-adjective frequency and embedded toxicity over a labeled sample,
// restricted to the words accepted by `accept`.
struct AdjectiveStats {
  FrequencyTable frequency;
  std::map<std::string, double, std::less<>> toxicity;
  std::map<std::string, double, std::less<>> fpr;
};

AdjectiveStats adjective_statistics(const std::vector<corpus::TokenizedSentence>& sentences,
                                    std::span<const int> labels,
                                    const std::function<bool(std::string_view)>& accept);

// Joins the statistics with the bias of each word; words the probe cannot
// score are skipped.
std::vector<AdjectiveRecord> make_records(const AdjectiveStats& stats, const bias::BiasProbe& probe);

struct AnalysisConfig {
  embedding::EmbeddingConfig embedding;
  std::size_t sample_size = 100000;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CiMethod ci_method = CiMethod::Normal;
  bias::CentroidWeighting weighting = bias::CentroidWeighting::Unweighted;
  unsigned threads = 1;
  std::size_t report_top = 50;

  nlohmann::json to_json() const;
};

struct ReplicateFailure {
  std::uint64_t seed = 0;
  std::string message;
};

struct IndicatorResult {
  std::string community;
  std::string pair;
  std::string target;  // name of the attribute set the direction points to
  Direction direction = Direction::TowardA;
  std::vector<double> replicates;  // successful replicates, seed order
  std::vector<std::uint64_t> seeds;
  std::vector<ReplicateFailure> failures;
  std::optional<double> mean;
  std::optional<Interval> ci95;
  CiMethod ci_method = CiMethod::Normal;
  std::size_t sample_size = 0;

  // Fatal when at least half of the replicates failed.
  bool ok() const { return failures.size() * 2 < failures.size() + replicates.size(); }
};

struct PairReplicate {
  std::vector<AdjectiveRecord> records;  // sorted by word
  std::size_t toward_a = 0;
  std::size_t toward_b = 0;
  std::size_t zero_bias = 0;
  std::vector<std::string> oov_a;
  std::vector<std::string> oov_b;
  std::optional<double> value_a;
  std::optional<double> value_b;
  std::string error_a;
  std::string error_b;
};

struct Replicate {
  std::uint64_t seed = 0;
  std::optional<std::string> error;  // whole replicate failed before scoring
  std::size_t sentences = 0;
  std::size_t toxic_sentences = 0;
  std::size_t vocabulary = 0;
  std::size_t adjectives = 0;
  std::vector<double> embedding_loss;
  std::vector<PairReplicate> pairs;  // parallel to the configured pairs
};

struct PairResult {
  bias::AttributePair pair;
  IndicatorResult toward_a;
  IndicatorResult toward_b;
};

struct CommunityAnalysis {
  std::string community;
  std::size_t archive_comments = 0;
  std::vector<Replicate> replicates;  // seed order as configured
  std::vector<PairResult> pairs;
};

// For every seed: bootstrap sample, train the community embedding, label
// sentences, build adjective records, partition and score both directions
// for every pair. Replicates run in parallel; aggregation follows seed order.
// Attribute words of every pair are left out of the adjective vocabulary.
CommunityAnalysis run_analysis(const corpus::PreparedArchive& archive,
                               const toxicity::SentenceScorer& scorer,
                               const std::vector<bias::AttributePair>& pairs,
                               const AnalysisConfig& config);

nlohmann::json to_json(const IndicatorResult& r);

struct SimilarityMatrix {
  std::vector<std::string> communities;
  // counts[i][j]: toward-A overlap for i < j, toward-B overlap for i > j.
  std::vector<std::vector<std::size_t>> counts;
  std::size_t k_requested = 0;
  std::size_t k = 0;
  std::vector<std::string> warnings;
  std::vector<std::vector<AdjectiveRecord>> top_a;
  std::vector<std::vector<AdjectiveRecord>> top_b;
};

// Throws Error(InvalidArgument) "need >= 2 communities". When some community
// has fewer than k adjectives on a side, k drops to the smallest count and a
// warning is recorded.
SimilarityMatrix similarity_matrix(
    const std::vector<std::pair<std::string, std::vector<AdjectiveRecord>>>& communities,
    std::size_t k = 100);

}  // namespace targettox::indicator

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bias/bias.hpp"
#include "embedding/model.hpp"
#include "indicator/indicator.hpp"
#include "json.hpp"
#include "toxicity/classifier.hpp"

namespace targettox::app {

inline constexpr const char* kConfigSchema = "targettox.config/1";

enum class Command { IngestStats, TrainToxicity, Analyze, Compare, Validate };
const char* command_name(Command c);

// Resolved run configuration. Files use an INI layout:
//
//   schema = targettox.config/1
//   seed = 7
//   [paths]
//   labeled = ../data/labeled/toxicity_20k.csv
//   archives = a.jsonl, b.jsonl
//   [pair identity]
//   a.name = male
//   a.words = male, man, boy
//
// Every key is also addressable as "section.key" (or "pair.NAME.key") so
// command-line flags can override it through set().
struct RunConfig {
  std::filesystem::path base_dir = ".";

  std::uint64_t seed = 1;
  bool deterministic = true;
  unsigned threads = 1;

  // [paths]
  std::filesystem::path labeled;
  std::vector<std::filesystem::path> archives;
  std::filesystem::path stopwords;
  std::filesystem::path lemmas;
  std::filesystem::path adjectives;
  std::filesystem::path abbreviations;
  std::filesystem::path model;
  std::filesystem::path output_dir = "out";

  // [ingest]
  std::string text_column = "body";

  // [classifier]
  toxicity::ClassifierConfig classifier;
  double train_fraction = 0.7;
  std::optional<std::uint64_t> split_seed;
  std::optional<std::uint64_t> optimizer_seed;
  double min_macro_f1 = 0.0;

  // [embedding]
  embedding::EmbeddingConfig embedding;

  // [analysis]
  std::size_t sample_size = 100000;
  std::size_t repetitions = 10;
  std::vector<std::uint64_t> seeds;  // empty: seed, seed+1, ...
  indicator::CiMethod ci_method = indicator::CiMethod::Normal;
  bias::CentroidWeighting weighting = bias::CentroidWeighting::Unweighted;
  std::vector<std::string> selected_pairs;  // empty: every pair
  std::size_t report_top = 50;

  // [pair NAME]; defaults when none are given
  std::vector<bias::AttributePair> pairs = bias::default_pairs();

  // [validation]
  std::filesystem::path neutral_pool;
  std::filesystem::path toxic_pool;
  std::vector<double> proportions;  // empty: linear over `steps`
  std::size_t steps = 10;
  std::size_t dataset_size = 10000;
  std::size_t validation_repetitions = 1;
  std::string validation_pair = "identity";
  std::string validation_target = "female";
  double threshold = 0.9;
  std::optional<std::uint64_t> mixture_seed;

  // [compare]
  std::vector<std::filesystem::path> records;
  std::string compare_pair = "identity";
  std::size_t k = 100;

  // Applies one key (e.g. "analysis.sample_size"); relative paths resolve
  // against `relative_to`. Throws Error(Config).
  void set(const std::string& key, const std::string& value,
           const std::filesystem::path& relative_to);

  // Throws Error(Config) listing every problem relevant to the command.
  void validate(Command command) const;

  std::vector<std::uint64_t> resolved_seeds() const;
  std::uint64_t resolved_split_seed() const { return split_seed.value_or(seed); }
  std::uint64_t resolved_mixture_seed() const { return mixture_seed.value_or(seed); }
  toxicity::ClassifierConfig classifier_config() const;
  // paths.model, or toxicity_model.json inside the output directory.
  std::filesystem::path model_path() const;
  std::vector<bias::AttributePair> active_pairs() const;
  // Every attribute word of every configured pair; exempt from stopwords.
  std::vector<std::string> attribute_words() const;
  indicator::AnalysisConfig analysis_config() const;

  nlohmann::json to_json() const;
};

// Parses config text; relative paths resolve against `base_dir`. Overrides
// are applied after the file, with paths relative to the working directory.
// Unknown keys and bad values are collected and reported together in one
// Error(Config).
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir,
                       const std::vector<std::pair<std::string, std::string>>& overrides = {});
RunConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, std::string>>& overrides = {});

}  // namespace targettox::app

#include "indicator/indicator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

#include "corpus/bootstrap.hpp"
#include "toxicity/embedded_toxicity.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

namespace targettox::indicator {

using nlohmann::json;

std::map<std::string, double, std::less<>> frequency_percentile_ranking(const FrequencyTable& freqs) {
  if (freqs.empty()) fail(ErrorKind::InvalidArgument, "frequency table is empty");
  std::vector<std::uint64_t> sorted;
  sorted.reserve(freqs.size());
  for (const auto& [w, f] : freqs) sorted.push_back(f);
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  std::map<std::string, double, std::less<>> out;
  for (const auto& [w, f] : freqs) {
    const auto below = std::lower_bound(sorted.begin(), sorted.end(), f) - sorted.begin();
    out.emplace(w, static_cast<double>(below) / n);
  }
  return out;
}

double targeted_toxicity(std::span<const AdjectiveRecord> records) {
  if (records.empty()) fail(ErrorKind::Data, "no biased adjectives");
  double sum = 0.0;
  for (const auto& r : records) {
    if (!(r.bias > 0)) {
      fail(ErrorKind::InvalidArgument, "record '" + r.word + "' is not biased toward the target");
    }
    sum += r.bias * r.fpr * r.toxicity;
  }
  const double v = sum / static_cast<double>(records.size());
  if (!std::isfinite(v)) fail(ErrorKind::Numeric, "targeted toxicity is not finite");
  return v;
}

const char* direction_name(Direction d) { return d == Direction::TowardA ? "toward_a" : "toward_b"; }

std::vector<AdjectiveRecord> oriented(std::span<const AdjectiveRecord> records, Direction d) {
  std::vector<AdjectiveRecord> out;
  for (const auto& r : records) {
    if (d == Direction::TowardA && r.bias > 0) {
      out.push_back(r);
    } else if (d == Direction::TowardB && r.bias < 0) {
      out.push_back(r);
      out.back().bias = -r.bias;
    }
  }
  return out;
}

std::vector<AdjectiveRecord> top_salient(std::span<const AdjectiveRecord> records, Direction d,
                                         std::size_t k) {
  auto side = oriented(records, d);
  std::sort(side.begin(), side.end(), [](const AdjectiveRecord& x, const AdjectiveRecord& y) {
    const double sx = saliency(x), sy = saliency(y);
    if (sx != sy) return sx > sy;
    return x.word < y.word;
  });
  if (side.size() > k) side.resize(k);
  return side;
}

const char* ci_method_name(CiMethod m) { return m == CiMethod::Normal ? "normal" : "percentile"; }

double mean_of(std::span<const double> xs) {
  if (xs.empty()) fail(ErrorKind::InvalidArgument, "mean of an empty list");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

Interval confidence_interval(std::span<const double> xs, CiMethod method) {
  const double m = mean_of(xs);
  const auto n = xs.size();
  if (method == CiMethod::Normal) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    const double half = 1.96 * sd / std::sqrt(static_cast<double>(n));
    return {m - half, m + half};
  }
  std::vector<double> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  auto quantile = [&](double p) {
    const double h = static_cast<double>(n - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, n - 1);
    return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
  };
  return {std::min(quantile(0.025), m), std::max(quantile(0.975), m)};
}

AdjectiveStats adjective_statistics(const std::vector<corpus::TokenizedSentence>& sentences,
                                    std::span<const int> labels,
                                    const std::function<bool(std::string_view)>& accept) {
  if (labels.size() != sentences.size()) {
    fail(ErrorKind::InvalidArgument, "label count does not match sentence count");
  }
  AdjectiveStats stats;
  for (const auto& s : sentences) {
    for (auto i : s.adjective_indices) {
      const auto& w = s.tokens[i];
      auto it = stats.frequency.find(w);
      if (it != stats.frequency.end()) {
        ++it->second;
      } else if (!accept || accept(w)) {
        stats.frequency.emplace(w, 1);
      }
    }
  }
  if (stats.frequency.empty()) return stats;
  auto index = toxicity::index_sentences(
      sentences, [&](std::string_view w) { return stats.frequency.find(w) != stats.frequency.end(); });
  stats.toxicity = toxicity::embedded_toxicity(labels, index);
  stats.fpr = frequency_percentile_ranking(stats.frequency);
  return stats;
}

std::vector<AdjectiveRecord> make_records(const AdjectiveStats& stats, const bias::BiasProbe& probe) {
  std::vector<AdjectiveRecord> out;
  for (const auto& [word, freq] : stats.frequency) {
    auto b = probe.bias(word);
    if (!b) continue;
    out.push_back({word, freq, stats.fpr.at(word), stats.toxicity.at(word), *b});
  }
  return out;
}

json AnalysisConfig::to_json() const {
  return {{"embedding", embedding.to_json()},
          {"sample_size", sample_size},
          {"seeds", seeds},
          {"repetitions", seeds.size()},
          {"ci_method", ci_method_name(ci_method)},
          {"centroid_weighting",
           weighting == bias::CentroidWeighting::Unweighted ? "unweighted" : "frequency"},
          {"report_top", report_top}};
}

namespace {

using WordFilter = std::set<std::string, std::less<>>;

Replicate run_replicate(const corpus::PreparedArchive& archive, const toxicity::SentenceScorer& scorer,
                        const std::vector<bias::AttributePair>& pairs, const AnalysisConfig& config,
                        const WordFilter& excluded, std::uint64_t seed) {
  Replicate rep;
  rep.seed = seed;
  try {
    auto sample = corpus::bootstrap_sample(archive, config.sample_size, seed);
    rep.sentences = sample.sentences.size();
    auto emb_cfg = config.embedding;
    emb_cfg.seed = derive_seed(seed, config.embedding.seed);
    auto model = embedding::train_cbow(sample.sentences, emb_cfg);
    rep.vocabulary = model.size();
    rep.embedding_loss = model.epoch_loss();

    std::vector<int> labels(sample.sentences.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      labels[i] = scorer.label(sample.sentences[i]);
      rep.toxic_sentences += labels[i] == 1;
    }
    auto stats = adjective_statistics(sample.sentences, labels, [&](std::string_view w) {
      return model.index_of(w).has_value() && excluded.find(w) == excluded.end();
    });
    rep.adjectives = stats.frequency.size();

    for (const auto& pair : pairs) {
      PairReplicate pr;
      bias::BiasProbe probe(model, pair, config.weighting);
      pr.oov_a = probe.a().oov;
      pr.oov_b = probe.b().oov;
      pr.records = make_records(stats, probe);
      for (const auto& r : pr.records) {
        if (r.bias > 0) ++pr.toward_a;
        else if (r.bias < 0) ++pr.toward_b;
        else ++pr.zero_bias;
      }
      for (auto d : {Direction::TowardA, Direction::TowardB}) {
        auto& value = d == Direction::TowardA ? pr.value_a : pr.value_b;
        auto& error = d == Direction::TowardA ? pr.error_a : pr.error_b;
        try {
          value = targeted_toxicity(oriented(pr.records, d));
        } catch (const Error& e) {
          error = e.what();
        }
      }
      rep.pairs.push_back(std::move(pr));
    }
  } catch (const Error& e) {
    rep.error = e.what();
    rep.pairs.clear();
  }
  return rep;
}

IndicatorResult aggregate(const CommunityAnalysis& ca, std::size_t pair_index,
                          const bias::AttributePair& pair, Direction d, const AnalysisConfig& config) {
  IndicatorResult r;
  r.community = ca.community;
  r.pair = pair.name;
  r.target = d == Direction::TowardA ? pair.a.name : pair.b.name;
  r.direction = d;
  r.ci_method = config.ci_method;
  r.sample_size = config.sample_size;
  for (const auto& rep : ca.replicates) {
    if (rep.error) {
      r.failures.push_back({rep.seed, *rep.error});
      continue;
    }
    const auto& pr = rep.pairs[pair_index];
    const auto& value = d == Direction::TowardA ? pr.value_a : pr.value_b;
    if (value) {
      r.replicates.push_back(*value);
      r.seeds.push_back(rep.seed);
    } else {
      r.failures.push_back({rep.seed, d == Direction::TowardA ? pr.error_a : pr.error_b});
    }
  }
  if (r.ok()) {
    r.mean = mean_of(r.replicates);
    r.ci95 = confidence_interval(r.replicates, config.ci_method);
  }
  return r;
}

}  // namespace

CommunityAnalysis run_analysis(const corpus::PreparedArchive& archive,
                               const toxicity::SentenceScorer& scorer,
                               const std::vector<bias::AttributePair>& pairs,
                               const AnalysisConfig& config) {
  if (config.seeds.empty()) fail(ErrorKind::InvalidArgument, "at least one seed is required");
  if (config.sample_size == 0) fail(ErrorKind::InvalidArgument, "sample size must be positive");
  if (pairs.empty()) fail(ErrorKind::InvalidArgument, "no attribute pair configured");
  config.embedding.validate();
  WordFilter excluded;
  for (const auto& p : pairs) {
    p.validate();
    excluded.insert(p.a.words.begin(), p.a.words.end());
    excluded.insert(p.b.words.begin(), p.b.words.end());
  }

  CommunityAnalysis ca;
  ca.community = archive.community;
  ca.archive_comments = archive.comments.size();
  ca.replicates.resize(config.seeds.size());

  const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, config.seeds.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < config.seeds.size(); i = next++) {
      ca.replicates[i] = run_replicate(archive, scorer, pairs, config, excluded, config.seeds[i]);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  for (std::size_t p = 0; p < pairs.size(); ++p) {
    ca.pairs.push_back({pairs[p], aggregate(ca, p, pairs[p], Direction::TowardA, config),
                        aggregate(ca, p, pairs[p], Direction::TowardB, config)});
  }
  return ca;
}

json to_json(const IndicatorResult& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"seed", f.seed}, {"error", f.message}});
  json j = {{"community", r.community},
            {"pair", r.pair},
            {"direction", direction_name(r.direction)},
            {"target", r.target},
            {"status", r.ok() ? "ok" : "failed"},
            {"replicates", r.replicates},
            {"seeds", r.seeds},
            {"failed_replicates", failures},
            {"ci_method", ci_method_name(r.ci_method)},
            {"sample_size", r.sample_size}};
  j["mean"] = r.mean ? json(*r.mean) : json(nullptr);
  j["ci95"] = r.ci95 ? json::array({r.ci95->low, r.ci95->high}) : json(nullptr);
  return j;
}

SimilarityMatrix similarity_matrix(
    const std::vector<std::pair<std::string, std::vector<AdjectiveRecord>>>& communities,
    std::size_t k) {
  if (communities.size() < 2) fail(ErrorKind::InvalidArgument, "need >= 2 communities");
  if (k == 0) fail(ErrorKind::InvalidArgument, "k must be positive");
  SimilarityMatrix m;
  m.k_requested = k;
  m.k = k;
  for (const auto& [name, records] : communities) {
    m.communities.push_back(name);
    const auto na = oriented(records, Direction::TowardA).size();
    const auto nb = oriented(records, Direction::TowardB).size();
    if (std::min(na, nb) < m.k) {
      m.warnings.push_back("community '" + name + "' has " + std::to_string(na) + " toward-A and " +
                           std::to_string(nb) + " toward-B adjectives");
      m.k = std::min(na, nb);
    }
  }
  if (m.k < m.k_requested) {
    m.warnings.push_back("k lowered from " + std::to_string(m.k_requested) + " to " +
                         std::to_string(m.k));
  }
  for (const auto& [name, records] : communities) {
    m.top_a.push_back(top_salient(records, Direction::TowardA, m.k));
    m.top_b.push_back(top_salient(records, Direction::TowardB, m.k));
  }
  auto words = [](const std::vector<AdjectiveRecord>& rs) {
    std::set<std::string_view> s;
    for (const auto& r : rs) s.insert(r.word);
    return s;
  };
  auto overlap = [](const std::set<std::string_view>& x, const std::set<std::string_view>& y) {
    std::size_t c = 0;
    for (auto w : x) c += y.count(w);
    return c;
  };
  const auto n = communities.size();
  m.counts.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m.counts[i][j] = overlap(words(m.top_a[i]), words(m.top_a[j]));
      m.counts[j][i] = overlap(words(m.top_b[i]), words(m.top_b[j]));
    }
  }
  return m;
}

}  // namespace targettox::indicator

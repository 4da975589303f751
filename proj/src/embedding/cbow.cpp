#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "embedding/model.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

namespace targettox::embedding {

namespace {

constexpr double kMinLearningRateFraction = 1e-4;
constexpr std::uint64_t kProgressStride = 4096;

struct Vocabulary {
  std::vector<std::string> words;
  std::vector<std::uint64_t> counts;
};

Vocabulary build_vocab(const std::vector<corpus::TokenizedSentence>& corpus,
                       std::uint64_t min_count) {
  std::map<std::string_view, std::uint64_t> freq;
  for (const auto& s : corpus) {
    for (const auto& t : s.tokens) ++freq[t];
  }
  std::vector<std::pair<std::string_view, std::uint64_t>> kept;
  for (const auto& [w, c] : freq) {
    if (c >= min_count) kept.emplace_back(w, c);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary v;
  for (const auto& [w, c] : kept) {
    v.words.emplace_back(w);
    v.counts.push_back(c);
  }
  return v;
}

// Cumulative unigram^0.75 distribution, sampled by binary search.
class NegativeTable {
 public:
  explicit NegativeTable(const std::vector<std::uint64_t>& counts) {
    cumulative_.reserve(counts.size());
    double total = 0.0;
    for (auto c : counts) {
      total += std::pow(static_cast<double>(c), 0.75);
      cumulative_.push_back(total);
    }
    for (auto& c : cumulative_) c /= total;
    cumulative_.back() = 1.0;
  }

  std::uint32_t draw(Rng& rng) const {
    const double u = rng.uniform01();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<std::uint32_t>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

template <bool Shared>
struct Cell {
  static float load(float& f) {
    if constexpr (Shared) return std::atomic_ref<float>(f).load(std::memory_order_relaxed);
    else return f;
  }
  static void add(float& f, float delta) {
    if constexpr (Shared) {
      std::atomic_ref<float> r(f);
      r.store(r.load(std::memory_order_relaxed) + delta, std::memory_order_relaxed);
    } else {
      f += delta;
    }
  }
};

double log_sigmoid(double x) { return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }

struct Trainer {
  const EmbeddingConfig& cfg;
  const std::vector<std::vector<std::uint32_t>>& sentences;
  const NegativeTable& negatives;
  std::vector<float>& syn0;
  std::vector<float>& syn1;
  std::uint64_t total_work;
  std::atomic<std::uint64_t>& progress;

  struct EpochStats {
    double loss = 0.0;
    std::uint64_t targets = 0;
  };

  template <bool Shared>
  EpochStats run(std::size_t begin, std::size_t end, Rng& rng) {
    using C = Cell<Shared>;
    const auto dim = static_cast<std::size_t>(cfg.dimensions);
    std::vector<float> h(dim), grad(dim);
    EpochStats stats;
    std::uint64_t local = 0;
    double lr = cfg.initial_learning_rate *
                std::max(1.0 - static_cast<double>(progress.load()) / static_cast<double>(total_work + 1),
                         kMinLearningRateFraction);

    for (std::size_t s = begin; s < end; ++s) {
      const auto& sent = sentences[s];
      const auto n = sent.size();
      for (std::size_t pos = 0; pos < n; ++pos) {
        if (++local == kProgressStride) {
          const auto done = progress.fetch_add(local) + local;
          local = 0;
          lr = cfg.initial_learning_rate *
               std::max(1.0 - static_cast<double>(done) / static_cast<double>(total_work + 1),
                        kMinLearningRateFraction);
        }
        const auto span = static_cast<std::size_t>(cfg.window) -
                          rng.uniform_index(static_cast<std::size_t>(cfg.window));
        const std::size_t lo = pos >= span ? pos - span : 0;
        const std::size_t hi = std::min(n - 1, pos + span);
        std::fill(h.begin(), h.end(), 0.0f);
        std::size_t context = 0;
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          float* row = &syn0[sent[c] * dim];
          for (std::size_t d = 0; d < dim; ++d) h[d] += C::load(row[d]);
          ++context;
        }
        if (context == 0) continue;
        const float inv = 1.0f / static_cast<float>(context);
        for (auto& x : h) x *= inv;
        std::fill(grad.begin(), grad.end(), 0.0f);

        for (int k = 0; k <= cfg.negative_samples; ++k) {
          std::uint32_t target;
          float label;
          if (k == 0) {
            target = sent[pos];
            label = 1.0f;
          } else {
            target = negatives.draw(rng);
            if (target == sent[pos]) continue;
            label = 0.0f;
          }
          float* out = &syn1[target * dim];
          double dot = 0.0;
          for (std::size_t d = 0; d < dim; ++d) dot += static_cast<double>(h[d]) * C::load(out[d]);
          stats.loss -= label > 0 ? log_sigmoid(dot) : log_sigmoid(-dot);
          const double sig = 1.0 / (1.0 + std::exp(-dot));
          const auto g = static_cast<float>((label - sig) * lr);
          for (std::size_t d = 0; d < dim; ++d) {
            grad[d] += g * C::load(out[d]);
            C::add(out[d], g * h[d]);
          }
        }
        ++stats.targets;
        // h is a mean, so each context row receives its 1/context share.
        for (auto& x : grad) x *= inv;
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          float* row = &syn0[sent[c] * dim];
          for (std::size_t d = 0; d < dim; ++d) C::add(row[d], grad[d]);
        }
      }
    }
    progress.fetch_add(local);
    return stats;
  }
};

}  // namespace

EmbeddingModel train_cbow(const std::vector<corpus::TokenizedSentence>& corpus,
                          const EmbeddingConfig& config) {
  config.validate();
  Vocabulary vocab = build_vocab(corpus, config.min_count);
  if (vocab.words.size() < 2) {
    fail(ErrorKind::Data, "embedding vocabulary has " + std::to_string(vocab.words.size()) +
                              " word(s) with frequency >= " + std::to_string(config.min_count) +
                              "; need at least 2");
  }
  std::unordered_map<std::string_view, std::uint32_t> index;
  for (std::uint32_t i = 0; i < vocab.words.size(); ++i) index.emplace(vocab.words[i], i);

  std::vector<std::vector<std::uint32_t>> sentences;
  std::uint64_t tokens = 0;
  for (const auto& s : corpus) {
    std::vector<std::uint32_t> ids;
    for (const auto& t : s.tokens) {
      auto it = index.find(t);
      if (it != index.end()) ids.push_back(it->second);
    }
    tokens += ids.size();
    if (ids.size() >= 2) sentences.push_back(std::move(ids));
  }

  const auto dim = static_cast<std::size_t>(config.dimensions);
  std::vector<float> syn0(vocab.words.size() * dim), syn1(vocab.words.size() * dim, 0.0f);
  {
    Rng init(derive_seed(config.seed, 0x696e6974));
    for (auto& f : syn0) f = static_cast<float>((init.uniform01() - 0.5) / static_cast<double>(dim));
  }

  NegativeTable negatives(vocab.counts);
  std::atomic<std::uint64_t> progress{0};
  std::uint64_t trained = 0;
  for (const auto& s : sentences) trained += s.size();
  Trainer trainer{config, sentences, negatives, syn0, syn1,
                  trained * static_cast<std::uint64_t>(config.epochs), progress};

  std::vector<double> epoch_loss;
  const auto workers = static_cast<std::size_t>(
      std::min<std::size_t>(static_cast<std::size_t>(config.workers), std::max<std::size_t>(sentences.size(), 1)));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Trainer::EpochStats total;
    if (workers <= 1) {
      Rng rng(derive_seed(config.seed, 0x10000 + static_cast<std::uint64_t>(epoch)));
      total = trainer.run<false>(0, sentences.size(), rng);
    } else {
      std::vector<Trainer::EpochStats> part(workers);
      {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
          pool.emplace_back([&, w] {
            Rng rng(derive_seed(config.seed, (static_cast<std::uint64_t>(epoch) << 16) + w + 0x20000));
            const std::size_t b = sentences.size() * w / workers;
            const std::size_t e = sentences.size() * (w + 1) / workers;
            part[w] = trainer.run<true>(b, e, rng);
          });
        }
      }
      for (const auto& p : part) {
        total.loss += p.loss;
        total.targets += p.targets;
      }
    }
    const double mean = total.targets ? total.loss / static_cast<double>(total.targets) : 0.0;
    if (!std::isfinite(mean)) fail(ErrorKind::Numeric, "embedding training diverged at epoch " + std::to_string(epoch + 1));
    epoch_loss.push_back(mean);
  }

  return EmbeddingModel(std::move(vocab.words), std::move(vocab.counts), std::move(syn0), config,
                        tokens, std::move(epoch_loss));
}

}  // namespace targettox::embedding

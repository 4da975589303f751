#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corpus/lexicon.hpp"
#include "corpus/types.hpp"
#include "json.hpp"

namespace targettox::embedding {

struct EmbeddingConfig {
  int dimensions = 100;
  int window = 5;
  int negative_samples = 5;
  std::uint64_t min_count = 10;
  int epochs = 5;
  double initial_learning_rate = 0.025;
  std::uint64_t seed = 1;
  // 1 = deterministic single worker; >1 = lock-free concurrent updates,
  // reproducible only statistically.
  int workers = 1;

  void validate() const;
  nlohmann::json to_json() const;
  static EmbeddingConfig from_json(const nlohmann::json& j);
};

inline constexpr const char* kEmbeddingFormat = "targettox.cbow/1";

class EmbeddingModel {
 public:
  EmbeddingModel(std::vector<std::string> words, std::vector<std::uint64_t> counts,
                 std::vector<float> vectors, EmbeddingConfig config,
                 std::uint64_t trained_token_count, std::vector<double> epoch_loss = {});

  // Input-layer vector; empty optional for out-of-vocabulary words.
  std::optional<std::span<const float>> vector(std::string_view word) const;
  std::optional<std::uint32_t> index_of(std::string_view word) const;
  std::span<const float> row(std::uint32_t i) const;

  std::size_t size() const { return words_.size(); }
  int dimensions() const { return config_.dimensions; }
  const std::vector<std::string>& words() const { return words_; }
  std::uint64_t count(std::uint32_t i) const { return counts_[i]; }
  const EmbeddingConfig& config() const { return config_; }
  std::uint64_t trained_token_count() const { return trained_token_count_; }
  const std::vector<double>& epoch_loss() const { return epoch_loss_; }
  const std::vector<float>& matrix() const { return vectors_; }

  // Header (format tag + JSON config) + vocabulary + little-endian float32
  // row-major matrix.
  void save(const std::filesystem::path& path) const;
  static EmbeddingModel load(const std::filesystem::path& path);
  // "word v1 v2 ..." per line.
  void export_text(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> words_;
  std::vector<std::uint64_t> counts_;
  std::vector<float> vectors_;
  EmbeddingConfig config_;
  std::uint64_t trained_token_count_;
  std::vector<double> epoch_loss_;
  std::unordered_map<std::string, std::uint32_t, corpus::StringHash, std::equal_to<>> index_;
};

// CBOW with negative sampling: the context is the mean of the (randomly
// shrunk) window vectors inside the sentence, negatives come from the
// unigram^0.75 distribution, and the learning rate decays linearly. No
// frequent-word subsampling. Throws Error(Data) if fewer than two words
// reach min_count.
EmbeddingModel train_cbow(const std::vector<corpus::TokenizedSentence>& corpus,
                          const EmbeddingConfig& config);

}  // namespace targettox::embedding

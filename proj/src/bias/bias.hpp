#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "embedding/model.hpp"
#include "json.hpp"

namespace targettox::bias {

struct AttributeSet {
  std::string name;
  std::vector<std::string> words;

  // Throws Error(Config) when empty or when a word repeats.
  void validate() const;
};

struct AttributePair {
  std::string name;
  AttributeSet a;
  AttributeSet b;

  void validate() const;
  AttributePair swapped() const { return {name, b, a}; }
};

// "identity" (male vs female terms) and "pronoun" (he/him/his vs she/her/hers).
std::vector<AttributePair> default_pairs();

enum class CentroidWeighting { Unweighted, Frequency };

struct Centroid {
  std::vector<double> vector;
  std::vector<std::string> used;
  std::vector<std::string> oov;
};

// Mean of the in-vocabulary set vectors; Frequency weights each vector by its
// corpus count. Throws Error(Data) naming the set when no word is in vocabulary.
Centroid centroid(const embedding::EmbeddingModel& model, const AttributeSet& set,
                  CentroidWeighting weighting = CentroidWeighting::Unweighted);

// Centroids for a pair computed once and reused across many words.
class BiasProbe {
 public:
  BiasProbe(const embedding::EmbeddingModel& model, const AttributePair& pair,
            CentroidWeighting weighting = CentroidWeighting::Unweighted);

  // cos(w, c_A) - cos(w, c_B); empty for out-of-vocabulary words.
  std::optional<double> bias(std::string_view word) const;

  const Centroid& a() const { return a_; }
  const Centroid& b() const { return b_; }

 private:
  const embedding::EmbeddingModel& model_;
  Centroid a_, b_;
};

std::optional<double> embedding_bias(const embedding::EmbeddingModel& model, std::string_view word,
                                     const AttributePair& pair,
                                     CentroidWeighting weighting = CentroidWeighting::Unweighted);

struct Partition {
  std::map<std::string, double, std::less<>> toward_a;
  std::map<std::string, double, std::less<>> toward_b;
  std::vector<std::string> zero;
  std::vector<std::string> oov;

  std::size_t excluded() const { return zero.size() + oov.size(); }
};

Partition partition_by_bias(const std::vector<std::string>& adjectives, const BiasProbe& probe);

nlohmann::json to_json(const AttributePair& pair);

}  // namespace targettox::bias

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "corpus/preprocess.hpp"
#include "corpus/types.hpp"
#include "json.hpp"
#include "toxicity/labeled.hpp"
#include "toxicity/logistic.hpp"
#include "toxicity/tfidf.hpp"

namespace targettox::toxicity {

// Anything that labels a sentence 0/1. The indicator only sees this
// interface, so a polarity or sarcasm scorer can stand in for toxicity.
class SentenceScorer {
 public:
  virtual ~SentenceScorer() = default;
  virtual int label(const corpus::TokenizedSentence& sentence) const = 0;
  virtual std::string name() const = 0;
};

struct ClassifierConfig {
  LogisticConfig optimizer;
  std::uint64_t min_df = 2;
  std::size_t max_features = 50000;
  double threshold = 0.5;
};

inline constexpr const char* kClassifierFormat = "targettox.toxicity-model/1";

// TF-IDF + logistic regression. Immutable once built.
class ToxicityClassifier final : public SentenceScorer {
 public:
  ToxicityClassifier(TfIdfVocabulary vocabulary, std::vector<double> weights, double bias,
                     ClassifierConfig config, std::vector<double> loss_history = {});

  double probability(const TokenList& tokens) const;
  int predict(const TokenList& tokens) const { return probability(tokens) >= config_.threshold; }
  int predict(const corpus::TokenizedSentence& s) const { return predict(s.tokens); }

  int label(const corpus::TokenizedSentence& s) const override { return predict(s); }
  std::string name() const override { return "toxicity"; }

  const TfIdfVocabulary& vocabulary() const { return vocabulary_; }
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  double threshold() const { return config_.threshold; }
  const ClassifierConfig& config() const { return config_; }
  const std::vector<double>& loss_history() const { return loss_history_; }

  nlohmann::json to_json() const;
  static ToxicityClassifier from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static ToxicityClassifier load(const std::filesystem::path& path);

 private:
  TfIdfVocabulary vocabulary_;
  std::vector<double> weights_;
  double bias_;
  ClassifierConfig config_;
  std::vector<double> loss_history_;
};

// Preprocesses each comment into one token document, builds the vocabulary
// on those documents, upsamples the minority class and fits the model.
ToxicityClassifier train_classifier(const std::vector<LabeledComment>& train,
                                    const corpus::Preprocessor& preprocessor,
                                    const ClassifierConfig& config);

}  // namespace targettox::toxicity

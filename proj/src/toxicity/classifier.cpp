#include "toxicity/classifier.hpp"

#include <cmath>

#include "util/error.hpp"
#include "util/text_io.hpp"

namespace targettox::toxicity {

using nlohmann::json;

ToxicityClassifier::ToxicityClassifier(TfIdfVocabulary vocabulary, std::vector<double> weights,
                                       double bias, ClassifierConfig config,
                                       std::vector<double> loss_history)
    : vocabulary_(std::move(vocabulary)),
      weights_(std::move(weights)),
      bias_(bias),
      config_(config),
      loss_history_(std::move(loss_history)) {
  if (weights_.size() != vocabulary_.size()) {
    fail(ErrorKind::InvalidArgument, "classifier weights do not match the vocabulary size");
  }
  if (!(config_.threshold > 0.0 && config_.threshold < 1.0)) {
    fail(ErrorKind::InvalidArgument, "classifier threshold must lie in (0, 1)");
  }
}

double ToxicityClassifier::probability(const TokenList& tokens) const {
  double z = bias_;
  for (const auto& e : vectorize(tokens, vocabulary_)) z += weights_[e.index] * e.value;
  return sigmoid(z);
}

json ToxicityClassifier::to_json() const {
  json j;
  j["format"] = kClassifierFormat;
  j["config"] = {
      {"learning_rate", config_.optimizer.learning_rate},
      {"l2", config_.optimizer.l2},
      {"epochs", config_.optimizer.epochs},
      {"batch_size", config_.optimizer.batch_size},
      {"seed", config_.optimizer.seed},
      {"min_df", config_.min_df},
      {"max_features", config_.max_features},
      {"threshold", config_.threshold},
  };
  j["vocabulary"] = {
      {"terms", vocabulary_.terms()},
      {"document_frequency", json::array()},
      {"total_documents", vocabulary_.total_documents()},
      {"min_df", vocabulary_.min_df()},
  };
  auto& df = j["vocabulary"]["document_frequency"];
  for (std::uint32_t i = 0; i < vocabulary_.size(); ++i) df.push_back(vocabulary_.document_frequency(i));
  j["weights"] = weights_;
  j["bias"] = bias_;
  j["loss_history"] = loss_history_;
  return j;
}

ToxicityClassifier ToxicityClassifier::from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != kClassifierFormat) {
      fail(ErrorKind::Format, "unsupported classifier format '" + j.at("format").get<std::string>() + "'");
    }
    const auto& c = j.at("config");
    ClassifierConfig config;
    config.optimizer.learning_rate = c.at("learning_rate").get<double>();
    config.optimizer.l2 = c.at("l2").get<double>();
    config.optimizer.epochs = c.at("epochs").get<int>();
    config.optimizer.batch_size = c.at("batch_size").get<std::size_t>();
    config.optimizer.seed = c.at("seed").get<std::uint64_t>();
    config.min_df = c.at("min_df").get<std::uint64_t>();
    config.max_features = c.at("max_features").get<std::size_t>();
    config.threshold = c.at("threshold").get<double>();
    const auto& v = j.at("vocabulary");
    TfIdfVocabulary vocab(v.at("terms").get<std::vector<std::string>>(),
                          v.at("document_frequency").get<std::vector<std::uint64_t>>(),
                          v.at("total_documents").get<std::uint64_t>(),
                          v.at("min_df").get<std::uint64_t>());
    return ToxicityClassifier(std::move(vocab), j.at("weights").get<std::vector<double>>(),
                              j.at("bias").get<double>(), config,
                              j.value("loss_history", std::vector<double>{}));
  } catch (const json::exception& e) {
    fail(ErrorKind::Format, std::string("malformed classifier artifact: ") + e.what());
  }
}

void ToxicityClassifier::save(const std::filesystem::path& path) const {
  write_file_atomic(path, to_json().dump(1) + "\n");
}

ToxicityClassifier ToxicityClassifier::load(const std::filesystem::path& path) {
  auto j = json::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded()) fail(ErrorKind::Format, path.string() + " is not valid JSON");
  return from_json(j);
}

ToxicityClassifier train_classifier(const std::vector<LabeledComment>& train,
                                    const corpus::Preprocessor& preprocessor,
                                    const ClassifierConfig& config) {
  if (train.empty()) fail(ErrorKind::Data, "no training data");
  std::vector<TokenList> docs;
  docs.reserve(train.size());
  for (const auto& c : train) docs.push_back(preprocessor.comment_tokens(c.text));
  auto vocab = build_vocabulary(docs, config.min_df, config.max_features);

  std::vector<int> labels;
  labels.reserve(train.size());
  for (const auto& c : train) labels.push_back(c.label);

  std::vector<SparseVector> vectors;
  vectors.reserve(docs.size());
  for (const auto& d : docs) vectors.push_back(vectorize(d, vocab));

  std::vector<SparseVector> x;
  std::vector<int> y;
  for (std::size_t i : upsample_indices(labels, config.optimizer.seed)) {
    x.push_back(vectors[i]);
    y.push_back(labels[i]);
  }
  auto fit = fit_logistic(x, y, vocab.size(), config.optimizer);
  return ToxicityClassifier(std::move(vocab), std::move(fit.weights), fit.bias, config,
                            std::move(fit.epoch_loss));
}

}  // namespace targettox::toxicity

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "corpus/preprocess.hpp"
#include "json.hpp"
#include "toxicity/classifier.hpp"

namespace targettox::toxicity {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;  // actual count
};

// Rows are the actual class, columns the predicted class; index 0 is toxic
// and index 1 non-toxic (the layout of a printed confusion table).
struct EvaluationReport {
  std::array<std::array<std::uint64_t, 2>, 2> confusion{};
  ClassMetrics toxic;
  ClassMetrics non_toxic;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  // Set when an actual class is absent; macro averages then cover the
  // present class only.
  bool missing_class = false;

  std::uint64_t total() const;
};

// Precision with no predicted positives is 0; F1 with P + R = 0 is 0.
EvaluationReport report_from_confusion(std::uint64_t toxic_as_toxic, std::uint64_t toxic_as_clean,
                                       std::uint64_t clean_as_toxic, std::uint64_t clean_as_clean);

EvaluationReport evaluate_predictions(const std::vector<int>& actual, const std::vector<int>& predicted);

EvaluationReport evaluate(const ToxicityClassifier& classifier,
                          const std::vector<LabeledComment>& test,
                          const corpus::Preprocessor& preprocessor);

nlohmann::json to_json(const EvaluationReport& report);

}  // namespace targettox::toxicity

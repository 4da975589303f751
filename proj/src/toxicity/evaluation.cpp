#include "toxicity/evaluation.hpp"

#include "util/error.hpp"

namespace targettox::toxicity {

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

ClassMetrics metrics(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  ClassMetrics m;
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  double s = m.precision + m.recall;
  m.f1 = s > 0 ? 2.0 * m.precision * m.recall / s : 0.0;
  m.support = tp + fn;
  return m;
}

nlohmann::json metrics_json(const ClassMetrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
}

}  // namespace

std::uint64_t EvaluationReport::total() const {
  return confusion[0][0] + confusion[0][1] + confusion[1][0] + confusion[1][1];
}

EvaluationReport report_from_confusion(std::uint64_t toxic_as_toxic, std::uint64_t toxic_as_clean,
                                       std::uint64_t clean_as_toxic, std::uint64_t clean_as_clean) {
  EvaluationReport r;
  r.confusion = {{{toxic_as_toxic, toxic_as_clean}, {clean_as_toxic, clean_as_clean}}};
  r.toxic = metrics(toxic_as_toxic, clean_as_toxic, toxic_as_clean);
  r.non_toxic = metrics(clean_as_clean, toxic_as_clean, clean_as_toxic);

  int present = 0;
  for (const ClassMetrics* m : {&r.toxic, &r.non_toxic}) {
    if (m->support == 0) continue;
    ++present;
    r.macro_precision += m->precision;
    r.macro_recall += m->recall;
    r.macro_f1 += m->f1;
  }
  r.missing_class = present < 2;
  if (present > 0) {
    r.macro_precision /= present;
    r.macro_recall /= present;
    r.macro_f1 /= present;
  }
  return r;
}

EvaluationReport evaluate_predictions(const std::vector<int>& actual, const std::vector<int>& predicted) {
  if (actual.size() != predicted.size()) {
    fail(ErrorKind::InvalidArgument, "actual and predicted label counts differ");
  }
  if (actual.empty()) fail(ErrorKind::Data, "cannot evaluate on an empty test set");
  std::uint64_t tt = 0, tc = 0, ct = 0, cc = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    bool a = actual[i] == kToxic, p = predicted[i] == kToxic;
    if (a && p) ++tt;
    else if (a) ++tc;
    else if (p) ++ct;
    else ++cc;
  }
  return report_from_confusion(tt, tc, ct, cc);
}

EvaluationReport evaluate(const ToxicityClassifier& classifier,
                          const std::vector<LabeledComment>& test,
                          const corpus::Preprocessor& preprocessor) {
  std::vector<int> actual, predicted;
  actual.reserve(test.size());
  predicted.reserve(test.size());
  for (const auto& c : test) {
    actual.push_back(c.label);
    predicted.push_back(classifier.predict(preprocessor.comment_tokens(c.text)));
  }
  return evaluate_predictions(actual, predicted);
}

nlohmann::json to_json(const EvaluationReport& r) {
  return {
      {"confusion",
       {{"rows", "actual [toxic, non_toxic]"},
        {"cols", "predicted [toxic, non_toxic]"},
        {"matrix", {{r.confusion[0][0], r.confusion[0][1]}, {r.confusion[1][0], r.confusion[1][1]}}}}},
      {"toxic", metrics_json(r.toxic)},
      {"non_toxic", metrics_json(r.non_toxic)},
      {"macro", {{"precision", r.macro_precision}, {"recall", r.macro_recall}, {"f1", r.macro_f1}}},
      {"missing_class_warning", r.missing_class},
      {"test_size", r.total()},
  };
}

}  // namespace targettox::toxicity

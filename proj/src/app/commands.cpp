#include "app/commands.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "toxicity/evaluation.hpp"
#include "toxicity/labeled.hpp"
#include "util/csv.hpp"
#include "util/error.hpp"
#include "util/text_io.hpp"
#include "validation/mixture.hpp"

#ifndef TARGETTOX_VERSION
#define TARGETTOX_VERSION "0.0.0"
#endif

namespace targettox::app {

namespace fs = std::filesystem;
using nlohmann::json;

const char* tool_version() { return TARGETTOX_VERSION; }

namespace {

constexpr const char* kReportFormat = "targettox.report/1";

class RunLog {
 public:
  RunLog(const RunConfig& config, Command command) : path_(config.output_dir / "run.log") {
    add(std::string("targettox ") + tool_version() + " " + command_name(command));
  }

  void add(std::string line) { lines_.push_back(std::move(line)); }
  void message(std::string line) {
    messages_.push_back(line);
    add(std::move(line));
  }
  json messages() const { return messages_; }

  void flush() const {
    std::string out;
    for (const auto& l : lines_) out += l + "\n";
    write_file_atomic(path_, out);
  }

 private:
  fs::path path_;
  std::vector<std::string> lines_;
  std::vector<std::string> messages_;
};

// Runs `body`, then writes the log whether or not the body threw.
template <class F>
json logged(const RunConfig& config, Command command, F&& body) {
  RunLog log(config, command);
  try {
    json out = body(log);
    log.add("status ok");
    log.flush();
    out["messages"] = log.messages();
    return out;
  } catch (const Error& e) {
    log.add(std::string("status error: ") + e.what());
    try {
      log.flush();
    } catch (const Error&) {
    }
    throw;
  }
}

std::string fmt(double v) { return format_double(v); }

json record_json(const indicator::AdjectiveRecord& r) {
  return {{"word", r.word},
          {"frequency", r.frequency},
          {"fpr", r.fpr},
          {"toxicity", r.toxicity},
          {"bias", r.bias},
          {"saliency", indicator::saliency(r)}};
}

std::string describe(const indicator::IndicatorResult& r) {
  std::string s = r.community + " " + r.pair + " toward " + r.target + ": ";
  if (!r.ok()) return s + "failed (" + std::to_string(r.failures.size()) + " failed replicates)";
  s += "mean " + fmt(*r.mean) + " ci95 [" + fmt(r.ci95->low) + ", " + fmt(r.ci95->high) + "]";
  if (!r.failures.empty()) s += " (" + std::to_string(r.failures.size()) + " failed replicates)";
  return s;
}

json ingest_json(const corpus::IngestReport& r) {
  return {{"total_lines", r.total_lines},
          {"valid_lines", r.valid_lines},
          {"skipped_lines", r.skipped_lines},
          {"dropped_empty", r.dropped_empty},
          {"dropped_removed", r.dropped_removed},
          {"emitted", r.emitted()},
          {"first_skipped", r.first_skipped}};
}

template <class T>
T parse_field(const std::string& text, const fs::path& path, std::size_t line) {
  T out{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(ErrorKind::Format, path.string() + ":" + std::to_string(line) + ": bad number '" + text + "'");
  }
  return out;
}

}  // namespace

corpus::Preprocessor make_preprocessor(const RunConfig& config) {
  auto resources = corpus::load_resources(
      {config.stopwords, config.lemmas, config.adjectives, config.abbreviations});
  return corpus::Preprocessor(std::move(resources), config.attribute_words());
}

LoadedArchive load_archive(const fs::path& path, const RunConfig& config,
                           const corpus::Preprocessor& preprocessor) {
  corpus::IngestOptions opts;
  opts.text_column = config.text_column;
  auto result = corpus::load_comments(path, corpus::format_from_path(path), opts);
  std::string community;
  if (!result.comments.empty()) community = result.comments.front().community;
  if (community.empty()) {
    community = path.filename().string();
    community = community.substr(0, community.find('.'));
  }
  return {corpus::prepare_archive(result.comments, preprocessor, community, config.threads),
          result.report};
}

std::string records_csv(const indicator::CommunityAnalysis& analysis) {
  std::string out = csv_line({"community", "pair", "seed", "word", "frequency", "fpr", "toxicity", "bias"});
  for (const auto& rep : analysis.replicates) {
    if (rep.error) continue;
    for (std::size_t p = 0; p < analysis.pairs.size(); ++p) {
      for (const auto& r : rep.pairs[p].records) {
        out += csv_line({analysis.community, analysis.pairs[p].pair.name, std::to_string(rep.seed), r.word,
                         std::to_string(r.frequency), fmt(r.fpr), fmt(r.toxicity), fmt(r.bias)});
      }
    }
  }
  return out;
}

CommunityRecords read_records(const fs::path& path, const std::string& pair) {
  const std::string text = read_text_file(path);
  CsvReader reader(text);
  std::vector<std::string> fields;
  bool ok = true;
  if (!reader.next(fields, ok) || !ok ||
      fields != std::vector<std::string>{"community", "pair", "seed", "word", "frequency", "fpr", "toxicity", "bias"}) {
    fail(ErrorKind::Format, path.string() + ": not a records CSV (bad header)");
  }
  std::map<std::uint64_t, CommunityRecords> by_seed;
  while (reader.next(fields, ok)) {
    const auto line = reader.record_line();
    if (!ok || fields.size() != 8) {
      fail(ErrorKind::Format, path.string() + ":" + std::to_string(line) + ": malformed record");
    }
    if (fields[1] != pair) continue;
    const auto seed = parse_field<std::uint64_t>(fields[2], path, line);
    auto& cr = by_seed[seed];
    if (cr.community.empty()) {
      cr.community = fields[0];
      cr.seed = seed;
    } else if (cr.community != fields[0]) {
      fail(ErrorKind::Format, path.string() + ": records of more than one community");
    }
    cr.records.push_back({fields[3], parse_field<std::uint64_t>(fields[4], path, line),
                          parse_field<double>(fields[5], path, line), parse_field<double>(fields[6], path, line),
                          parse_field<double>(fields[7], path, line)});
  }
  if (by_seed.empty()) fail(ErrorKind::Data, path.string() + ": no records for pair '" + pair + "'");
  return std::move(by_seed.begin()->second);
}

std::string similarity_csv(const indicator::SimilarityMatrix& m) {
  std::vector<std::string> header{"community"};
  header.insert(header.end(), m.communities.begin(), m.communities.end());
  std::string out = csv_line(header);
  for (std::size_t i = 0; i < m.communities.size(); ++i) {
    std::vector<std::string> row{m.communities[i]};
    for (std::size_t j = 0; j < m.communities.size(); ++j) {
      row.push_back(i == j ? std::string{} : std::to_string(m.counts[i][j]));
    }
    out += csv_line(row);
  }
  return out;
}

json cmd_ingest_stats(const RunConfig& config) {
  config.validate(Command::IngestStats);
  return logged(config, Command::IngestStats, [&](RunLog& log) {
    auto pre = make_preprocessor(config);
    json archives = json::array();
    for (const auto& path : config.archives) {
      auto loaded = load_archive(path, config, pre);
      std::size_t sentences = 0, tokens = 0, adjective_tokens = 0;
      std::set<std::string_view> adjectives;
      std::map<std::string, std::size_t> attribute_counts;
      for (const auto& w : config.attribute_words()) attribute_counts[w] = 0;
      for (const auto& c : loaded.archive.comments) {
        sentences += c.sentences.size();
        for (const auto& s : c.sentences) {
          tokens += s.tokens.size();
          adjective_tokens += s.adjective_indices.size();
          for (auto i : s.adjective_indices) adjectives.insert(s.tokens[i]);
          for (const auto& t : s.tokens) {
            auto it = attribute_counts.find(t);
            if (it != attribute_counts.end()) ++it->second;
          }
        }
      }
      log.message(path.filename().string() + ": " + std::to_string(loaded.report.emitted()) + " comments, " +
                  std::to_string(loaded.report.skipped_lines) + " skipped, " + std::to_string(sentences) +
                  " sentences, " + std::to_string(adjectives.size()) + " distinct adjectives");
      archives.push_back({{"path", path.generic_string()},
                          {"community", loaded.archive.community},
                          {"ingest", ingest_json(loaded.report)},
                          {"comments", loaded.archive.comments.size()},
                          {"sentences", sentences},
                          {"tokens", tokens},
                          {"adjective_tokens", adjective_tokens},
                          {"distinct_adjectives", adjectives.size()},
                          {"attribute_word_counts", attribute_counts}});
    }
    json doc = {{"format", "targettox.ingest-stats/1"}, {"tool_version", tool_version()}, {"archives", archives}};
    write_file_atomic(config.output_dir / "ingest_stats.json", doc.dump(2) + "\n");
    return doc;
  });
}

json cmd_train_toxicity(const RunConfig& config) {
  config.validate(Command::TrainToxicity);
  return logged(config, Command::TrainToxicity, [&](RunLog& log) {
    auto pre = make_preprocessor(config);
    auto data = toxicity::load_labeled(config.labeled);
    log.add("labeled records " + std::to_string(data.total_records) + ", skipped " +
            std::to_string(data.skipped_records));
    auto split = toxicity::split_stratified(data.items, config.train_fraction, config.resolved_split_seed());
    const auto cls_config = config.classifier_config();
    auto clf = toxicity::train_classifier(split.train, pre, cls_config);
    const auto model_path = config.model_path();
    clf.save(model_path);
    auto report = toxicity::evaluate(clf, split.test, pre);

    auto count = [](const std::vector<toxicity::LabeledComment>& xs, int label) {
      return std::count_if(xs.begin(), xs.end(), [&](const auto& x) { return x.label == label; });
    };
    json doc = {{"format", "targettox.toxicity-eval/1"},
                {"tool_version", tool_version()},
                {"config", config.to_json()},
                {"data",
                 {{"path", config.labeled.generic_string()},
                  {"records", data.total_records},
                  {"skipped", data.skipped_records},
                  {"train", split.train.size()},
                  {"train_toxic", count(split.train, toxicity::kToxic)},
                  {"test", split.test.size()},
                  {"test_toxic", count(split.test, toxicity::kToxic)}}},
                {"model", model_path.generic_string()},
                {"vocabulary_size", clf.vocabulary().size()},
                {"loss_history", clf.loss_history()},
                {"evaluation", toxicity::to_json(report)}};
    write_file_atomic(config.output_dir / "toxicity_eval.json", doc.dump(2) + "\n");
    log.message("macro F1 " + fmt(report.macro_f1) + " (precision " + fmt(report.macro_precision) +
                ", recall " + fmt(report.macro_recall) + ")");
    if (report.macro_f1 < config.min_macro_f1) {
      fail(ErrorKind::Threshold, "macro F1 " + fmt(report.macro_f1) + " is below classifier.min_macro_f1 " +
                                     fmt(config.min_macro_f1));
    }
    return json{{"command", "train-toxicity"},
                {"macro_f1", report.macro_f1},
                {"macro_precision", report.macro_precision},
                {"macro_recall", report.macro_recall},
                {"model", model_path.generic_string()}};
  });
}

json cmd_analyze(const RunConfig& config) {
  config.validate(Command::Analyze);
  return logged(config, Command::Analyze, [&](RunLog& log) {
    auto pre = make_preprocessor(config);
    auto clf = toxicity::ToxicityClassifier::load(config.model_path());
    const auto pairs = config.active_pairs();
    const auto acfg = config.analysis_config();
    json summary = {{"command", "analyze"}, {"communities", json::array()}};
    std::set<std::string> seen;
    std::vector<std::string> failed;
    for (const auto& path : config.archives) {
      auto loaded = load_archive(path, config, pre);
      const auto& community = loaded.archive.community;
      if (!seen.insert(community).second) {
        fail(ErrorKind::Config, "two archives carry community '" + community + "'");
      }
      log.add(community + ": " + std::to_string(loaded.archive.comments.size()) + " comments from " +
              path.generic_string());
      auto analysis = indicator::run_analysis(loaded.archive, clf, pairs, acfg);

      json replicates = json::array();
      for (const auto& rep : analysis.replicates) {
        json r = {{"seed", rep.seed},
                  {"sentences", rep.sentences},
                  {"toxic_sentences", rep.toxic_sentences},
                  {"embedding_vocabulary", rep.vocabulary},
                  {"adjectives", rep.adjectives},
                  {"embedding_loss", rep.embedding_loss}};
        r["error"] = rep.error ? json(*rep.error) : json(nullptr);
        replicates.push_back(r);
        if (rep.error) log.add(community + " seed " + std::to_string(rep.seed) + " failed: " + *rep.error);
      }

      json pair_docs = json::array();
      json community_summary = {{"community", community}, {"results", json::array()}};
      for (std::size_t p = 0; p < analysis.pairs.size(); ++p) {
        const auto& pr = analysis.pairs[p];
        json per_rep = json::array();
        const indicator::PairReplicate* first = nullptr;
        for (const auto& rep : analysis.replicates) {
          if (rep.error) continue;
          const auto& x = rep.pairs[p];
          if (!first) first = &x;
          json e = {{"seed", rep.seed},
                    {"records", x.records.size()},
                    {"toward_a", x.toward_a},
                    {"toward_b", x.toward_b},
                    {"zero_bias", x.zero_bias},
                    {"oov_a", x.oov_a},
                    {"oov_b", x.oov_b}};
          e["value_a"] = x.value_a ? json(*x.value_a) : json(x.error_a);
          e["value_b"] = x.value_b ? json(*x.value_b) : json(x.error_b);
          per_rep.push_back(e);
        }
        json top = {{"toward_a", json::array()}, {"toward_b", json::array()}};
        if (first) {
          for (const auto& r : indicator::top_salient(first->records, indicator::Direction::TowardA, acfg.report_top))
            top["toward_a"].push_back(record_json(r));
          for (const auto& r : indicator::top_salient(first->records, indicator::Direction::TowardB, acfg.report_top))
            top["toward_b"].push_back(record_json(r));
        }
        pair_docs.push_back({{"pair", bias::to_json(pr.pair)},
                             {"results", {indicator::to_json(pr.toward_a), indicator::to_json(pr.toward_b)}},
                             {"replicates", per_rep},
                             {"top_salient", top}});
        for (const auto* r : {&pr.toward_a, &pr.toward_b}) {
          log.message(describe(*r));
          community_summary["results"].push_back(indicator::to_json(*r));
          if (!r->ok()) failed.push_back(community + "/" + r->pair + "/" + r->target);
        }
      }

      json doc = {{"format", kReportFormat},
                  {"tool_version", tool_version()},
                  {"config", config.to_json()},
                  {"community", community},
                  {"archive", {{"path", path.generic_string()}, {"ingest", ingest_json(loaded.report)},
                               {"comments", analysis.archive_comments}}},
                  {"classifier", config.model_path().generic_string()},
                  {"replicates", replicates},
                  {"pairs", pair_docs}};
      write_file_atomic(config.output_dir / (community + ".report.json"), doc.dump(2) + "\n");
      write_file_atomic(config.output_dir / (community + ".records.csv"), records_csv(analysis));
      summary["communities"].push_back(community_summary);
    }
    if (!failed.empty()) {
      std::string msg = "analysis failed for";
      for (const auto& f : failed) msg += " " + f;
      fail(ErrorKind::Data, msg);
    }
    return summary;
  });
}

json cmd_compare(const RunConfig& config) {
  config.validate(Command::Compare);
  return logged(config, Command::Compare, [&](RunLog& log) {
    std::vector<std::pair<std::string, std::vector<indicator::AdjectiveRecord>>> communities;
    std::set<std::string> names;
    for (const auto& path : config.records) {
      auto cr = read_records(path, config.compare_pair);
      if (!names.insert(cr.community).second) {
        fail(ErrorKind::Config, "community '" + cr.community + "' appears twice in compare.records");
      }
      log.add(cr.community + ": " + std::to_string(cr.records.size()) + " records, seed " + std::to_string(cr.seed));
      communities.emplace_back(cr.community, std::move(cr.records));
    }
    auto m = indicator::similarity_matrix(communities, config.k);
    for (const auto& w : m.warnings) log.message("warning: " + w);

    std::string top = csv_line({"community", "direction", "rank", "word", "saliency", "bias", "fpr", "toxicity", "frequency"});
    for (std::size_t i = 0; i < m.communities.size(); ++i) {
      for (auto d : {indicator::Direction::TowardA, indicator::Direction::TowardB}) {
        const auto& list = d == indicator::Direction::TowardA ? m.top_a[i] : m.top_b[i];
        for (std::size_t r = 0; r < list.size(); ++r) {
          const auto& x = list[r];
          top += csv_line({m.communities[i], indicator::direction_name(d), std::to_string(r + 1), x.word,
                           fmt(indicator::saliency(x)), fmt(x.bias), fmt(x.fpr), fmt(x.toxicity),
                           std::to_string(x.frequency)});
        }
      }
    }
    const auto sim_path = config.output_dir / ("similarity_" + config.compare_pair + ".csv");
    write_file_atomic(sim_path, similarity_csv(m));
    write_file_atomic(config.output_dir / ("topk_" + config.compare_pair + ".csv"), top);
    log.message("similarity matrix (k=" + std::to_string(m.k) + ") written to " + sim_path.generic_string());
    return json{{"command", "compare"},
                {"pair", config.compare_pair},
                {"communities", m.communities},
                {"k", m.k},
                {"k_requested", m.k_requested},
                {"counts", m.counts},
                {"warnings", m.warnings}};
  });
}

json cmd_validate(const RunConfig& config) {
  config.validate(Command::Validate);
  return logged(config, Command::Validate, [&](RunLog& log) {
    auto pre = make_preprocessor(config);
    auto clf = toxicity::ToxicityClassifier::load(config.model_path());
    auto neutral = load_archive(config.neutral_pool, config, pre);
    auto toxic = load_archive(config.toxic_pool, config, pre);
    bias::AttributePair pair;
    for (const auto& p : config.pairs) {
      if (p.name == config.validation_pair) pair = p;
    }
    const auto direction = pair.b.name == config.validation_target ? indicator::Direction::TowardB
                                                                   : indicator::Direction::TowardA;
    validation::MixtureSpec spec;
    spec.neutral = &neutral.archive;
    spec.toxic = &toxic.archive;
    spec.proportions = config.proportions.empty() ? validation::linear_proportions(config.steps) : config.proportions;
    spec.dataset_size = config.dataset_size;
    spec.seed = config.resolved_mixture_seed();

    auto acfg = config.analysis_config();
    acfg.sample_size = config.dataset_size;
    acfg.seeds.clear();
    for (std::size_t i = 0; i < config.validation_repetitions; ++i) acfg.seeds.push_back(config.seed + i);

    auto curve = validation::mixture_curve(spec, clf, pair, direction, acfg, config.threads);
    std::vector<double> xs, ys;
    std::string csv = csv_line({"proportion", "indicator", "ci_low", "ci_high"});
    for (const auto& pt : curve) {
      xs.push_back(pt.proportion);
      ys.push_back(pt.value);
      csv += csv_line({fmt(pt.proportion), fmt(pt.value), fmt(pt.ci_low), fmt(pt.ci_high)});
      log.add("p=" + fmt(pt.proportion) + " indicator " + fmt(pt.value));
    }
    std::optional<double> r;
    std::string diagnostic;
    try {
      r = validation::pearson_correlation(xs, ys);
    } catch (const Error& e) {
      diagnostic = e.what();
    }
    json doc = {{"format", "targettox.validation/1"},
                {"tool_version", tool_version()},
                {"config", config.to_json()},
                {"pair", config.validation_pair},
                {"target", config.validation_target},
                {"curve", validation::to_json(curve)},
                {"strictly_increasing", validation::strictly_increasing(curve)},
                {"threshold", config.threshold}};
    doc["pearson_r"] = r ? json(*r) : json(nullptr);
    doc["passed"] = r && *r >= config.threshold;
    write_file_atomic(config.output_dir / "validation_curve.csv", csv);
    write_file_atomic(config.output_dir / "validation.json", doc.dump(2) + "\n");
    if (!r) {
      fail(ErrorKind::Threshold, "flat curve / undefined or sub-threshold correlation: " + diagnostic);
    }
    log.message("pearson r " + fmt(*r) + " (threshold " + fmt(config.threshold) + ")");
    if (*r < config.threshold) {
      fail(ErrorKind::Threshold, "flat curve / undefined or sub-threshold correlation: r = " + fmt(*r) +
                                     " < " + fmt(config.threshold));
    }
    return json{{"command", "validate"}, {"pearson_r", *r}, {"curve", validation::to_json(curve)}};
  });
}

json run_command(Command command, const RunConfig& config) {
  switch (command) {
    case Command::IngestStats: return cmd_ingest_stats(config);
    case Command::TrainToxicity: return cmd_train_toxicity(config);
    case Command::Analyze: return cmd_analyze(config);
    case Command::Compare: return cmd_compare(config);
    case Command::Validate: return cmd_validate(config);
  }
  fail(ErrorKind::InvalidArgument, "unknown command");
}

}  // namespace targettox::app

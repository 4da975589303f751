#include "app/config.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "util/error.hpp"
#include "util/text_io.hpp"
#include "validation/mixture.hpp"

namespace targettox::app {

namespace fs = std::filesystem;
using nlohmann::json;

const char* command_name(Command c) {
  switch (c) {
    case Command::IngestStats: return "ingest-stats";
    case Command::TrainToxicity: return "train-toxicity";
    case Command::Analyze: return "analyze";
    case Command::Compare: return "compare";
    case Command::Validate: return "validate";
  }
  return "?";
}

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& expected) {
  fail(ErrorKind::Config, key + " = '" + value + "': expected " + expected);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || value.empty()) {
    bad(key, value, std::is_integral_v<T> ? "an integer" : "a number");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const auto v = to_lower_ascii(value);
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  bad(key, value, "true or false");
}

std::vector<std::string> parse_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto comma = value.find(',', start);
    if (comma == std::string::npos) comma = value.size();
    auto item = trim(std::string_view(value).substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

fs::path resolve(const fs::path& relative_to, const std::string& value) {
  fs::path p(value);
  if (p.is_absolute() || value.empty()) return p;
  return (relative_to / p).lexically_normal();
}

template <class T>
T positive(const std::string& key, const std::string& value) {
  auto v = parse_number<T>(key, value);
  if (v < 1) bad(key, value, "a positive value");
  return v;
}

bias::AttributePair& pair_named(std::vector<bias::AttributePair>& pairs, const std::string& name) {
  for (auto& p : pairs) {
    if (p.name == name) return p;
  }
  pairs.push_back({name, {}, {}});
  return pairs.back();
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value, const fs::path& relative_to) {
  auto path = [&] { return resolve(relative_to, value); };
  auto paths = [&] {
    std::vector<fs::path> out;
    for (const auto& item : parse_list(value)) out.push_back(resolve(relative_to, item));
    return out;
  };

  if (key == "schema") {
    if (value != kConfigSchema) bad(key, value, kConfigSchema);
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "deterministic") {
    deterministic = parse_bool(key, value);
  } else if (key == "threads") {
    threads = positive<unsigned>(key, value);
  } else if (key == "paths.labeled") {
    labeled = path();
  } else if (key == "paths.archives") {
    archives = paths();
  } else if (key == "paths.lexicon_dir") {
    const auto dir = path();
    stopwords = dir / "stopwords_en.txt";
    lemmas = dir / "lemmas_en.tsv";
    adjectives = dir / "adjectives_en.txt";
    abbreviations = dir / "abbreviations_en.txt";
  } else if (key == "paths.stopwords") {
    stopwords = path();
  } else if (key == "paths.lemmas") {
    lemmas = path();
  } else if (key == "paths.adjectives") {
    adjectives = path();
  } else if (key == "paths.abbreviations") {
    abbreviations = path();
  } else if (key == "paths.model") {
    model = path();
  } else if (key == "paths.output_dir") {
    output_dir = path();
  } else if (key == "ingest.text_column") {
    if (value.empty()) bad(key, value, "a column name");
    text_column = value;
  } else if (key == "classifier.learning_rate") {
    classifier.optimizer.learning_rate = parse_number<double>(key, value);
  } else if (key == "classifier.l2") {
    classifier.optimizer.l2 = parse_number<double>(key, value);
  } else if (key == "classifier.epochs") {
    classifier.optimizer.epochs = positive<int>(key, value);
  } else if (key == "classifier.batch_size") {
    classifier.optimizer.batch_size = positive<std::size_t>(key, value);
  } else if (key == "classifier.min_df") {
    classifier.min_df = positive<std::uint64_t>(key, value);
  } else if (key == "classifier.max_features") {
    classifier.max_features = parse_number<std::size_t>(key, value);
  } else if (key == "classifier.threshold") {
    classifier.threshold = parse_number<double>(key, value);
  } else if (key == "classifier.train_fraction") {
    train_fraction = parse_number<double>(key, value);
  } else if (key == "classifier.split_seed") {
    split_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "classifier.seed") {
    optimizer_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "classifier.min_macro_f1") {
    min_macro_f1 = parse_number<double>(key, value);
  } else if (key == "embedding.dimensions") {
    embedding.dimensions = parse_number<int>(key, value);
  } else if (key == "embedding.window") {
    embedding.window = parse_number<int>(key, value);
  } else if (key == "embedding.negative_samples") {
    embedding.negative_samples = parse_number<int>(key, value);
  } else if (key == "embedding.min_count") {
    embedding.min_count = parse_number<std::uint64_t>(key, value);
  } else if (key == "embedding.epochs") {
    embedding.epochs = parse_number<int>(key, value);
  } else if (key == "embedding.learning_rate") {
    embedding.initial_learning_rate = parse_number<double>(key, value);
  } else if (key == "embedding.seed") {
    embedding.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "embedding.workers") {
    embedding.workers = positive<int>(key, value);
  } else if (key == "analysis.sample_size") {
    sample_size = positive<std::size_t>(key, value);
  } else if (key == "analysis.repetitions") {
    repetitions = positive<std::size_t>(key, value);
  } else if (key == "analysis.seeds") {
    seeds.clear();
    for (const auto& item : parse_list(value)) seeds.push_back(parse_number<std::uint64_t>(key, item));
  } else if (key == "analysis.ci_method") {
    if (value == "normal") ci_method = indicator::CiMethod::Normal;
    else if (value == "percentile") ci_method = indicator::CiMethod::Percentile;
    else bad(key, value, "normal or percentile");
  } else if (key == "analysis.centroid_weighting") {
    if (value == "unweighted") weighting = bias::CentroidWeighting::Unweighted;
    else if (value == "frequency") weighting = bias::CentroidWeighting::Frequency;
    else bad(key, value, "unweighted or frequency");
  } else if (key == "analysis.pairs") {
    selected_pairs = parse_list(value);
  } else if (key == "analysis.report_top") {
    report_top = positive<std::size_t>(key, value);
  } else if (key.starts_with("pair.")) {
    const auto dot = key.find('.', 5);
    const auto name = dot == std::string::npos ? std::string{} : key.substr(5, dot - 5);
    const auto field = dot == std::string::npos ? std::string{} : key.substr(dot + 1);
    if (name.empty()) fail(ErrorKind::Config, "unknown key '" + key + "'");
    if (field != "a.name" && field != "b.name" && field != "a.words" && field != "b.words") {
      fail(ErrorKind::Config, "unknown key '" + key + "' (pairs take a.name, a.words, b.name, b.words)");
    }
    auto& pair = pair_named(pairs, name);
    auto& side = field[0] == 'a' ? pair.a : pair.b;
    if (field.ends_with(".name")) side.name = value;
    else side.words = parse_list(to_lower_ascii(value));
  } else if (key == "validation.neutral_pool") {
    neutral_pool = path();
  } else if (key == "validation.toxic_pool") {
    toxic_pool = path();
  } else if (key == "validation.proportions") {
    proportions.clear();
    for (const auto& item : parse_list(value)) proportions.push_back(parse_number<double>(key, item));
  } else if (key == "validation.steps") {
    steps = positive<std::size_t>(key, value);
  } else if (key == "validation.dataset_size") {
    dataset_size = positive<std::size_t>(key, value);
  } else if (key == "validation.repetitions") {
    validation_repetitions = positive<std::size_t>(key, value);
  } else if (key == "validation.pair") {
    validation_pair = value;
  } else if (key == "validation.target") {
    validation_target = value;
  } else if (key == "validation.threshold") {
    threshold = parse_number<double>(key, value);
  } else if (key == "validation.seed") {
    mixture_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "compare.records") {
    records = paths();
  } else if (key == "compare.pair") {
    compare_pair = value;
  } else if (key == "compare.k") {
    k = positive<std::size_t>(key, value);
  } else {
    fail(ErrorKind::Config, "unknown key '" + key + "'");
  }
}

std::vector<std::uint64_t> RunConfig::resolved_seeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < repetitions; ++i) out.push_back(seed + i);
  return out;
}

toxicity::ClassifierConfig RunConfig::classifier_config() const {
  auto c = classifier;
  c.optimizer.seed = optimizer_seed.value_or(seed);
  return c;
}

fs::path RunConfig::model_path() const {
  return model.empty() ? output_dir / "toxicity_model.json" : model;
}

std::vector<bias::AttributePair> RunConfig::active_pairs() const {
  if (selected_pairs.empty()) return pairs;
  std::vector<bias::AttributePair> out;
  for (const auto& name : selected_pairs) {
    for (const auto& p : pairs) {
      if (p.name == name) out.push_back(p);
    }
  }
  return out;
}

std::vector<std::string> RunConfig::attribute_words() const {
  std::set<std::string> words;
  for (const auto& p : pairs) {
    words.insert(p.a.words.begin(), p.a.words.end());
    words.insert(p.b.words.begin(), p.b.words.end());
  }
  return {words.begin(), words.end()};
}

indicator::AnalysisConfig RunConfig::analysis_config() const {
  indicator::AnalysisConfig a;
  a.embedding = embedding;
  if (deterministic) a.embedding.workers = 1;
  a.sample_size = sample_size;
  a.seeds = resolved_seeds();
  a.ci_method = ci_method;
  a.weighting = weighting;
  a.threads = threads;
  a.report_top = report_top;
  return a;
}

void RunConfig::validate(Command command) const {
  std::vector<std::string> problems;
  auto need_file = [&](const fs::path& p, const std::string& key) {
    if (p.empty()) problems.push_back(key + " is not set");
    else if (!fs::is_regular_file(p)) problems.push_back(key + ": no such file " + p.string());
  };
  auto known_pair = [&](const std::string& name, const std::string& key) {
    for (const auto& p : pairs) {
      if (p.name == name) return true;
    }
    std::string known;
    for (const auto& p : pairs) known += (known.empty() ? "" : ", ") + p.name;
    problems.push_back(key + ": unknown attribute pair '" + name + "' (known pairs: " + known + ")");
    return false;
  };

  if (command != Command::Compare) {
    need_file(stopwords, "paths.stopwords");
    need_file(lemmas, "paths.lemmas");
    need_file(adjectives, "paths.adjectives");
    need_file(abbreviations, "paths.abbreviations");
  }
  for (const auto& p : pairs) {
    try {
      p.validate();
    } catch (const Error& e) {
      problems.push_back(std::string("pair.") + p.name + ": " + e.what());
    }
  }

  switch (command) {
    case Command::IngestStats:
      if (archives.empty()) problems.push_back("paths.archives is not set");
      for (const auto& a : archives) need_file(a, "paths.archives");
      break;
    case Command::TrainToxicity:
      need_file(labeled, "paths.labeled");
      if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        problems.push_back("classifier.train_fraction must lie in (0, 1)");
      }
      if (!(classifier.optimizer.learning_rate > 0.0)) problems.push_back("classifier.learning_rate must be positive");
      if (!(classifier.optimizer.l2 >= 0.0)) problems.push_back("classifier.l2 must be non-negative");
      if (!(classifier.threshold > 0.0 && classifier.threshold < 1.0)) {
        problems.push_back("classifier.threshold must lie in (0, 1)");
      }
      break;
    case Command::Analyze: {
      if (archives.empty()) problems.push_back("paths.archives is not set");
      for (const auto& a : archives) need_file(a, "paths.archives");
      need_file(model_path(), "paths.model");
      try {
        embedding.validate();
      } catch (const Error& e) {
        problems.push_back(std::string("embedding: ") + e.what());
      }
      if (!seeds.empty() && seeds.size() != repetitions) {
        problems.push_back("analysis.seeds has " + std::to_string(seeds.size()) +
                           " entries but analysis.repetitions is " + std::to_string(repetitions));
      }
      for (const auto& name : selected_pairs) known_pair(name, "analysis.pairs");
      break;
    }
    case Command::Compare:
      if (records.size() < 2) problems.push_back("compare.records: need >= 2 communities");
      for (const auto& r : records) need_file(r, "compare.records");
      known_pair(compare_pair, "compare.pair");
      break;
    case Command::Validate: {
      need_file(neutral_pool, "validation.neutral_pool");
      need_file(toxic_pool, "validation.toxic_pool");
      need_file(model_path(), "paths.model");
      try {
        embedding.validate();
      } catch (const Error& e) {
        problems.push_back(std::string("embedding: ") + e.what());
      }
      const auto props = proportions.empty() ? validation::linear_proportions(steps) : proportions;
      if (props.size() < 3) problems.push_back("validation needs at least 3 proportions");
      for (std::size_t i = 0; i < props.size(); ++i) {
        if (!(props[i] >= 0.0 && props[i] <= 1.0) || (i > 0 && !(props[i] > props[i - 1]))) {
          problems.push_back("validation.proportions must be strictly increasing within [0, 1]");
          break;
        }
      }
      if (known_pair(validation_pair, "validation.pair")) {
        for (const auto& p : pairs) {
          if (p.name == validation_pair && p.a.name != validation_target && p.b.name != validation_target) {
            problems.push_back("validation.target '" + validation_target + "' is neither side of pair '" +
                               p.name + "' (" + p.a.name + ", " + p.b.name + ")");
          }
        }
      }
      if (!(threshold >= -1.0 && threshold <= 1.0)) problems.push_back("validation.threshold must lie in [-1, 1]");
      break;
    }
  }

  if (!problems.empty()) {
    std::string msg = "invalid configuration for " + std::string(command_name(command)) + ":";
    for (const auto& p : problems) msg += "\n  - " + p;
    fail(ErrorKind::Config, msg);
  }
}

json RunConfig::to_json() const {
  auto str = [](const fs::path& p) { return p.generic_string(); };
  std::vector<std::string> archive_list, record_list;
  for (const auto& a : archives) archive_list.push_back(str(a));
  for (const auto& r : records) record_list.push_back(str(r));
  json pair_list = json::array();
  for (const auto& p : pairs) pair_list.push_back(bias::to_json(p));
  const auto cls = classifier_config();
  return {
      {"schema", kConfigSchema},
      {"seed", seed},
      {"deterministic", deterministic},
      {"paths",
       {{"labeled", str(labeled)},
        {"archives", archive_list},
        {"stopwords", str(stopwords)},
        {"lemmas", str(lemmas)},
        {"adjectives", str(adjectives)},
        {"abbreviations", str(abbreviations)},
        {"model", str(model_path())},
        {"output_dir", str(output_dir)}}},
      {"ingest", {{"text_column", text_column}}},
      {"classifier",
       {{"learning_rate", cls.optimizer.learning_rate},
        {"l2", cls.optimizer.l2},
        {"epochs", cls.optimizer.epochs},
        {"batch_size", cls.optimizer.batch_size},
        {"seed", cls.optimizer.seed},
        {"min_df", cls.min_df},
        {"max_features", cls.max_features},
        {"threshold", cls.threshold},
        {"train_fraction", train_fraction},
        {"split_seed", resolved_split_seed()},
        {"min_macro_f1", min_macro_f1}}},
      {"analysis", analysis_config().to_json()},
      {"selected_pairs", selected_pairs},
      {"pairs", pair_list},
      {"validation",
       {{"neutral_pool", str(neutral_pool)},
        {"toxic_pool", str(toxic_pool)},
        {"proportions", proportions.empty() ? validation::linear_proportions(steps) : proportions},
        {"dataset_size", dataset_size},
        {"repetitions", validation_repetitions},
        {"pair", validation_pair},
        {"target", validation_target},
        {"threshold", threshold},
        {"seed", resolved_mixture_seed()}}},
      {"compare", {{"records", record_list}, {"pair", compare_pair}, {"k", k}}},
  };
}

RunConfig parse_config(std::string_view text, const fs::path& base_dir,
                       const std::vector<std::pair<std::string, std::string>>& overrides) {
  RunConfig cfg;
  cfg.base_dir = base_dir;
  cfg.output_dir = (base_dir / "out").lexically_normal();
  std::vector<std::string> problems;
  std::string section;
  bool saw_schema = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') {
        problems.push_back(where + "unterminated section header");
        continue;
      }
      auto name = std::string(trim(line.substr(1, line.size() - 2)));
      if (name.starts_with("pair ")) {
        section = "pair." + std::string(trim(std::string_view(name).substr(5)));
      } else {
        section = name;
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back(where + "expected key = value");
      continue;
    }
    const auto key = std::string(trim(line.substr(0, eq)));
    const auto value = std::string(trim(line.substr(eq + 1)));
    const auto full = section.empty() ? key : section + "." + key;
    if (full == "schema") saw_schema = true;
    try {
      cfg.set(full, value, base_dir);
    } catch (const Error& e) {
      problems.push_back(where + e.what());
    }
  }
  if (!saw_schema) problems.push_back(std::string("missing 'schema = ") + kConfigSchema + "'");
  for (const auto& [key, value] : overrides) {
    try {
      cfg.set(key, value, fs::current_path());
    } catch (const Error& e) {
      problems.push_back(std::string("override: ") + e.what());
    }
  }
  if (!problems.empty()) {
    std::string msg = "configuration errors:";
    for (const auto& p : problems) msg += "\n  - " + p;
    fail(ErrorKind::Config, msg);
  }
  return cfg;
}

RunConfig load_config(const fs::path& path,
                      const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    fail(ErrorKind::Config, std::string("cannot read config: ") + e.what());
  }
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_config(text, base, overrides);
}

}  // namespace targettox::app

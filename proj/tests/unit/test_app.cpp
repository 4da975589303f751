#include <filesystem>

#include "app/commands.hpp"
#include "app/config.hpp"
#include "caught.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "util/text_io.hpp"

using namespace targettox;
using namespace targettox::app;
using targettox::testing::caught;
using targettox::testing::contains;
using targettox::testing::data_path;
namespace fs = std::filesystem;

namespace {

RunConfig config_for(const fs::path& out, const std::string& extra = "",
                     const std::vector<std::pair<std::string, std::string>>& overrides = {}) {
  return parse_config(testing::base_config_text(out) + extra, data_path(""), overrides);
}

// Classifier trained once into a shared directory.
const fs::path& shared_model() {
  static const fs::path model = [] {
    auto dir = testing::scratch_dir("app_model");
    cmd_train_toxicity(config_for(dir));
    return dir / "toxicity_model.json";
  }();
  return model;
}

std::string quick_analysis() {
  return "[embedding]\ndimensions = 50\nmin_count = 5\nepochs = 15\n"
         "[analysis]\nsample_size = 3000\nrepetitions = 2\npairs = identity\n";
}

}  // namespace

TEST_CASE("config files parse sections, pairs and paths") {
  auto cfg = parse_config(
      "schema = targettox.config/1\n"
      "seed = 7\n"
      "; comment\n"
      "[paths]\n"
      "archives = fixtures/community_neutral.jsonl, fixtures/community_planted.jsonl\n"
      "[analysis]\n"
      "sample_size = 500\n"
      "ci_method = percentile\n"
      "[pair colors]\n"
      "a.name = warm\n"
      "a.words = Red, orange\n"
      "b.name = cool\n"
      "b.words = blue, green\n",
      data_path(""));
  CHECK(cfg.seed == 7);
  REQUIRE(cfg.archives.size() == 2);
  CHECK(cfg.archives[0] == data_path("") / "fixtures/community_neutral.jsonl");
  CHECK(cfg.sample_size == 500);
  CHECK(cfg.ci_method == indicator::CiMethod::Percentile);
  CHECK(cfg.resolved_seeds() == std::vector<std::uint64_t>{7, 8, 9, 10, 11, 12, 13, 14, 15, 16});
  auto pairs = cfg.active_pairs();
  auto colors = std::find_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.name == "colors"; });
  REQUIRE(colors != pairs.end());
  CHECK(colors->a.words == std::vector<std::string>{"red", "orange"});
  CHECK(cfg.output_dir == data_path("") / "out");
  CHECK(cfg.classifier_config().optimizer.seed == 7);
}

TEST_CASE("config errors are collected with line numbers") {
  auto e = caught([] {
    parse_config("seed = nope\n[analysis]\nmystery = 1\n[broken\n", ".");
  });
  REQUIRE(e);
  CHECK(e->kind() == ErrorKind::Config);
  const std::string msg = e->what();
  CHECK(contains(msg, "line 1"));
  CHECK(contains(msg, "unknown key 'analysis.mystery'"));
  CHECK(contains(msg, "line 4"));
  CHECK(contains(msg, "missing 'schema"));
}

TEST_CASE("overrides apply after the file") {
  auto cfg = config_for("out", "[analysis]\nsample_size = 10\n", {{"analysis.sample_size", "20"}, {"seed", "3"}});
  CHECK(cfg.sample_size == 20);
  CHECK(cfg.seed == 3);
  auto bad = caught([] { config_for("out", "", {{"analysis.nothing", "1"}}); });
  REQUIRE(bad);
  CHECK(contains(bad->what(), "override"));
}

TEST_CASE("unknown pairs list the known ones") {
  auto cfg = config_for("out", "[paths]\narchives = fixtures/community_neutral.jsonl\n[analysis]\npairs = religion\n");
  auto e = caught([&] { cfg.validate(Command::Analyze); });
  REQUIRE(e);
  CHECK(e->kind() == ErrorKind::Config);
  CHECK(contains(e->what(), "religion"));
  CHECK(contains(e->what(), "known pairs: identity, pronoun"));
}

TEST_CASE("compare needs two communities") {
  auto cfg = config_for("out", "[compare]\nrecords = one.csv\n");
  auto e = caught([&] { cfg.validate(Command::Compare); });
  REQUIRE(e);
  CHECK(contains(e->what(), "need >= 2 communities"));
}

TEST_CASE("deterministic mode pins a single embedding worker") {
  auto cfg = config_for("out", "[embedding]\nworkers = 4\n");
  CHECK(cfg.analysis_config().embedding.workers == 1);
  cfg.deterministic = false;
  CHECK(cfg.analysis_config().embedding.workers == 4);
}

TEST_CASE("train-toxicity writes the model and evaluation") {
  const auto& model = shared_model();
  const auto dir = model.parent_path();
  REQUIRE(fs::exists(model));
  auto eval = nlohmann::json::parse(read_text_file(dir / "toxicity_eval.json"));
  CHECK(eval.at("evaluation").at("confusion").at("matrix").size() == 2);
  CHECK(eval.at("evaluation").at("macro").at("f1").get<double>() >= 0.85);
  CHECK(fs::exists(dir / "run.log"));

  auto again = testing::scratch_dir("app_model_again");
  cmd_train_toxicity(config_for(again));
  CHECK(read_text_file(again / "toxicity_model.json") == read_text_file(model));
}

TEST_CASE("train-toxicity names a missing data path") {
  auto dir = testing::scratch_dir("app_missing");
  auto cfg = config_for(dir, "", {{"paths.labeled", (dir / "absent.csv").string()}});
  auto e = caught([&] { cmd_train_toxicity(cfg); });
  REQUIRE(e);
  CHECK(contains(e->what(), "absent.csv"));
}

TEST_CASE("train-toxicity enforces the macro F1 threshold") {
  auto dir = testing::scratch_dir("app_threshold");
  auto e = caught([&] { cmd_train_toxicity(config_for(dir, "[classifier]\nmin_macro_f1 = 0.999\n")); });
  REQUIRE(e);
  CHECK(e->kind() == ErrorKind::Threshold);
  CHECK(fs::exists(dir / "toxicity_eval.json"));
}

TEST_CASE("ingest-stats reports every archive") {
  auto dir = testing::scratch_dir("app_ingest");
  auto cfg = config_for(dir, "[paths]\narchives = fixtures/archive_1000.jsonl, fixtures/community_neutral.jsonl\n");
  auto summary = cmd_ingest_stats(cfg);
  auto doc = nlohmann::json::parse(read_text_file(dir / "ingest_stats.json"));
  REQUIRE(doc.at("archives").size() == 2);
  CHECK(doc.at("archives")[0].at("ingest").at("valid_lines").get<int>() == 1000);
  CHECK_FALSE(summary.at("messages").empty());
}

TEST_CASE("analyze, records and compare") {
  auto dir = testing::scratch_dir("app_analyze");
  auto cfg = config_for(dir,
                        "[paths]\narchives = fixtures/community_neutral.jsonl, fixtures/community_planted.jsonl\n"
                        "model = " + shared_model().string() + "\n" + quick_analysis());
  cmd_analyze(cfg);
  auto planted = nlohmann::json::parse(read_text_file(dir / "planted_fixture.report.json"));
  auto neutral = nlohmann::json::parse(read_text_file(dir / "neutral_fixture.report.json"));
  CHECK(planted.at("format") == "targettox.report/1");
  auto female_mean = [](const nlohmann::json& report) {
    for (const auto& p : report.at("pairs")) {
      if (p.at("pair").at("name") != "identity") continue;
      for (const auto& r : p.at("results")) {
        if (r.at("target") == "female") return r.at("mean").get<double>();
      }
    }
    FAIL("no female result");
    return 0.0;
  };
  CHECK(female_mean(planted) > female_mean(neutral));

  auto first = read_text_file(dir / "planted_fixture.report.json");
  cmd_analyze(cfg);
  CHECK(read_text_file(dir / "planted_fixture.report.json") == first);

  auto recs = read_records(dir / "planted_fixture.records.csv", "identity");
  CHECK(recs.community == "planted_fixture");
  CHECK(recs.seed == 1);
  CHECK_FALSE(recs.records.empty());

  auto cmp = config_for(dir, "[compare]\nrecords = " + (dir / "planted_fixture.records.csv").string() + ", " +
                                 (dir / "planted_fixture.records.csv").string() + "\nk = 5\n");
  auto e = caught([&] { cmd_compare(cmp); });
  CHECK(e);  // the same community twice

  auto copy = dir / "copy.records.csv";
  auto text = read_text_file(dir / "planted_fixture.records.csv");
  std::string renamed;
  for (std::size_t pos = 0; pos < text.size();) {
    auto end = text.find('\n', pos);
    auto line = text.substr(pos, end - pos);
    if (line.starts_with("planted_fixture,")) line = "planted_copy," + line.substr(16);
    renamed += line + "\n";
    pos = end + 1;
  }
  write_file_atomic(copy, renamed);
  auto cmp2 = config_for(dir, "[compare]\nrecords = " + (dir / "planted_fixture.records.csv").string() + ", " +
                                  copy.string() + "\nk = 5\n");
  cmd_compare(cmp2);
  auto sim = read_text_file(dir / "similarity_identity.csv");
  CHECK(contains(sim, "planted_fixture,,5"));
  CHECK(contains(sim, "planted_copy,5,"));
}

TEST_CASE("analyze rejects unknown pairs before doing any work") {
  auto dir = testing::scratch_dir("app_unknown_pair");
  auto cfg = config_for(dir, "[paths]\narchives = fixtures/community_neutral.jsonl\n[analysis]\npairs = nope\n");
  auto e = caught([&] { cmd_analyze(cfg); });
  REQUIRE(e);
  CHECK(e->kind() == ErrorKind::Config);
  CHECK(contains(e->what(), "known pairs"));
}

TEST_CASE("validate fails on identical pools and on an unreachable threshold") {
  auto dir = testing::scratch_dir("app_validate");
  const std::string common = "[paths]\nmodel = " + shared_model().string() + "\n" + quick_analysis() +
                             "[validation]\nsteps = 10\ndataset_size = 5000\n";
  auto flat = config_for(dir, common + "neutral_pool = pools/misogyny_pool.jsonl\ntoxic_pool = pools/misogyny_pool.jsonl\n");
  auto e = caught([&] { cmd_validate(flat); });
  REQUIRE(e);
  CHECK(e->kind() == ErrorKind::Threshold);
  CHECK(contains(e->what(), "flat curve / undefined or sub-threshold correlation"));
  CHECK(fs::exists(dir / "validation_curve.csv"));

  auto strict = config_for(
      dir, common + "neutral_pool = pools/neutral_pool.jsonl\ntoxic_pool = pools/misogyny_pool.jsonl\nthreshold = 1.0\n");
  auto t = caught([&] { cmd_validate(strict); });
  REQUIRE(t);
  CHECK(t->kind() == ErrorKind::Threshold);
  auto doc = nlohmann::json::parse(read_text_file(dir / "validation.json"));
  CHECK(doc.at("passed") == false);
  CHECK(doc.at("pearson_r").get<double>() > 0.5);
}

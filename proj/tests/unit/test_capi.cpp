#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "targettox/targettox.h"

namespace fs = std::filesystem;

namespace {

const std::string kData = TARGETTOX_DATA_DIR;

fs::path scratch(const std::string& name) {
  auto dir = fs::current_path() / "test_scratch" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string config_text(const fs::path& out) {
  return "schema = targettox.config/1\n"
         "[paths]\n"
         "lexicon_dir = " + kData + "/lexicon\n"
         "labeled = " + kData + "/labeled/toxicity_20k.csv\n"
         "output_dir = " + out.string() + "\n"
         "[embedding]\n"
         "dimensions = 40\n"
         "min_count = 5\n"
         "epochs = 15\n";
}

struct Config {
  ttx_config* handle = nullptr;
  explicit Config(const fs::path& out) {
    REQUIRE(ttx_config_parse(config_text(out).c_str(), kData.c_str(), &handle) == TTX_OK);
  }
  ~Config() { ttx_config_free(handle); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  ttx_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::string(ttx_version()).size() > 0);
  double r = 0;
  double xs[] = {1, 2, 3}, flat[] = {2, 2, 2};
  CHECK(ttx_pearson(xs, flat, 3, &r) == TTX_ERR_NUMERIC);
  CHECK(std::string(ttx_last_error()).find("undefined correlation") != std::string::npos);
  CHECK(ttx_pearson(xs, xs, 3, &r) == TTX_OK);
  CHECK(r == doctest::Approx(1.0));
  CHECK(std::string(ttx_last_error()).empty());
  CHECK(ttx_pearson(nullptr, xs, 3, &r) == TTX_ERR_INVALID_ARGUMENT);
}

TEST_CASE("metric primitives") {
  ttx_metrics m{};
  REQUIRE(ttx_metrics_from_confusion(20346, 2331, 4085, 73691, &m) == TTX_OK);
  CHECK(std::abs(m.macro_f1 - 0.9110) <= 1e-4);
  CHECK(std::abs(m.toxic_f1 - 0.8638) < 1e-4);

  std::uint64_t freqs[] = {10, 5, 2, 1};
  double fpr[4];
  REQUIRE(ttx_frequency_percentile_ranking(freqs, 4, fpr) == TTX_OK);
  CHECK(fpr[0] == 0.75);
  CHECK(fpr[3] == 0.0);

  double b[] = {0.5}, f[] = {0.5}, t[] = {0.5};
  double v = 0;
  REQUIRE(ttx_targeted_toxicity(b, f, t, 1, &v) == TTX_OK);
  CHECK(v == 0.125);
  CHECK(ttx_targeted_toxicity(b, f, t, 0, &v) == TTX_ERR_DATA);

  double u[] = {1, 0}, w[] = {0, 0};
  CHECK(ttx_cosine(u, u, 2, &v) == TTX_OK);
  CHECK(v == 1.0);
  CHECK(ttx_cosine(u, w, 2, &v) == TTX_ERR_NUMERIC);
}

TEST_CASE("config handles") {
  ttx_config* cfg = nullptr;
  CHECK(ttx_config_parse("seed = 1\n", ".", &cfg) == TTX_ERR_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(ttx_last_error()).find("schema") != std::string::npos);

  Config good(scratch("capi_config"));
  CHECK(ttx_config_set(good.handle, "analysis.sample_size", "123") == TTX_OK);
  CHECK(ttx_config_set(good.handle, "analysis.bogus", "1") == TTX_ERR_CONFIG);
  char* json = nullptr;
  REQUIRE(ttx_config_to_json(good.handle, &json) == TTX_OK);
  CHECK(take(json).find("123") != std::string::npos);

  CHECK(ttx_config_load("/nonexistent/config.ini", &cfg) == TTX_ERR_CONFIG);

  ttx_command c;
  CHECK(ttx_command_from_name("validate", &c) == TTX_OK);
  CHECK(c == TTX_CMD_VALIDATE);
  CHECK(ttx_command_from_name("explode", &c) == TTX_ERR_INVALID_ARGUMENT);
}

TEST_CASE("archives and embeddings") {
  auto dir = scratch("capi_embedding");
  Config cfg(dir);
  ttx_archive* archive = nullptr;
  REQUIRE(ttx_archive_load((kData + "/fixtures/community_planted.jsonl").c_str(), cfg.handle, &archive) == TTX_OK);
  size_t comments = 0, sentences = 0;
  REQUIRE(ttx_archive_info(archive, &comments, &sentences) == TTX_OK);
  CHECK(comments == 3000);
  CHECK(sentences >= comments);

  ttx_embedding* emb = nullptr;
  REQUIRE(ttx_embedding_train(archive, cfg.handle, &emb) == TTX_OK);
  CHECK(ttx_embedding_dimensions(emb) == 40);
  CHECK(ttx_embedding_size(emb) > 50);

  std::vector<float> vec(40);
  int found = -1;
  REQUIRE(ttx_embedding_vector(emb, "woman", vec.data(), &found) == TTX_OK);
  CHECK(found == 1);
  REQUIRE(ttx_embedding_vector(emb, "zzzz", vec.data(), &found) == TTX_OK);
  CHECK(found == 0);

  const char* a[] = {"woman"};
  const char* bset[] = {"man"};
  double bias = 0;
  REQUIRE(ttx_embedding_bias(emb, "woman", a, 1, bset, 1, &found, &bias) == TTX_OK);
  CHECK(found == 1);
  CHECK(bias > 0);
  double reversed = 0;
  REQUIRE(ttx_embedding_bias(emb, "woman", bset, 1, a, 1, &found, &reversed) == TTX_OK);
  CHECK(reversed == -bias);

  auto path = (dir / "emb.bin").string();
  REQUIRE(ttx_embedding_save(emb, path.c_str()) == TTX_OK);
  ttx_embedding* back = nullptr;
  REQUIRE(ttx_embedding_load(path.c_str(), &back) == TTX_OK);
  std::vector<float> v1(40), v2(40);
  ttx_embedding_vector(emb, "woman", v1.data(), &found);
  ttx_embedding_vector(back, "woman", v2.data(), &found);
  CHECK(v1 == v2);
  CHECK(ttx_embedding_load((dir / "missing.bin").string().c_str(), &back) == TTX_ERR_IO);

  ttx_embedding_free(back);
  ttx_embedding_free(emb);
  ttx_archive_free(archive);
  CHECK(ttx_archive_load((dir / "missing.jsonl").string().c_str(), cfg.handle, &archive) == TTX_ERR_IO);
}

TEST_CASE("commands and classifier") {
  auto dir = scratch("capi_commands");
  Config cfg(dir);
  char* summary = nullptr;
  REQUIRE(ttx_run_command(cfg.handle, TTX_CMD_TRAIN_TOXICITY, &summary) == TTX_OK);
  CHECK(take(summary).find("messages") != std::string::npos);

  ttx_classifier* clf = nullptr;
  REQUIRE(ttx_classifier_load((dir / "toxicity_model.json").string().c_str(), cfg.handle, &clf) == TTX_OK);
  int label = -1;
  double p = -1;
  REQUIRE(ttx_classifier_predict(clf, "You are a pathetic worthless idiot.", &label, &p) == TTX_OK);
  CHECK(label == 1);
  CHECK(p >= 0.5);
  REQUIRE(ttx_classifier_predict(clf, "We enjoyed a pleasant lunch at the park.", &label, &p) == TTX_OK);
  CHECK(label == 0);
  ttx_classifier_free(clf);

  CHECK(ttx_run_command(cfg.handle, TTX_CMD_COMPARE, &summary) == TTX_ERR_CONFIG);
  CHECK(std::string(ttx_last_error()).find("need >= 2 communities") != std::string::npos);
}

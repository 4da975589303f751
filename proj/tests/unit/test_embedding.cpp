#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "caught.hpp"
#include "doctest.h"
#include "embedding/cosine.hpp"
#include "embedding/model.hpp"
#include "support/fixtures.hpp"
#include "util/rng.hpp"
#include "util/text_io.hpp"

using namespace targettox;
using namespace targettox::embedding;
using targettox::testing::caught;

namespace {

std::vector<corpus::TokenizedSentence> read_corpus(std::string_view relative) {
  std::istringstream in(read_text_file(testing::data_path(relative)));
  std::vector<corpus::TokenizedSentence> out;
  for (std::string line; std::getline(in, line);) {
    corpus::TokenizedSentence s;
    std::istringstream words(line);
    for (std::string w; words >> w;) s.tokens.push_back(w);
    out.push_back(std::move(s));
  }
  return out;
}

EmbeddingConfig small_config() {
  EmbeddingConfig c;
  c.dimensions = 32;
  c.window = 5;
  c.negative_samples = 5;
  c.min_count = 1;
  c.epochs = 5;
  return c;
}

double naive_cosine(const std::vector<double>& u, const std::vector<double>& v) {
  double dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  return dot / std::sqrt(nu * nv);
}

double cos_words(const EmbeddingModel& m, std::string_view a, std::string_view b) {
  return cosine(*m.vector(a), *m.vector(b));
}

}  // namespace

TEST_CASE("cosine matches the naive formula") {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> u(17), v(17);
    for (auto& x : u) x = rng.uniform01() * 2 - 1;
    for (auto& x : v) x = rng.uniform01() * 2 - 1;
    double c = cosine(u, v);
    CHECK(std::abs(c - naive_cosine(u, v)) < 1e-12);
    CHECK(c == cosine(v, u));
    std::vector<double> scaled = u;
    for (auto& x : scaled) x *= 3.5;
    CHECK(std::abs(cosine(scaled, v) - c) < 1e-12);
  }
  std::vector<double> a{1, 0}, b{-2, 0}, zero{0, 0};
  CHECK(cosine(a, a) == 1.0);
  CHECK(cosine(a, b) == -1.0);
  auto undefined = caught([&] { cosine(a, zero); });
  REQUIRE(undefined);
  CHECK(undefined->kind() == ErrorKind::Numeric);
  CHECK(testing::contains(undefined->what(), "undefined cosine"));
  std::vector<double> three{1, 2, 3};
  auto mismatch = caught([&] { cosine(a, three); });
  REQUIRE(mismatch);
  CHECK(mismatch->kind() == ErrorKind::InvalidArgument);
}

TEST_CASE("co-occurring words end up closer than non co-occurring ones") {
  std::vector<corpus::TokenizedSentence> corpus;
  Rng rng(9);
  std::vector<std::string> left, right;
  for (int i = 0; i < 10; ++i) {
    left.push_back("left" + std::to_string(i));
    right.push_back("right" + std::to_string(i));
  }
  for (int i = 0; i < 1000; ++i) {
    corpus::TokenizedSentence s;
    s.tokens = {"apple", "banana"};
    for (int k = 0; k < 3; ++k) s.tokens.push_back(left[rng.uniform_index(10)]);
    rng.shuffle(s.tokens.begin(), s.tokens.end());
    corpus.push_back(s);
    corpus::TokenizedSentence t;
    t.tokens = {"cherry"};
    for (int k = 0; k < 4; ++k) t.tokens.push_back(right[rng.uniform_index(10)]);
    rng.shuffle(t.tokens.begin(), t.tokens.end());
    corpus.push_back(t);
  }
  for (std::uint64_t seed : {1, 2, 3}) {
    auto cfg = small_config();
    cfg.seed = seed;
    auto m = train_cbow(corpus, cfg);
    CHECK(cos_words(m, "apple", "banana") > cos_words(m, "apple", "cherry"));
  }
}

TEST_CASE("single-worker training is deterministic") {
  auto corpus = read_corpus("fixtures/two_clusters.txt");
  auto a = train_cbow(corpus, small_config());
  auto b = train_cbow(corpus, small_config());
  CHECK(a.matrix() == b.matrix());
  CHECK(a.epoch_loss() == b.epoch_loss());
  auto other = small_config();
  other.seed = 2;
  CHECK(train_cbow(corpus, other).matrix() != a.matrix());
}

TEST_CASE("two topic clusters separate by a cosine margin") {
  auto corpus = read_corpus("fixtures/two_clusters.txt");
  REQUIRE(corpus.size() == 3000);
  for (std::uint64_t seed : {1, 2, 3}) {
    auto cfg = small_config();
    cfg.seed = seed;
    auto m = train_cbow(corpus, cfg);
    double within = 0, cross = 0;
    std::size_t nw = 0, nc = 0;
    auto name = [](const char* p, int i) {
      return std::string(p) + (i < 10 ? "0" : "") + std::to_string(i);
    };
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) {
        cross += cos_words(m, name("alpha", i), name("omega", j));
        ++nc;
        if (j <= i) continue;
        within += cos_words(m, name("alpha", i), name("alpha", j));
        within += cos_words(m, name("omega", i), name("omega", j));
        nw += 2;
      }
    }
    INFO("seed " << seed);
    CHECK(within / static_cast<double>(nw) - cross / static_cast<double>(nc) >= 0.2);
  }
}

TEST_CASE("vocabulary counts equal a recount above min_count") {
  auto corpus = read_corpus("fixtures/two_clusters.txt");
  corpus.push_back({{"rare"}, {}, ""});
  auto cfg = small_config();
  cfg.min_count = 200;
  cfg.epochs = 1;
  std::map<std::string, std::uint64_t> recount;
  for (const auto& s : corpus) {
    for (const auto& t : s.tokens) ++recount[t];
  }
  auto m = train_cbow(corpus, cfg);
  std::size_t expected = 0;
  for (const auto& [w, n] : recount) {
    if (n < cfg.min_count) {
      CHECK_FALSE(m.vector(w));
      continue;
    }
    ++expected;
    auto i = m.index_of(w);
    REQUIRE(i);
    CHECK(m.count(*i) == n);
  }
  CHECK(m.size() == expected);
  for (std::uint32_t i = 1; i < m.size(); ++i) CHECK(m.count(i - 1) >= m.count(i));
}

TEST_CASE("vectors have the configured length and OOV words are absent") {
  auto m = train_cbow(read_corpus("fixtures/two_clusters.txt"), small_config());
  REQUIRE(m.vector("alpha00"));
  CHECK(m.vector("alpha00")->size() == 32);
  CHECK_FALSE(m.vector("nowhere"));
  for (float x : m.matrix()) REQUIRE(std::isfinite(x));
}

TEST_CASE("concurrent workers train a usable model") {
  auto cfg = small_config();
  cfg.workers = 4;
  auto m = train_cbow(read_corpus("fixtures/two_clusters.txt"), cfg);
  for (float x : m.matrix()) REQUIRE(std::isfinite(x));
  CHECK(cos_words(m, "alpha01", "alpha02") > cos_words(m, "alpha01", "omega02"));
}

TEST_CASE("training rejects tiny vocabularies and bad configs") {
  auto e = caught([] { train_cbow({{{"only"}, {}, ""}}, small_config()); });
  REQUIRE(e);
  CHECK(e->kind() == ErrorKind::Data);

  auto cfg = small_config();
  cfg.dimensions = 0;
  cfg.window = 0;
  auto bad = caught([&] { cfg.validate(); });
  REQUIRE(bad);
  CHECK(bad->kind() == ErrorKind::InvalidArgument);
  CHECK(testing::contains(bad->what(), "dimensions"));
  CHECK(testing::contains(bad->what(), "window"));
}

TEST_CASE("model save and load round trip exactly") {
  auto dir = testing::scratch_dir("embedding_io");
  auto m = train_cbow(read_corpus("fixtures/two_clusters.txt"), small_config());
  m.save(dir / "m.bin");
  auto back = EmbeddingModel::load(dir / "m.bin");
  CHECK(back.words() == m.words());
  CHECK(back.matrix() == m.matrix());
  CHECK(back.epoch_loss() == m.epoch_loss());
  CHECK(back.trained_token_count() == m.trained_token_count());
  CHECK(back.config().to_json() == m.config().to_json());

  auto bytes = read_text_file(dir / "m.bin");
  write_file_atomic(dir / "short.bin", bytes.substr(0, bytes.size() - 3));
  auto e = caught([&] { EmbeddingModel::load(dir / "short.bin"); });
  REQUIRE(e);
  CHECK(e->kind() == ErrorKind::Format);

  m.export_text(dir / "m.txt");
  std::ifstream in(dir / "m.txt");
  std::string word;
  in >> word;
  CHECK(word == m.words()[0]);
}

#include <cmath>

#include "bias/bias.hpp"
#include "caught.hpp"
#include "doctest.h"
#include "embedding/cosine.hpp"
#include "support/planted.hpp"
#include "util/rng.hpp"

using namespace targettox;
using namespace targettox::bias;
using targettox::testing::caught;
using embedding::EmbeddingConfig;
using embedding::EmbeddingModel;

namespace {

EmbeddingModel hand_model(std::vector<std::string> words, std::vector<std::vector<float>> rows,
                          std::vector<std::uint64_t> counts = {}) {
  EmbeddingConfig c;
  c.dimensions = static_cast<int>(rows.at(0).size());
  std::vector<float> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  if (counts.empty()) counts.assign(words.size(), 1);
  return EmbeddingModel(std::move(words), std::move(counts), std::move(flat), c, 0);
}

AttributePair pair_of(std::vector<std::string> a, std::vector<std::string> b) {
  return {"test", {"A", std::move(a)}, {"B", std::move(b)}};
}

EmbeddingConfig planted_embedding() {
  EmbeddingConfig c;
  c.dimensions = 50;
  c.min_count = 5;
  c.epochs = 5;
  return c;
}

}  // namespace

TEST_CASE("attribute sets reject empty and repeated words") {
  CHECK(caught([] { AttributeSet{"x", {}}.validate(); })->kind() == ErrorKind::Config);
  CHECK(caught([] { AttributeSet{"x", {"a", "a"}}.validate(); })->kind() == ErrorKind::Config);
  CHECK_FALSE(caught([] { AttributeSet{"x", {"a", "b"}}.validate(); }));
  auto pairs = default_pairs();
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].name == "identity");
  CHECK(pairs[0].b.words.size() == 8);
  CHECK(pairs[1].b.words == std::vector<std::string>{"she", "her", "hers"});
}

TEST_CASE("centroid of one word is its vector") {
  auto m = hand_model({"a", "b"}, {{0.25f, -1.5f, 3.0f}, {1, 1, 1}});
  auto c = centroid(m, {"s", {"a", "missing"}});
  CHECK(c.vector == std::vector<double>{0.25, -1.5, 3.0});
  CHECK(c.used == std::vector<std::string>{"a"});
  CHECK(c.oov == std::vector<std::string>{"missing"});
  auto none = caught([&] { centroid(m, {"empty side", {"x", "y"}}); });
  REQUIRE(none);
  CHECK(none->kind() == ErrorKind::Data);
  CHECK(testing::contains(none->what(), "empty side"));
}

TEST_CASE("opposite vectors give a zero centroid and an undefined cosine") {
  auto m = hand_model({"v", "w", "u"}, {{1, 2}, {-1, -2}, {1, 0}});
  auto c = centroid(m, {"s", {"v", "w"}});
  CHECK(c.vector == std::vector<double>{0.0, 0.0});
  auto e = caught([&] { BiasProbe(m, pair_of({"v", "w"}, {"u"})).bias("u"); });
  REQUIRE(e);
  CHECK(e->kind() == ErrorKind::Numeric);
  CHECK(testing::contains(e->what(), "undefined cosine"));
}

TEST_CASE("frequency weighting follows the corpus counts") {
  auto m = hand_model({"a", "b"}, {{1, 0}, {0, 1}}, {3, 1});
  auto c = centroid(m, {"s", {"a", "b"}}, CentroidWeighting::Frequency);
  CHECK(c.vector[0] == doctest::Approx(0.75));
  CHECK(c.vector[1] == doctest::Approx(0.25));
  auto u = centroid(m, {"s", {"a", "b"}});
  CHECK(u.vector == std::vector<double>{0.5, 0.5});
}

TEST_CASE("bias examples on hand-placed vectors") {
  auto m = hand_model({"a", "b", "w", "mid", "x", "y", "z"},
                      {{1, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 0.2f}, {0.1f, 1}, {2, 2}});
  auto pair = pair_of({"a"}, {"b"});
  CHECK(*embedding_bias(m, "w", pair) == 1.0);
  CHECK(*embedding_bias(m, "mid", pair) == 0.0);
  CHECK_FALSE(embedding_bias(m, "absent", pair));

  BiasProbe probe(m, pair);
  auto part = partition_by_bias({"x", "y", "z", "absent"}, probe);
  CHECK(part.toward_a.count("x") == 1);
  CHECK(part.toward_b.count("y") == 1);
  CHECK(part.toward_a.size() == 1);
  CHECK(part.toward_b.size() == 1);
  CHECK(part.zero == std::vector<std::string>{"z"});
  CHECK(part.oov == std::vector<std::string>{"absent"});
  CHECK(part.excluded() == 2);
}

TEST_CASE("bias is antisymmetric in the pair") {
  Rng rng(4);
  std::vector<std::string> words;
  std::vector<std::vector<float>> rows;
  for (int i = 0; i < 30; ++i) {
    words.push_back("w" + std::to_string(i));
    std::vector<float> r(8);
    for (auto& x : r) x = static_cast<float>(rng.uniform01() * 2 - 1);
    rows.push_back(r);
  }
  auto m = hand_model(words, rows);
  auto pair = pair_of({"w0", "w1", "w2"}, {"w3", "w4"});
  BiasProbe ab(m, pair), ba(m, pair.swapped());
  for (int i = 5; i < 30; ++i) {
    auto w = "w" + std::to_string(i);
    CHECK(*ab.bias(w) == -*ba.bias(w));
  }
}

TEST_CASE("centroid of the female set on a trained model matches a naive mean") {
  auto words = testing::WordClasses::load();
  testing::PlantedSpec spec;
  spec.groups = {{words.female_identity, testing::slice(words.neutral_adjectives, 0, 10)},
                 {words.male_identity, testing::slice(words.neutral_adjectives, 10, 10)}};
  spec.comments = 1500;
  auto corpus = testing::all_sentences(testing::planted_archive(spec, words, "c"));
  auto m = embedding::train_cbow(corpus, planted_embedding());
  const auto female = default_pairs()[0].b;
  auto c = centroid(m, female);
  REQUIRE(c.used.size() == 8);
  for (int d = 0; d < m.dimensions(); ++d) {
    double sum = 0;
    for (const auto& w : female.words) sum += static_cast<double>((*m.vector(w))[d]);
    CHECK(std::abs(c.vector[d] - sum / 8.0) < 1e-12);
  }
}

TEST_CASE("planted corpus: female-only adjectives lean female") {
  auto words = testing::WordClasses::load();
  testing::PlantedSpec spec;
  spec.groups = {{words.female_identity, {"nagging"}},
                 {words.male_identity, testing::slice(words.neutral_adjectives, 0, 10)},
                 {testing::concat(words.female_identity, words.male_identity),
                  testing::slice(words.neutral_adjectives, 10, 30)}};
  spec.comments = 2000;
  auto corpus = testing::all_sentences(testing::planted_archive(spec, words, "c"));
  auto m = embedding::train_cbow(corpus, planted_embedding());
  auto b = embedding_bias(m, "nagging", default_pairs()[0]);
  REQUIRE(b);
  CHECK(*b < 0.0);
}

TEST_CASE("planted corpus: partition recovers 10 adjectives per side") {
  auto words = testing::WordClasses::load();
  auto female_adjs = testing::slice(words.neutral_adjectives, 0, 10);
  auto male_adjs = testing::slice(words.neutral_adjectives, 10, 10);
  testing::PlantedSpec spec;
  spec.groups = {{words.female_identity, female_adjs},
                 {words.male_identity, male_adjs},
                 {testing::concat(words.female_identity, words.male_identity),
                  testing::slice(words.neutral_adjectives, 20, 60), 3.0}};
  spec.comments = 4500;
  auto corpus = testing::all_sentences(testing::planted_archive(spec, words, "c"));
  auto m = embedding::train_cbow(corpus, planted_embedding());
  BiasProbe probe(m, default_pairs()[0]);
  auto part = partition_by_bias(testing::concat(male_adjs, female_adjs), probe);
  std::size_t correct = 0;
  for (const auto& w : male_adjs) correct += part.toward_a.count(w);
  for (const auto& w : female_adjs) correct += part.toward_b.count(w);
  CHECK(correct == 20);
}

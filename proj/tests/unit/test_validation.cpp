#include <algorithm>
#include <cmath>

#include "caught.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/planted.hpp"
#include "validation/mixture.hpp"

using namespace targettox;
using namespace targettox::validation;
using targettox::testing::caught;

namespace {

double naive_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

corpus::PreparedArchive pool(const std::string& prefix, std::size_t n) {
  corpus::PreparedArchive a;
  a.community = prefix;
  for (std::size_t i = 0; i < n; ++i) a.comments.push_back({prefix + std::to_string(i), {}});
  return a;
}

std::size_t from_pool(const corpus::PreparedArchive& a, const std::string& prefix) {
  return static_cast<std::size_t>(std::count_if(a.comments.begin(), a.comments.end(), [&](const auto& c) {
    return c.id.rfind(prefix, 0) == 0;
  }));
}

indicator::AnalysisConfig curve_config(std::size_t size) {
  indicator::AnalysisConfig c;
  c.embedding.dimensions = 50;
  c.embedding.min_count = 5;
  c.embedding.epochs = 15;
  c.sample_size = size;
  c.seeds = {1, 2, 3};
  return c;
}

}  // namespace

TEST_CASE("linear proportions") {
  auto p = linear_proportions(10);
  REQUIRE(p.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) CHECK(p[i] == doctest::Approx(static_cast<double>(i) / 10.0));
}

TEST_CASE("mixtures draw exact pool counts") {
  auto neutral = pool("n", 50), toxic = pool("t", 40);
  MixtureSpec spec;
  spec.neutral = &neutral;
  spec.toxic = &toxic;
  spec.proportions = {0.0, 0.3, 1.0};
  spec.dataset_size = 10000;

  auto zero = build_mixture(spec, 0);
  CHECK(zero.comments.size() == 10000);
  CHECK(from_pool(zero, "n") == 10000);
  auto some = build_mixture(spec, 1);
  CHECK(from_pool(some, "t") == 3000);
  CHECK(from_pool(some, "n") == 7000);
  auto all = build_mixture(spec, 2);
  CHECK(from_pool(all, "t") == 10000);
  CHECK(all.community == "mixture-2");

  auto again = build_mixture(spec, 1);
  for (std::size_t i = 0; i < some.comments.size(); ++i) REQUIRE(some.comments[i].id == again.comments[i].id);
  spec.seed = 2;
  auto reseeded = build_mixture(spec, 1);
  CHECK(from_pool(reseeded, "t") == 3000);
  bool differs = false;
  for (std::size_t i = 0; i < some.comments.size(); ++i) differs |= some.comments[i].id != reseeded.comments[i].id;
  CHECK(differs);

  auto out_of_range = caught([&] { build_mixture(spec, 3); });
  REQUIRE(out_of_range);
  CHECK(out_of_range->kind() == ErrorKind::InvalidArgument);
}

TEST_CASE("mixture specs are validated") {
  auto neutral = pool("n", 5), toxic = pool("t", 5), empty = pool("e", 0);
  MixtureSpec spec;
  spec.neutral = &neutral;
  spec.toxic = &toxic;
  spec.proportions = {0.0, 0.5, 0.5};
  CHECK(caught([&] { spec.validate(); }));
  spec.proportions = {0.0, 1.5};
  CHECK(caught([&] { spec.validate(); }));
  spec.proportions = {0.0, 0.5};
  CHECK_FALSE(caught([&] { spec.validate(); }));
  spec.toxic = &empty;
  CHECK(caught([&] { spec.validate(); }));
  spec.toxic = nullptr;
  CHECK(caught([&] { spec.validate(); }));
  CHECK(caught([&] { mix_pools(std::vector<int>{1}, std::vector<int>{2}, -0.1, 10, 1); }));
}

TEST_CASE("pearson correlation") {
  std::vector<double> xs{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> lin, neg;
  for (double x : xs) {
    lin.push_back(2 * x + 1);
    neg.push_back(-x);
  }
  CHECK(pearson_correlation(xs, lin) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pearson_correlation(xs, neg) == doctest::Approx(-1.0).epsilon(1e-15));

  Rng rng(8);
  std::vector<double> a, b;
  for (int i = 0; i < 20; ++i) {
    a.push_back(rng.uniform01());
    b.push_back(a.back() * 0.5 + rng.uniform01());
  }
  CHECK(std::abs(pearson_correlation(a, b) - naive_pearson(a, b)) < 1e-12);

  std::vector<double> flat(6, 0.3);
  auto undefined = caught([&] { pearson_correlation(xs, flat); });
  REQUIRE(undefined);
  CHECK(undefined->kind() == ErrorKind::Numeric);
  CHECK(testing::contains(undefined->what(), "undefined correlation"));
  std::vector<double> two{1, 2};
  CHECK(caught([&] { pearson_correlation(two, two); })->kind() == ErrorKind::InvalidArgument);
  CHECK(caught([&] { pearson_correlation(xs, two); })->kind() == ErrorKind::InvalidArgument);
}

TEST_CASE("identical pools give a flat curve") {
  auto words = testing::WordClasses::load();
  const auto female = testing::concat(words.female_identity, words.female_pronouns);
  const auto male = testing::concat(words.male_identity, words.male_pronouns);
  testing::PlantedSpec ps;
  ps.groups = {{male, testing::concat(testing::slice(words.neutral_adjectives, 0, 20),
                                      testing::slice(words.toxic_adjectives, 0, 5))},
               {female, testing::concat(testing::slice(words.neutral_adjectives, 20, 20),
                                        testing::slice(words.toxic_adjectives, 5, 5))}};
  ps.comments = 2000;
  ps.insult_rate = 0.1;
  auto same = testing::planted_archive(ps, words, "same");
  testing::LexiconScorer scorer(testing::concat(words.toxic_adjectives, words.insults));

  MixtureSpec spec;
  spec.neutral = &same;
  spec.toxic = &same;
  spec.proportions = {0.0, 0.3, 0.6, 0.9};
  spec.dataset_size = 2000;
  auto curve = mixture_curve(spec, scorer, bias::default_pairs()[0], indicator::Direction::TowardB,
                             curve_config(2000), 4);
  REQUIRE(curve.size() == 4);
  std::vector<double> all;
  double grand = 0;
  for (const auto& p : curve) {
    all.insert(all.end(), p.replicates.begin(), p.replicates.end());
    grand += p.value / 4;
  }
  double ss = 0;
  for (double x : all) ss += (x - grand) * (x - grand);
  const double step_se = std::sqrt(ss / static_cast<double>(all.size() - 1)) / std::sqrt(3.0);
  for (const auto& p : curve) CHECK(std::abs(p.value - grand) <= 4 * step_se);
}

TEST_CASE("planted pools give a strictly increasing curve") {
  auto words = testing::WordClasses::load();
  const auto female = testing::concat(words.female_identity, words.female_pronouns);
  const auto male = testing::concat(words.male_identity, words.male_pronouns);
  const testing::Group about_men{male, testing::slice(words.neutral_adjectives, 0, 30)};
  const testing::Group about_women{female, testing::slice(words.neutral_adjectives, 30, 30)};
  testing::PlantedSpec ns;
  ns.groups = {about_men, about_women};
  ns.comments = 3000;
  ns.insult_rate = 0.05;
  ns.seed = 11;
  testing::PlantedSpec ts = ns;
  ts.groups = {{female, testing::slice(words.toxic_adjectives, 0, 20), 1.0, 2, true}, about_men, about_women};
  ts.seed = 12;
  auto neutral = testing::planted_archive(ns, words, "neutral");
  auto toxic = testing::planted_archive(ts, words, "toxic");
  testing::LexiconScorer scorer(testing::concat(words.toxic_adjectives, words.insults));

  MixtureSpec spec;
  spec.neutral = &neutral;
  spec.toxic = &toxic;
  spec.proportions = {0.0, 0.2, 0.4, 0.6, 0.8};
  spec.dataset_size = 3000;
  auto curve = mixture_curve(spec, scorer, bias::default_pairs()[0], indicator::Direction::TowardB,
                             curve_config(3000), 4);
  CHECK(strictly_increasing(curve));
  std::vector<double> xs, ys;
  for (const auto& p : curve) {
    xs.push_back(p.proportion);
    ys.push_back(p.value);
  }
  CHECK(pearson_correlation(xs, ys) >= 0.9);
  auto j = to_json(curve);
  REQUIRE(j.size() == 5);
  CHECK(j[2].at("proportion").get<double>() == 0.4);
}

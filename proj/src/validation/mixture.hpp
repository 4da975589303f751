#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bias/bias.hpp"
#include "corpus/types.hpp"
#include "indicator/indicator.hpp"
#include "json.hpp"
#include "toxicity/classifier.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

namespace targettox::validation {

// 0.0, 0.1, ..., (steps-1)/steps.
std::vector<double> linear_proportions(std::size_t steps);

// Exactly llround(p * size) draws from `toxic` followed by the rest from
// `neutral`, both with replacement, then shuffled. Deterministic in
// (pools, p, size, seed).
template <class T>
std::vector<T> mix_pools(const std::vector<T>& neutral, const std::vector<T>& toxic, double p,
                         std::size_t size, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::InvalidArgument, "proportion outside [0, 1]");
  const auto n_toxic = static_cast<std::size_t>(std::llround(p * static_cast<double>(size)));
  const std::size_t n_neutral = size - n_toxic;
  if (n_toxic > 0 && toxic.empty()) fail(ErrorKind::Data, "toxic pool is empty");
  if (n_neutral > 0 && neutral.empty()) fail(ErrorKind::Data, "neutral pool is empty");
  Rng rng(seed);
  std::vector<T> out;
  out.reserve(size);
  for (std::size_t i = 0; i < n_toxic; ++i) out.push_back(toxic[rng.uniform_index(toxic.size())]);
  for (std::size_t i = 0; i < n_neutral; ++i) out.push_back(neutral[rng.uniform_index(neutral.size())]);
  rng.shuffle(out.begin(), out.end());
  return out;
}

struct MixtureSpec {
  const corpus::PreparedArchive* neutral = nullptr;
  const corpus::PreparedArchive* toxic = nullptr;
  std::vector<double> proportions = linear_proportions(10);
  std::size_t dataset_size = 10000;
  std::uint64_t seed = 1;

  std::size_t steps() const { return proportions.size(); }
  // Pools present and non-empty, proportions strictly increasing in [0, 1].
  void validate() const;
};

corpus::PreparedArchive build_mixture(const MixtureSpec& spec, std::size_t step);

struct CurvePoint {
  double proportion = 0.0;
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<double> replicates;
};

// Indicator toward the given side of `pair` on every mixture step. Steps run
// in parallel with `threads` workers and are joined in step order. A step
// whose indicator cannot be computed raises Error(Data).
std::vector<CurvePoint> mixture_curve(const MixtureSpec& spec, const toxicity::SentenceScorer& scorer,
                                      const bias::AttributePair& pair, indicator::Direction direction,
                                      const indicator::AnalysisConfig& config, unsigned threads = 1);

// Sample Pearson r. Throws Error(InvalidArgument) on length mismatch or
// fewer than 3 points and Error(Numeric) "undefined correlation" when either
// side has zero variance.
double pearson_correlation(std::span<const double> xs, std::span<const double> ys);

bool strictly_increasing(std::span<const CurvePoint> curve);

nlohmann::json to_json(std::span<const CurvePoint> curve);

}  // namespace targettox::validation

#include "validation/mixture.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

namespace targettox::validation {

std::vector<double> linear_proportions(std::size_t steps) {
  std::vector<double> out;
  for (std::size_t i = 0; i < steps; ++i) {
    out.push_back(static_cast<double>(i) / static_cast<double>(steps));
  }
  return out;
}

void MixtureSpec::validate() const {
  if (!neutral || !toxic) fail(ErrorKind::InvalidArgument, "mixture needs a neutral and a toxic pool");
  if (neutral->comments.empty()) fail(ErrorKind::Data, "neutral pool is empty");
  if (toxic->comments.empty()) fail(ErrorKind::Data, "toxic pool is empty");
  if (dataset_size == 0) fail(ErrorKind::InvalidArgument, "mixture dataset size must be positive");
  if (proportions.empty()) fail(ErrorKind::InvalidArgument, "mixture needs at least one proportion");
  for (std::size_t i = 0; i < proportions.size(); ++i) {
    if (!(proportions[i] >= 0.0 && proportions[i] <= 1.0)) {
      fail(ErrorKind::InvalidArgument, "mixture proportion outside [0, 1]");
    }
    if (i > 0 && !(proportions[i] > proportions[i - 1])) {
      fail(ErrorKind::InvalidArgument, "mixture proportions must be strictly increasing");
    }
  }
}

corpus::PreparedArchive build_mixture(const MixtureSpec& spec, std::size_t step) {
  spec.validate();
  if (step >= spec.steps()) {
    fail(ErrorKind::InvalidArgument, "mixture step " + std::to_string(step) + " out of range");
  }
  corpus::PreparedArchive out;
  out.community = "mixture-" + std::to_string(step);
  out.comments = mix_pools(spec.neutral->comments, spec.toxic->comments, spec.proportions[step],
                           spec.dataset_size, derive_seed(spec.seed, step));
  return out;
}

std::vector<CurvePoint> mixture_curve(const MixtureSpec& spec, const toxicity::SentenceScorer& scorer,
                                      const bias::AttributePair& pair, indicator::Direction direction,
                                      const indicator::AnalysisConfig& config, unsigned threads) {
  spec.validate();
  const auto steps = spec.steps();
  std::vector<std::optional<indicator::IndicatorResult>> results(steps);
  std::vector<std::string> errors(steps);
  auto step_config = config;
  step_config.threads = 1;

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t s = next++; s < steps; s = next++) {
      try {
        auto archive = build_mixture(spec, s);
        auto ca = indicator::run_analysis(archive, scorer, {pair}, step_config);
        const auto& pr = ca.pairs.front();
        results[s] = direction == indicator::Direction::TowardA ? pr.toward_a : pr.toward_b;
      } catch (const Error& e) {
        errors[s] = e.what();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, steps);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::vector<CurvePoint> curve;
  for (std::size_t s = 0; s < steps; ++s) {
    const double p = spec.proportions[s];
    if (!results[s]) fail(ErrorKind::Data, "mixture step at p=" + std::to_string(p) + ": " + errors[s]);
    const auto& r = *results[s];
    if (!r.ok()) {
      const std::string why = r.failures.empty() ? "" : r.failures.front().message;
      fail(ErrorKind::Data, "mixture step at p=" + std::to_string(p) + " failed: " + why);
    }
    curve.push_back({p, *r.mean, r.ci95->low, r.ci95->high, r.replicates});
  }
  return curve;
}

double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) fail(ErrorKind::InvalidArgument, "correlation of lists with different lengths");
  if (xs.size() < 3) fail(ErrorKind::InvalidArgument, "correlation needs at least 3 points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) fail(ErrorKind::Numeric, "undefined correlation: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

bool strictly_increasing(std::span<const CurvePoint> curve) {
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (!(curve[i].value > curve[i - 1].value)) return false;
  }
  return true;
}

nlohmann::json to_json(std::span<const CurvePoint> curve) {
  auto out = nlohmann::json::array();
  for (const auto& p : curve) {
    out.push_back({{"proportion", p.proportion},
                   {"indicator", p.value},
                   {"ci_low", p.ci_low},
                   {"ci_high", p.ci_high},
                   {"replicates", p.replicates}});
  }
  return out;
}

}  // namespace targettox::validation

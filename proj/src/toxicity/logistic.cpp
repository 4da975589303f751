#include "toxicity/logistic.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "util/error.hpp"
#include "util/rng.hpp"

namespace targettox::toxicity {

namespace {

double dot(const SparseVector& x, const std::vector<double>& w) {
  double s = 0.0;
  for (const auto& e : x) s += e.value * w[e.index];
  return s;
}

// log(1 + exp(-m)) without overflow
double softplus_neg(double m) { return m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m)); }

}  // namespace

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

double logistic_objective(const std::vector<SparseVector>& x, const std::vector<int>& y,
                          const std::vector<double>& w, double b, double l2) {
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = dot(x[i], w) + b;
    double margin = y[i] == 1 ? z : -z;
    loss += softplus_neg(margin);
  }
  loss /= static_cast<double>(x.size());
  double norm2 = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
  return loss + 0.5 * l2 * norm2;
}

LogisticFit fit_logistic(const std::vector<SparseVector>& x, const std::vector<int>& y,
                         std::size_t dimensions, const LogisticConfig& config) {
  if (x.empty() || x.size() != y.size()) {
    fail(ErrorKind::InvalidArgument, "logistic regression needs matching non-empty x and y");
  }
  if (config.epochs < 1 || config.batch_size < 1 || !(config.learning_rate > 0) ||
      config.l2 < 0) {
    fail(ErrorKind::InvalidArgument, "invalid logistic regression hyperparameters");
  }
  LogisticFit fit;
  fit.weights.assign(dimensions, 0.0);
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(config.seed, 0x6c6f6769u));  // "logi"

  std::vector<double> residual;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order.begin(), order.end());
    const double lr = config.learning_rate / std::sqrt(1.0 + epoch);
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const double inv_b = 1.0 / static_cast<double>(end - start);
      residual.clear();
      double grad_b = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        std::size_t i = order[k];
        double r = sigmoid(dot(x[i], fit.weights) + fit.bias) - y[i];
        residual.push_back(r);
        grad_b += r;
      }
      if (config.l2 > 0) {
        const double shrink = 1.0 - lr * config.l2;
        for (auto& w : fit.weights) w *= shrink;
      }
      for (std::size_t k = start; k < end; ++k) {
        const double step = lr * residual[k - start] * inv_b;
        for (const auto& e : x[order[k]]) fit.weights[e.index] -= step * e.value;
      }
      fit.bias -= lr * grad_b * inv_b;
    }
    double obj = logistic_objective(x, y, fit.weights, fit.bias, config.l2);
    if (!std::isfinite(obj)) {
      fail(ErrorKind::Numeric, "logistic regression diverged at epoch " + std::to_string(epoch + 1));
    }
    fit.epoch_loss.push_back(obj);
  }
  return fit;
}

}  // namespace targettox::toxicity

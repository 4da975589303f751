#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "toxicity/tfidf.hpp"

namespace targettox::toxicity {

struct LogisticConfig {
  double learning_rate = 1.0;
  double l2 = 1e-5;
  int epochs = 20;
  std::size_t batch_size = 32;
  std::uint64_t seed = 13;
};

struct LogisticFit {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> epoch_loss;  // full objective after each epoch
};

double sigmoid(double z);

// Mean logistic loss plus (l2 / 2) * ||w||^2; the bias is not penalized.
double logistic_objective(const std::vector<SparseVector>& x, const std::vector<int>& y,
                          const std::vector<double>& w, double b, double l2);

// Mini-batch gradient descent with a seeded per-epoch shuffle and step size
// learning_rate / sqrt(1 + epoch). Throws Error(Numeric) naming the epoch if
// the objective stops being finite.
LogisticFit fit_logistic(const std::vector<SparseVector>& x, const std::vector<int>& y,
                         std::size_t dimensions, const LogisticConfig& config);

}  // namespace targettox::toxicity

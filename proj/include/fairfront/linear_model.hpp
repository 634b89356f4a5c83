#pragma once

#include "fairfront/dataset.hpp"
#include "fairfront/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace fairfront {

// Trainable parameters of the logistic-linear head. Gradients and optimizer
// state use the packed layout [weights; bias] of length feature_dim + 1.
struct WeightVector {
  VecXd weights;
  double bias = 0.0;

  Index dim() const { return weights.size(); }

  VecXd packed() const {
    VecXd p(weights.size() + 1);
    p.head(weights.size()) = weights;
    p[weights.size()] = bias;
    return p;
  }

  static WeightVector unpack(const VecXd& p) {
    WeightVector w;
    w.weights = p.head(p.size() - 1);
    w.bias = p[p.size() - 1];
    return w;
  }

  static WeightVector zeros(Index feature_dim) {
    return {VecXd::Zero(feature_dim), 0.0};
  }
};

struct PredictionBatch {
  ArrXd probabilities;  // clamped into [kProbEps, 1 - kProbEps]
  ArrXi hard_labels;    // 1 iff probability >= 0.5
};

// 0.5*(1+tanh(z/2)) is the logistic function, stable in both tails; clamped
// so log(p) and log(1-p) stay finite.
inline double logistic_clamped(double logit) {
  const double p = 0.5 * (1.0 + std::tanh(0.5 * logit));
  return std::min(1.0 - kProbEps, std::max(kProbEps, p));
}

// Logistic forward pass over the whole dataset.
PredictionBatch forward(const WeightVector& theta, const Dataset& d);

// AdaMax state over the packed parameter layout.
struct AdamaxState {
  std::int64_t step_count = 0;
  VecXd first_moment;  // m
  VecXd inf_norm;      // u, entrywise >= 0
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;

  static AdamaxState init(Index dim, double lr = 0.001, double b1 = 0.9, double b2 = 0.999) {
    return {0, VecXd::Zero(dim), VecXd::Zero(dim), lr, b1, b2};
  }
};

// One AdaMax update:
//   m' = b1*m + (1-b1)*g,  u' = max(b2*u, |g|),
//   theta' = theta - lr/(1 - b1^t') * m'/u'   (entries with u' = 0 unchanged)
void adamax_step(Eigen::Ref<VecXd> theta, AdamaxState& state, const VecXd& gradient);

// Full-batch by default; batch_size > 0 samples that many rows per step
// (without replacement, deterministic under batch_seed).
struct TrainOptions {
  std::int64_t steps = 2000;
  std::int64_t batch_size = 0;
  std::uint64_t batch_seed = 0;
};

struct TrainResult {
  WeightVector theta;
  std::vector<double> loss_trace;  // loss at the start of each step
};

// (loss value, packed gradient) of the training objective at theta on a batch.
using LossGradientFn =
    std::function<std::pair<double, VecXd>(const Dataset&, const WeightVector&)>;

TrainResult train(const Dataset& d, const LossGradientFn& loss_gradient,
                  const TrainOptions& opts, const WeightVector& init, AdamaxState state);

// Weight checkpoint JSON: {"feature_dim": F, "weights": [...], "bias": b}.
void save_checkpoint(const WeightVector& theta, const std::string& path);
WeightVector load_checkpoint(const std::string& path);

}  // namespace fairfront

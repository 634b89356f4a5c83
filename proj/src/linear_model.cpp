#include "fairfront/linear_model.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fairfront {

PredictionBatch forward(const WeightVector& theta, const Dataset& d) {
  if (theta.dim() != d.feature_dim())
    throw std::invalid_argument("forward: weight dimension " + std::to_string(theta.dim()) +
                                " does not match feature_dim " +
                                std::to_string(d.feature_dim()));
  const ArrXd logits = (d.features() * theta.weights).array() + theta.bias;
  ArrXd probs = logits.unaryExpr([](double l) { return logistic_clamped(l); });
  ArrXi hard = (probs >= 0.5).cast<int>();
  return {std::move(probs), std::move(hard)};
}

void adamax_step(Eigen::Ref<VecXd> theta, AdamaxState& state, const VecXd& gradient) {
  if (gradient.size() != theta.size() || state.first_moment.size() != theta.size() ||
      state.inf_norm.size() != theta.size())
    throw std::invalid_argument("adamax_step: shape mismatch");
  if (!gradient.allFinite()) throw std::invalid_argument("adamax_step: non-finite gradient");

  state.step_count += 1;
  state.first_moment = state.beta1 * state.first_moment + (1.0 - state.beta1) * gradient;
  state.inf_norm =
      (state.beta2 * state.inf_norm).cwiseMax(gradient.cwiseAbs());
  const double scale =
      state.learning_rate / (1.0 - std::pow(state.beta1, static_cast<double>(state.step_count)));
  theta -= scale * state.first_moment.binaryExpr(state.inf_norm, [](double m, double u) {
    return u > 0.0 ? m / u : 0.0;
  });
}

TrainResult train(const Dataset& d, const LossGradientFn& loss_gradient,
                  const TrainOptions& opts, const WeightVector& init, AdamaxState state) {
  if (opts.steps < 1) throw std::invalid_argument("train: steps must be >= 1");
  if (init.dim() != d.feature_dim())
    throw std::invalid_argument("train: init dimension does not match feature_dim");
  if (state.first_moment.size() != init.dim() + 1)
    throw std::invalid_argument("train: optimizer state dimension mismatch");

  const bool minibatch = opts.batch_size > 0 && opts.batch_size < d.size();
  std::mt19937_64 batch_rng(derive_seed(opts.batch_seed, "batch"));
  std::vector<Index> all_rows(static_cast<std::size_t>(d.size()));
  std::iota(all_rows.begin(), all_rows.end(), Index{0});

  VecXd packed = init.packed();
  TrainResult result;
  result.loss_trace.reserve(static_cast<std::size_t>(opts.steps));

  for (std::int64_t step = 0; step < opts.steps; ++step) {
    double loss;
    VecXd grad;
    const WeightVector theta = WeightVector::unpack(packed);
    if (minibatch) {
      std::vector<Index> rows = all_rows;
      std::shuffle(rows.begin(), rows.end(), batch_rng);
      rows.resize(static_cast<std::size_t>(opts.batch_size));
      std::sort(rows.begin(), rows.end());
      std::tie(loss, grad) = loss_gradient(d.subset(rows), theta);
    } else {
      std::tie(loss, grad) = loss_gradient(d, theta);
    }
    if (!std::isfinite(loss))
      throw std::runtime_error("train: non-finite loss at step " + std::to_string(step));
    result.loss_trace.push_back(loss);
    adamax_step(packed, state, grad);
  }
  result.theta = WeightVector::unpack(packed);
  return result;
}

void save_checkpoint(const WeightVector& theta, const std::string& path) {
  nlohmann::json j;
  j["feature_dim"] = theta.dim();
  j["weights"] = std::vector<double>(theta.weights.data(), theta.weights.data() + theta.dim());
  j["bias"] = theta.bias;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

WeightVector load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  nlohmann::json j;
  in >> j;
  const auto weights = j.at("weights").get<std::vector<double>>();
  if (static_cast<Index>(weights.size()) != j.at("feature_dim").get<Index>())
    throw std::runtime_error("checkpoint feature_dim does not match weights: " + path);
  WeightVector w;
  w.weights = Eigen::Map<const VecXd>(weights.data(), static_cast<Index>(weights.size()));
  w.bias = j.at("bias").get<double>();
  if (!w.weights.allFinite() || !std::isfinite(w.bias))
    throw std::runtime_error("checkpoint contains non-finite values: " + path);
  return w;
}

}  // namespace fairfront

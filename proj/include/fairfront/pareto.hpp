#pragma once

#include "fairfront/losses.hpp"
#include "fairfront/metrics.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace fairfront {

struct FjResult {
  double residual = 0.0;
  double lambda = 0.5;  // multiplier pair is (lambda, 1 - lambda)
};

namespace detail {

template <class D1, class D2>
bool lexicographically_less(const Eigen::MatrixBase<D1>& a, const Eigen::MatrixBase<D2>& b) {
  for (Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace detail

// Fritz-John stationarity residual for the unconstrained two-objective
// problem: min over lambda in [0,1] of ||lambda*g1 + (1-lambda)*g2||_2, with
// the closed-form minimizer lambda* = clamp(<g2, g2-g1> / ||g1-g2||^2, 0, 1)
// (0.5 when g1 = g2). A zero residual witnesses non-negative multipliers, not
// both zero, nulling the combined gradient.
//
// Arguments are ordered canonically before computing, so swapping g1 and g2
// yields the bit-identical residual. lambda is quantized to a 2^-26 grid,
// which makes the swap map lambda -> 1 - lambda exact as well; the residual
// is flat to second order at the minimizer, so the quantization is far below
// every tolerance used anywhere.
template <class D1, class D2>
FjResult fj_residual(const Eigen::MatrixBase<D1>& g1, const Eigen::MatrixBase<D2>& g2) {
  if (g1.size() != g2.size())
    throw std::invalid_argument("fj_residual: gradient length mismatch");
  const bool swapped = detail::lexicographically_less(g2, g1);
  const VecXd a = swapped ? g2.template cast<double>().eval() : g1.template cast<double>().eval();
  const VecXd b = swapped ? g1.template cast<double>().eval() : g2.template cast<double>().eval();

  const VecXd diff = a - b;
  const double denom = diff.squaredNorm();
  double mu = 0.5;
  if (denom > 0.0) {
    mu = b.dot(b - a) / denom;
    mu = std::min(1.0, std::max(0.0, mu));
    constexpr double grid = 1 << 26;
    mu = std::round(mu * grid) / grid;
  }
  const double residual = (mu * a + (1.0 - mu) * b).norm();
  return {residual, swapped ? 1.0 - mu : mu};
}

// One solved trade-off configuration. `metrics` is evaluated on the data the
// point was solved on; test-side evaluation is attached by the sweep driver
// when a held-out split exists.
struct TradeoffPoint {
  double alpha = 0.0;
  WeightVector theta;
  double f1 = 0.0;
  double f2 = 0.0;
  double fj_residual = 0.0;
  double fj_lambda = 0.5;
  GroupReport metrics;
  bool accepted = false;   // fj_accepted and not dominated
  bool fj_accepted = false;  // fj_residual <= epsilon
  bool dominated = false;
  std::optional<GroupReport> test_metrics;
  std::optional<double> test_f1;
  std::optional<double> test_f2;
};

// Dominance-filtered, alpha-descending front plus the points that failed the
// Fritz-John tolerance or were dominated (kept for diagnostics, never
// silently dropped).
struct ParetoFront {
  std::vector<TradeoffPoint> points;
  std::vector<TradeoffPoint> rejected;
  double epsilon = 1e-3;
  nlohmann::json provenance;  // resolved config snapshot

  // All swept points, alpha descending.
  std::vector<TradeoffPoint> all_points() const;
};

struct SolveOptions {
  std::int64_t steps = 2000;
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-3;  // Fritz-John acceptance tolerance
  CbaMode cba_mode = CbaMode::normalized;
  std::int64_t batch_size = 0;  // 0 = full batch
  std::uint64_t batch_seed = 0;
};

// Train the scalarized objective at one alpha and evaluate the point.
TradeoffPoint solve_at_alpha(double alpha, const Dataset& d_train, const WeightVector& init,
                             const SolveOptions& opts);

// Solve the grid in descending alpha order. The highest-alpha solve starts
// from `init` (the accuracy-maximizing anchor); with warm_start each later
// solve starts from the previous solution, otherwise every solve starts from
// the anchor point's solution.
ParetoFront sweep_front(const Dataset& d_train, const std::vector<double>& alpha_grid,
                        bool warm_start, const SolveOptions& opts,
                        const WeightVector& init);

// Strict Pareto filter, minimization in (f1, f2); stable input order.
std::vector<TradeoffPoint> dominance_filter(const std::vector<TradeoffPoint>& points);

enum class FrontFormat { csv, json };

// Filename tag for per-point artifacts: theta_alpha_<tag>.json.
std::string alpha_tag(double alpha);

// CSV columns: alpha,f1,f2,fj_residual,accepted,acc_overall,acc_g0,acc_g1,
// acc_gap,fpr_g0,fpr_g1 (metric columns report the test evaluation when one
// is attached, the solve-side metrics otherwise). JSON mirrors everything
// plus provenance and per-point checkpoint references; values round-trip at
// 17 significant digits.
void export_front(const ParetoFront& front, const std::string& path, FrontFormat format);

ParetoFront import_front(const std::string& path);

}  // namespace fairfront

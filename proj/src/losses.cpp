#include "fairfront/losses.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace fairfront {

CbaMode parse_cba_mode(const std::string& name) {
  if (name == "normalized") return CbaMode::normalized;
  if (name == "literal") return CbaMode::literal;
  throw std::invalid_argument("unknown cba_mode: " + name + " (expected normalized|literal)");
}

std::string to_string(CbaMode mode) {
  return mode == CbaMode::normalized ? "normalized" : "literal";
}

namespace {

// Per-sample CBA coefficient for a subset with the given class counts.
double cba_coeff(CbaMode mode, double n_subset, double n_own_class) {
  if (n_own_class == 0.0) return 0.0;
  return mode == CbaMode::normalized ? 1.0 / n_own_class : (n_subset - n_own_class) / n_subset;
}

}  // namespace

double fairness_loss(const Dataset& d, const ArrXd& probabilities, CbaMode mode) {
  if (probabilities.size() != d.size())
    throw std::invalid_argument("fairness_loss: prediction length mismatch");
  double group_cba[2];
  for (int g = 0; g < 2; ++g) {
    std::vector<Index> rows;
    for (Index i = 0; i < d.size(); ++i)
      if (d.groups()[i] == g) rows.push_back(i);
    if (rows.empty())
      throw std::invalid_argument("fairness_loss: group " + std::to_string(g) +
                                  " absent from dataset");
    ArrXd z(static_cast<Index>(rows.size())), p(static_cast<Index>(rows.size()));
    for (Index k = 0; k < static_cast<Index>(rows.size()); ++k) {
      z[k] = d.labels()[rows[static_cast<std::size_t>(k)]];
      p[k] = probabilities[rows[static_cast<std::size_t>(k)]];
    }
    group_cba[g] = cba(z, p, mode).value;
  }
  const double diff = group_cba[0] - group_cba[1];
  return diff * diff;
}

LossPair loss_pair(const Dataset& d, const WeightVector& theta, CbaMode mode,
                   MissingGroupPolicy policy) {
  const Index n = d.size();
  const Index f_dim = d.feature_dim();
  if (theta.dim() != f_dim)
    throw std::invalid_argument("loss_pair: weight dimension does not match feature_dim");

  long cell[2][2] = {{0, 0}, {0, 0}};
  for (Index i = 0; i < n; ++i) ++cell[d.groups()[i]][d.labels()[i]];
  const long n_g0 = cell[0][0] + cell[0][1];
  const long n_g1 = cell[1][0] + cell[1][1];

  LossPair out;
  const bool group_missing = n_g0 == 0 || n_g1 == 0;
  if (group_missing && policy == MissingGroupPolicy::error)
    throw std::invalid_argument("loss_pair: group " + std::to_string(n_g0 == 0 ? 0 : 1) +
                                " absent from dataset");
  out.missing_group_warning = group_missing;
  out.empty_class_warning =
      group_missing || cell[0][0] == 0 || cell[0][1] == 0 || cell[1][0] == 0 || cell[1][1] == 0;

  double coeff[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  if (!group_missing) {
    for (int g = 0; g < 2; ++g) {
      const double group_n = static_cast<double>(g == 0 ? n_g0 : n_g1);
      for (int c = 0; c < 2; ++c)
        coeff[g][c] = cba_coeff(mode, group_n, static_cast<double>(cell[g][c]));
    }
  }

  // One fused pass: probabilities, per-sample loss terms, and the two
  // per-sample gradient weights (BCE mean and signed CBA coefficients).
  const VecXd logits = d.features() * theta.weights + VecXd::Constant(n, theta.bias);
  MatXd grad_weights(n, 2);  // col 0 -> g1, col 1 -> g2 (scaled later)
  const double inv_n = 1.0 / static_cast<double>(n);
  double f1_sum = 0.0, g1_bias = 0.0;
  double group_cba[2] = {0.0, 0.0};
  for (Index i = 0; i < n; ++i) {
    const double p = logistic_clamped(logits[i]);
    const int z = d.labels()[i];
    const double term = z == 1 ? -std::log(p) : -std::log1p(-p);
    const double residual = p - static_cast<double>(z);
    f1_sum += term;
    g1_bias += residual;
    grad_weights(i, 0) = residual * inv_n;
    const int g = d.groups()[i];
    const double w = coeff[g][z];
    group_cba[g] += w * term;
    grad_weights(i, 1) = (g == 0 ? w : -w) * residual;
  }
  out.f1 = f1_sum * inv_n;

  const double diff = group_cba[0] - group_cba[1];
  out.f2 = group_missing ? 0.0 : diff * diff;
  grad_weights.col(1) *= 2.0 * diff;

  const MatXd grads = d.features().transpose() * grad_weights;  // F x 2
  out.g1.resize(f_dim + 1);
  out.g1.head(f_dim) = grads.col(0);
  out.g1[f_dim] = g1_bias * inv_n;
  out.g2.resize(f_dim + 1);
  if (group_missing) {
    out.g2.setZero();
  } else {
    out.g2.head(f_dim) = grads.col(1);
    out.g2[f_dim] = grad_weights.col(1).sum();
  }
  return out;
}

std::pair<double, VecXd> scalarized_loss(double alpha, const Dataset& d,
                                         const WeightVector& theta, CbaMode mode,
                                         MissingGroupPolicy policy) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("scalarized_loss: alpha must lie in [0,1]");
  const LossPair lp = loss_pair(d, theta, mode, policy);
  return {alpha * lp.f1 + (1.0 - alpha) * lp.f2,
          alpha * lp.g1 + (1.0 - alpha) * lp.g2};
}

double finite_diff_check(const Dataset& d, const WeightVector& theta, double h,
                         std::uint64_t seed, CbaMode mode, Index max_coords) {
  if (!(h >= 1e-7 && h <= 1e-3))
    throw std::invalid_argument("finite_diff_check: h must lie in [1e-7, 1e-3]");
  if (theta.dim() == 0) throw std::invalid_argument("finite_diff_check: zero-dimensional theta");
  if (theta.dim() != d.feature_dim())
    throw std::invalid_argument("finite_diff_check: dimension mismatch");

  const Index dim = theta.dim() + 1;
  std::vector<Index> coords(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) coords[static_cast<std::size_t>(i)] = i;
  if (dim > max_coords) {
    std::mt19937_64 rng(derive_seed(seed, "fdcheck"));
    std::shuffle(coords.begin(), coords.end(), rng);
    coords.resize(static_cast<std::size_t>(max_coords));
  }

  const LossPair analytic = loss_pair(d, theta, mode);
  const VecXd packed = theta.packed();

  double max_rel_err = 0.0;
  for (Index k : coords) {
    VecXd plus = packed, minus = packed;
    plus[k] += h;
    minus[k] -= h;
    const LossPair lp_plus = loss_pair(d, WeightVector::unpack(plus), mode);
    const LossPair lp_minus = loss_pair(d, WeightVector::unpack(minus), mode);
    if (!std::isfinite(lp_plus.f1) || !std::isfinite(lp_plus.f2) ||
        !std::isfinite(lp_minus.f1) || !std::isfinite(lp_minus.f2))
      throw std::runtime_error("finite_diff_check: non-finite perturbed evaluation");

    const double fd1 = (lp_plus.f1 - lp_minus.f1) / (2.0 * h);
    const double fd2 = (lp_plus.f2 - lp_minus.f2) / (2.0 * h);
    const double err1 = std::abs(fd1 - analytic.g1[k]) / std::max(std::abs(analytic.g1[k]), 1e-8);
    const double err2 = std::abs(fd2 - analytic.g2[k]) / std::max(std::abs(analytic.g2[k]), 1e-8);
    max_rel_err = std::max({max_rel_err, err1, err2});
  }
  return max_rel_err;
}

}  // namespace fairfront

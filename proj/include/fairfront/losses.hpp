#pragma once

#include "fairfront/dataset.hpp"
#include "fairfront/linear_model.hpp"
#include "fairfront/types.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace fairfront {

// Class Balanced Accuracy comes in two readings that differ by the positive
// factor p*q/N (p, q = minority/majority class counts of the evaluated
// subset):
//   normalized — per-class means, coefficients 1/p and 1/q. Equals 2*BCE
//                whenever p = q, for every N.
//   literal    — coefficients q/N and p/N, the printed equation. Equals
//                2*BCE only at N = 4 when p = q.
// normalized is the default; it makes the group fairness loss compare
// size-independent quantities.
enum class CbaMode { normalized, literal };

CbaMode parse_cba_mode(const std::string& name);
std::string to_string(CbaMode mode);

// Minority/majority class counts of one evaluated subset. Recomputed from the
// labels at every evaluation, never cached across subsets.
struct ClassCounts {
  Index minority = 0;  // p
  Index majority = 0;  // q
  Index total() const { return minority + majority; }

  template <class Derived>
  static ClassCounts of(const Eigen::ArrayBase<Derived>& labels) {
    const Index n1 = static_cast<Index>((labels.template cast<int>() == 1).count());
    const Index n0 = labels.size() - n1;
    return {std::min(n0, n1), std::max(n0, n1)};
  }
};

namespace detail {

template <class DZ, class DP>
void check_loss_args(const Eigen::ArrayBase<DZ>& z, const Eigen::ArrayBase<DP>& p) {
  if (z.size() != p.size()) throw std::invalid_argument("loss: label/probability length mismatch");
  if (z.size() == 0) throw std::invalid_argument("loss: empty input");
}

}  // namespace detail

// Mean negative log-likelihood; expects probabilities already clamped.
template <class DZ, class DP>
double bce(const Eigen::ArrayBase<DZ>& z, const Eigen::ArrayBase<DP>& p) {
  detail::check_loss_args(z, p);
  const ArrXd zd = z.template cast<double>();
  const ArrXd pd = p.template cast<double>();
  return -(zd * pd.log() + (1.0 - zd) * (1.0 - pd).log()).mean();
}

struct CbaResult {
  double value = 0.0;
  bool class_absent = false;  // a class was missing; its term was dropped
};

// Per-class reweighted BCE over one subset. With a class absent the missing
// term is dropped and the warning flag set; in literal mode the remaining
// coefficient p/N is then zero, consistent with the p*q/N relation.
template <class DZ, class DP>
CbaResult cba(const Eigen::ArrayBase<DZ>& z, const Eigen::ArrayBase<DP>& p, CbaMode mode) {
  detail::check_loss_args(z, p);
  const ArrXd zd = z.template cast<double>();
  const ArrXd pd = p.template cast<double>();
  const double n = static_cast<double>(zd.size());
  const double n1 = zd.sum();
  const double n0 = n - n1;

  auto coeff = [&](double n_own) {
    if (n_own == 0.0) return 0.0;
    return mode == CbaMode::normalized ? 1.0 / n_own : (n - n_own) / n;
  };
  const double c1 = coeff(n1);
  const double c0 = coeff(n0);
  const ArrXd terms = -(zd * pd.log() + (1.0 - zd) * (1.0 - pd).log());
  return {((zd * c1 + (1.0 - zd) * c0) * terms).sum(), n0 == 0.0 || n1 == 0.0};
}

// Squared difference of the two groups' CBA values, each computed with that
// group's own class counts. Zero exactly when the balanced errors match.
double fairness_loss(const Dataset& d, const ArrXd& probabilities,
                     CbaMode mode = CbaMode::normalized);

// What to do when a data subset is missing one of the two groups. `skip`
// exists for mini-batches: the fairness term is dropped for that batch and a
// warning flag raised instead of failing the run.
enum class MissingGroupPolicy { error, skip };

// Both objectives and their packed analytic gradients at theta, evaluated in
// one forward pass. f1 = full-batch BCE, f2 = group fairness loss.
struct LossPair {
  double f1 = 0.0;
  double f2 = 0.0;
  VecXd g1;
  VecXd g2;
  bool empty_class_warning = false;
  bool missing_group_warning = false;
};

LossPair loss_pair(const Dataset& d, const WeightVector& theta,
                   CbaMode mode = CbaMode::normalized,
                   MissingGroupPolicy policy = MissingGroupPolicy::error);

// alpha*f1 + (1-alpha)*f2 with the matching gradient combination.
std::pair<double, VecXd> scalarized_loss(double alpha, const Dataset& d,
                                         const WeightVector& theta,
                                         CbaMode mode = CbaMode::normalized,
                                         MissingGroupPolicy policy = MissingGroupPolicy::error);

// Central-difference check of the analytic f1/f2 gradients on sampled
// coordinates. Returns the max relative error with denominator
// max(|analytic|, 1e-8). h must lie in [1e-7, 1e-3].
double finite_diff_check(const Dataset& d, const WeightVector& theta, double h,
                         std::uint64_t seed, CbaMode mode = CbaMode::normalized,
                         Index max_coords = 20);

}  // namespace fairfront

// Acceptance suite: runs each numbered criterion at its stated tolerance and
// prints one pass/fail line per criterion. `--only N` runs a single one.

#include "fairfront/commands.hpp"
#include "fairfront/pareto.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

using namespace fairfront;
namespace fs = std::filesystem;

namespace {

struct CheckFailure {
  std::string message;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw CheckFailure{msg};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Shared default-synthetic run (criteria 6-10). Solved lazily, once.
// ---------------------------------------------------------------------------

struct SweptEval {
  TradeoffPoint point;       // solve-side values (train split)
  GroupReport test_report;   // held-out evaluation
  double test_f1 = 0.0;
  double test_f2 = 0.0;
};

struct Context {
  std::optional<Dataset> train_split, test_split;
  std::vector<SweptEval> sweep;  // alpha descending, full default grid
  ParetoFront front;

  void ensure_data() {
    if (train_split) return;
    RunConfig cfg;  // defaults = the paper-shaped synthetic preset
    const Dataset d = generate_synthetic(cfg.synth_config());
    auto [tr, te] = stratified_split(d, {cfg.train_fraction, derive_seed(cfg.seed, "split")});
    train_split.emplace(std::move(tr));
    test_split.emplace(std::move(te));
  }

  void ensure_sweep() {
    if (!sweep.empty()) return;
    ensure_data();
    RunConfig cfg;
    SolveOptions opts;
    opts.steps = cfg.steps;
    opts.learning_rate = cfg.learning_rate;
    opts.epsilon = cfg.epsilon;
    front = sweep_front(*train_split, cfg.alphas, cfg.warm_start, opts,
                        WeightVector::zeros(train_split->feature_dim()));
    for (const auto& p : front.all_points()) {
      SweptEval e;
      e.point = p;
      e.test_report = evaluate(*test_split, forward(p.theta, *test_split));
      const LossPair lp = loss_pair(*test_split, p.theta);
      e.test_f1 = lp.f1;
      e.test_f2 = lp.f2;
      sweep.push_back(std::move(e));
    }
  }

  const SweptEval& at_alpha(double alpha) const {
    for (const auto& e : sweep)
      if (e.point.alpha == alpha) return e;
    throw CheckFailure{"alpha " + fmt(alpha) + " missing from sweep"};
  }
};

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

void criterion_1_cba_identity(Context&) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> up(kProbEps, 1.0 - kProbEps);
  std::uniform_int_distribution<Index> half(1, 100);  // N = 2*half <= 200
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Index h = half(rng);
    ArrXd z(2 * h), p(2 * h);
    for (Index i = 0; i < 2 * h; ++i) {
      z[i] = i < h ? 1.0 : 0.0;
      p[i] = up(rng);
    }
    worst = std::max(worst, std::abs(cba(z, p, CbaMode::normalized).value - 2.0 * bce(z, p)));
  }
  require(worst <= 1e-9, "max |CBA_normalized - 2*BCE| = " + fmt(worst) + " > 1e-9");
}

void criterion_2_mode_relation(Context&) {
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> up(kProbEps, 1.0 - kProbEps);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = std::uniform_int_distribution<Index>(2, 200)(rng);
    const Index n1 = std::uniform_int_distribution<Index>(1, n - 1)(rng);
    ArrXd z(n), p(n);
    for (Index i = 0; i < n; ++i) {
      z[i] = i < n1 ? 1.0 : 0.0;
      p[i] = up(rng);
    }
    const double pq = static_cast<double>(std::min(n1, n - n1)) *
                      static_cast<double>(std::max(n1, n - n1)) / static_cast<double>(n);
    worst = std::max(worst, std::abs(cba(z, p, CbaMode::literal).value -
                                     pq * cba(z, p, CbaMode::normalized).value));
  }
  require(worst <= 1e-9, "max |CBA_literal - (pq/N)*CBA_normalized| = " + fmt(worst) + " > 1e-9");
}

void criterion_3_gradients(Context&) {
  std::mt19937_64 rng(103);
  std::normal_distribution<double> dist(0.0, 0.5);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = std::uniform_int_distribution<Index>(40, 90)(rng);
    const Index f_dim = std::uniform_int_distribution<Index>(20, 28)(rng);
    MatXd f(n, f_dim);
    ArrXi l(n), g(n);
    for (Index i = 0; i < n; ++i) {
      l[i] = static_cast<int>(i % 2);
      g[i] = static_cast<int>((i / 2) % 2);
      for (Index j = 0; j < f_dim; ++j) f(i, j) = dist(rng);
    }
    const Dataset d(std::move(f), std::move(l), std::move(g));
    WeightVector theta{VecXd::Zero(f_dim), dist(rng)};
    for (Index j = 0; j < f_dim; ++j) theta.weights[j] = dist(rng);
    const CbaMode mode = trial % 2 == 0 ? CbaMode::normalized : CbaMode::literal;
    worst = std::max(worst, finite_diff_check(d, theta, 1e-5, 5000 + trial, mode));
  }
  require(worst < 1e-5, "max relative gradient error = " + fmt(worst) + " >= 1e-5");
}

void criterion_4_fritz_john(Context&) {
  std::mt19937_64 rng(104);
  std::normal_distribution<double> dist(0.0, 1.0);
  double worst_gap = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Index dim = std::uniform_int_distribution<Index>(1, 10)(rng);
    VecXd g1(dim), g2(dim);
    for (Index i = 0; i < dim; ++i) {
      g1[i] = dist(rng);
      g2[i] = dist(rng);
    }
    const FjResult r = fj_residual(g1, g2);

    // grid oracle at resolution 1e-4
    double grid_best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 10000; ++k) {
      const double lam = 1e-4 * k;
      grid_best = std::min(grid_best, (lam * g1 + (1.0 - lam) * g2).norm());
    }
    worst_gap = std::max(worst_gap, std::abs(r.residual - grid_best));
    require(r.residual <= grid_best + 1e-12,
            "closed form exceeds the grid optimum at trial " + std::to_string(trial));

    // antisymmetry, exact
    const FjResult s = fj_residual(g2, g1);
    require(s.residual == r.residual, "residual changed under argument swap");
    require(s.lambda == 1.0 - r.lambda, "lambda not mapped to 1-lambda under swap");

    // positive-scaling homogeneity, exact for powers of two
    const FjResult h = fj_residual(VecXd(8.0 * g1), VecXd(8.0 * g2));
    require(h.residual == 8.0 * r.residual, "residual not 1-homogeneous under scaling by 8");
    require(h.lambda == r.lambda, "lambda changed under positive scaling");
  }
  require(worst_gap <= 1e-3,
          "max |closed-form - grid| residual = " + fmt(worst_gap) + " > 1e-3");
}

void criterion_5_optimizer(Context&) {
  MatXd f = MatXd::Zero(1, 3);
  ArrXi l(1), g(1);
  l[0] = 1;
  g[0] = 0;
  const Dataset dummy(std::move(f), std::move(l), std::move(g));

  VecXd target(4);
  target << 0.3, -0.2, 0.5, 0.1;
  const LossGradientFn quad = [&](const Dataset&, const WeightVector& w) {
    const VecXd p = w.packed();
    return std::make_pair((p - target).squaredNorm(), VecXd(2.0 * (p - target)));
  };
  TrainOptions opts;
  opts.steps = 5000;
  const auto fit = train(dummy, quad, opts, WeightVector::zeros(3), AdamaxState::init(4));
  const double dist = (fit.theta.packed() - target).cwiseAbs().maxCoeff();
  require(dist <= 1e-3, "distance to the closed-form minimizer = " + fmt(dist) + " > 1e-3");
}

void criterion_6_baseline_bias(Context& ctx) {
  ctx.ensure_sweep();
  const auto& base = ctx.at_alpha(1.0);
  const auto& m = base.test_report;
  require(m.acc_group[0] < m.acc_group[1],
          "group 0 is not the disadvantaged group: acc_g0 = " + fmt(m.acc_group[0]) +
              ", acc_g1 = " + fmt(m.acc_group[1]));
  require(m.acc_gap >= 0.02,
          "test group-accuracy gap = " + fmt(m.acc_gap) + " < 2 points");
  std::cout << "  [info] baseline test acc " << fmt(m.acc_overall) << ", gap "
            << fmt(m.acc_gap) << " (g0 " << fmt(m.acc_group[0]) << ", g1 "
            << fmt(m.acc_group[1]) << ")\n";
}

void criterion_7_tradeoff(Context& ctx) {
  ctx.ensure_sweep();
  const auto& g1 = ctx.at_alpha(1.0).test_report;
  const auto& gh = ctx.at_alpha(0.5).test_report;
  const auto& g0 = ctx.at_alpha(0.0).test_report;
  require(gh.acc_gap < g1.acc_gap, "gap(alpha=0.5) = " + fmt(gh.acc_gap) +
                                       " not below gap(alpha=1) = " + fmt(g1.acc_gap));
  require(g0.acc_gap < 0.01, "gap(alpha=0) = " + fmt(g0.acc_gap) + " >= 1 point");
  const double drop = std::abs(g0.acc_overall - g1.acc_overall);
  require(drop <= 0.04, "overall accuracy moved " + fmt(drop) + " > 4 points from the baseline");
  std::cout << "  [info] test gaps: " << fmt(g1.acc_gap) << " -> " << fmt(gh.acc_gap) << " -> "
            << fmt(g0.acc_gap) << "; overall " << fmt(g1.acc_overall) << " -> "
            << fmt(g0.acc_overall) << "\n";
}

void criterion_8_front_validity(Context& ctx) {
  ctx.ensure_sweep();
  for (const auto& p : ctx.front.points)
    require(p.fj_residual <= 0.001, "accepted point at alpha " + fmt(p.alpha) +
                                        " has residual " + fmt(p.fj_residual));
  require(dominance_filter(ctx.front.points).size() == ctx.front.points.size(),
          "the exported front is not dominance-invariant");

  const auto all = ctx.front.all_points();
  std::vector<const TradeoffPoint*> accepted;
  for (const auto& p : all)
    if (p.accepted) accepted.push_back(&p);
  require(accepted.size() >= 9, "only " + std::to_string(accepted.size()) +
                                    " of 11 points accepted at epsilon 0.001");
  for (std::size_t i = 1; i < accepted.size(); ++i) {
    require(accepted[i]->f1 >= accepted[i - 1]->f1 - 1e-4,
            "f1 not non-decreasing as alpha falls at alpha " + fmt(accepted[i]->alpha));
    require(accepted[i]->f2 <= accepted[i - 1]->f2 + 1e-4,
            "f2 not non-increasing as alpha falls at alpha " + fmt(accepted[i]->alpha));
  }
  std::cout << "  [info] accepted " << accepted.size() << "/" << all.size()
            << " points; max residual "
            << fmt(std::max_element(ctx.front.points.begin(), ctx.front.points.end(),
                                    [](const auto& a, const auto& b) {
                                      return a.fj_residual < b.fj_residual;
                                    })
                       ->fj_residual)
            << "\n";
}

void criterion_9_fpr_trend(Context& ctx) {
  ctx.ensure_sweep();
  const auto& at1 = ctx.at_alpha(1.0).test_report;
  const auto& at0 = ctx.at_alpha(0.0).test_report;
  require(at0.fpr_group[0] < at1.fpr_group[0],
          "group-0 FPR did not fall: " + fmt(at1.fpr_group[0]) + " -> " + fmt(at0.fpr_group[0]));
  require(at0.fpr_group[1] > at1.fpr_group[1],
          "group-1 FPR did not rise: " + fmt(at1.fpr_group[1]) + " -> " + fmt(at0.fpr_group[1]));
  std::cout << "  [info] FPR g0 " << fmt(at1.fpr_group[0]) << " -> " << fmt(at0.fpr_group[0])
            << ", g1 " << fmt(at1.fpr_group[1]) << " -> " << fmt(at0.fpr_group[1]) << "\n";
}

void criterion_10_concordance(Context& ctx) {
  ctx.ensure_sweep();
  double worst = 0.0;
  for (const auto& e : ctx.sweep) {
    const DeviationTable dev = compare_train_test(e.point.metrics, e.test_report);
    const double w = std::max({dev.acc_overall, dev.acc_group[0], dev.acc_group[1], dev.acc_gap});
    if (w > worst) worst = w;
    require(w < 0.02, "train/test accuracy deviation " + fmt(w) + " >= 2 points at alpha " +
                          fmt(e.point.alpha));
  }
  std::cout << "  [info] max train/test accuracy deviation " << fmt(worst) << "\n";
}

void criterion_11_determinism(Context&) {
  const fs::path base = fs::temp_directory_path() / "fairfront_acceptance_c11";
  fs::remove_all(base);
  fs::create_directories(base);
  const std::string run_a = (base / "a").string();
  const std::string run_b = (base / "b").string();
  for (const std::string& out : {run_a, run_b}) {
    const std::string cmd =
        std::string(FAIRFRONT_CLI_PATH) + " sweep --outdir " + out + " >/dev/null 2>&1";
    require(std::system(cmd.c_str()) == 0, "CLI sweep failed (outdir " + out + ")");
  }
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(fs::path(run_a) / "front.csv");
  const std::string b = slurp(fs::path(run_b) / "front.csv");
  require(!a.empty(), "first sweep produced no front.csv");
  require(a == b, "two identical sweep runs produced different front CSVs");
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0 = unchecked
  std::function<void(Context&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "CBA identity: normalized CBA = 2*BCE on balanced classes", 1.0,
       criterion_1_cba_identity},
      {2, "mode relation: literal CBA = (pq/N) * normalized CBA", 1.0, criterion_2_mode_relation},
      {3, "analytic gradients match central finite differences", 10.0, criterion_3_gradients},
      {4, "Fritz-John closed form matches grid search; exact symmetries", 5.0,
       criterion_4_fritz_john},
      {5, "optimizer reaches a convex quadratic's minimizer within 1e-3", 0.0,
       criterion_5_optimizer},
      {6, "baseline bias: alpha=1 test gap >= 2 points, group 0 worse", 60.0,
       criterion_6_baseline_bias},
      {7, "trade-off: gap shrinks at alpha=0.5, closes at alpha=0", 300.0, criterion_7_tradeoff},
      {8, "front validity: residual tolerance, dominance, monotone losses", 0.0,
       criterion_8_front_validity},
      {9, "FPR trend: group-0 falls, group-1 rises from alpha=1 to 0", 0.0, criterion_9_fpr_trend},
      {10, "train/test concordance within 2 points per front point", 0.0,
       criterion_10_concordance},
      {11, "two identical sweep runs emit byte-identical front CSVs", 0.0,
       criterion_11_determinism},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }

  Context ctx;
  int failures = 0;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run(ctx);
    } catch (const CheckFailure& f) {
      error = f.message;
    } catch (const std::exception& e) {
      error = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && c.time_limit_s > 0.0 && secs > c.time_limit_s)
      error = "runtime " + fmt(secs) + " s exceeds " + fmt(c.time_limit_s) + " s";
    if (error.empty()) {
      std::printf("[PASS] criterion %2d: %s (%.2f s)\n", c.id, c.name, secs);
    } else {
      std::printf("[FAIL] criterion %2d: %s (%.2f s)\n       %s\n", c.id, c.name, secs,
                  error.c_str());
      ++failures;
    }
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

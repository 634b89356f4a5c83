#include "fairfront/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

namespace fairfront {

std::vector<TradeoffPoint> ParetoFront::all_points() const {
  std::vector<TradeoffPoint> all = points;
  all.insert(all.end(), rejected.begin(), rejected.end());
  std::stable_sort(all.begin(), all.end(),
                   [](const TradeoffPoint& a, const TradeoffPoint& b) { return a.alpha > b.alpha; });
  return all;
}

TradeoffPoint solve_at_alpha(double alpha, const Dataset& d_train, const WeightVector& init,
                             const SolveOptions& opts) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("solve_at_alpha: alpha must lie in [0,1]");

  const bool minibatch = opts.batch_size > 0 && opts.batch_size < d_train.size();
  const MissingGroupPolicy policy =
      minibatch ? MissingGroupPolicy::skip : MissingGroupPolicy::error;
  const LossGradientFn objective = [&](const Dataset& batch, const WeightVector& theta) {
    return scalarized_loss(alpha, batch, theta, opts.cba_mode, policy);
  };

  TrainOptions topts;
  topts.steps = opts.steps;
  topts.batch_size = opts.batch_size;
  topts.batch_seed = opts.batch_seed;
  AdamaxState state =
      AdamaxState::init(init.dim() + 1, opts.learning_rate, opts.beta1, opts.beta2);
  const TrainResult fit = train(d_train, objective, topts, init, std::move(state));

  TradeoffPoint pt;
  pt.alpha = alpha;
  pt.theta = fit.theta;
  const LossPair lp = loss_pair(d_train, fit.theta, opts.cba_mode);
  pt.f1 = lp.f1;
  pt.f2 = lp.f2;
  const FjResult fj = fj_residual(lp.g1, lp.g2);
  pt.fj_residual = fj.residual;
  pt.fj_lambda = fj.lambda;
  pt.metrics = evaluate(d_train, forward(fit.theta, d_train));
  pt.fj_accepted = fj.residual <= opts.epsilon;
  pt.accepted = pt.fj_accepted;
  return pt;
}

std::vector<TradeoffPoint> dominance_filter(const std::vector<TradeoffPoint>& points) {
  std::vector<TradeoffPoint> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (i == j) continue;
      const auto& a = points[i];
      const auto& b = points[j];
      dominated = b.f1 <= a.f1 && b.f2 <= a.f2 && (b.f1 < a.f1 || b.f2 < a.f2);
    }
    if (!dominated) kept.push_back(points[i]);
  }
  return kept;
}

ParetoFront sweep_front(const Dataset& d_train, const std::vector<double>& alpha_grid,
                        bool warm_start, const SolveOptions& opts, const WeightVector& init) {
  if (alpha_grid.empty()) throw std::invalid_argument("sweep_front: empty alpha grid");
  for (double a : alpha_grid)
    if (!(a >= 0.0 && a <= 1.0))
      throw std::invalid_argument("sweep_front: alpha values must lie in [0,1]");
  std::vector<double> grid = alpha_grid;
  std::sort(grid.begin(), grid.end(), std::greater<>());
  if (std::adjacent_find(grid.begin(), grid.end()) != grid.end())
    throw std::invalid_argument("sweep_front: alpha values must be distinct");

  std::vector<TradeoffPoint> swept;
  swept.reserve(grid.size());
  WeightVector anchor = init;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const WeightVector& start = k == 0 ? init : (warm_start ? swept.back().theta : anchor);
    swept.push_back(solve_at_alpha(grid[k], d_train, start, opts));
    if (k == 0) anchor = swept.back().theta;
  }

  // Dominance is judged among the Fritz-John survivors.
  std::vector<TradeoffPoint> fj_ok;
  for (const auto& p : swept)
    if (p.fj_accepted) fj_ok.push_back(p);
  const std::vector<TradeoffPoint> front_points = dominance_filter(fj_ok);
  std::set<double> front_alphas;
  for (const auto& p : front_points) front_alphas.insert(p.alpha);

  ParetoFront front;
  front.epsilon = opts.epsilon;
  front.provenance = {{"steps", opts.steps},
                      {"learning_rate", opts.learning_rate},
                      {"beta1", opts.beta1},
                      {"beta2", opts.beta2},
                      {"epsilon", opts.epsilon},
                      {"cba_mode", to_string(opts.cba_mode)},
                      {"warm_start", warm_start},
                      {"batch_size", opts.batch_size},
                      {"alpha_grid", grid}};
  for (auto& p : swept) {
    if (front_alphas.count(p.alpha)) {
      front.points.push_back(std::move(p));
    } else {
      p.dominated = p.fj_accepted;  // FJ failures were never candidates
      p.accepted = false;
      front.rejected.push_back(std::move(p));
    }
  }
  return front;
}

std::string alpha_tag(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", alpha);
  std::string s(buf);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const GroupReport& csv_metrics(const TradeoffPoint& p) {
  return p.test_metrics ? *p.test_metrics : p.metrics;
}

nlohmann::json point_to_json(const TradeoffPoint& p) {
  nlohmann::json j{{"alpha", p.alpha},
                   {"f1", p.f1},
                   {"f2", p.f2},
                   {"fj_residual", p.fj_residual},
                   {"fj_lambda", p.fj_lambda},
                   {"accepted", p.accepted},
                   {"fj_accepted", p.fj_accepted},
                   {"dominated", p.dominated},
                   {"theta_checkpoint", "theta_alpha_" + alpha_tag(p.alpha) + ".json"},
                   {"train_metrics", report_to_json(p.metrics)}};
  if (p.test_metrics) {
    j["test_metrics"] = report_to_json(*p.test_metrics);
    j["test_f1"] = *p.test_f1;
    j["test_f2"] = *p.test_f2;
  }
  return j;
}

TradeoffPoint point_from_json(const nlohmann::json& j) {
  TradeoffPoint p;
  p.alpha = j.at("alpha").get<double>();
  p.f1 = j.at("f1").get<double>();
  p.f2 = j.at("f2").get<double>();
  p.fj_residual = j.at("fj_residual").get<double>();
  p.fj_lambda = j.at("fj_lambda").get<double>();
  p.accepted = j.at("accepted").get<bool>();
  p.fj_accepted = j.at("fj_accepted").get<bool>();
  p.dominated = j.at("dominated").get<bool>();
  p.metrics = report_from_json(j.at("train_metrics"));
  if (j.contains("test_metrics")) {
    p.test_metrics = report_from_json(j.at("test_metrics"));
    p.test_f1 = j.at("test_f1").get<double>();
    p.test_f2 = j.at("test_f2").get<double>();
  }
  return p;
}

}  // namespace

void export_front(const ParetoFront& front, const std::string& path, FrontFormat format) {
  if (front.points.empty() && front.rejected.empty())
    throw std::invalid_argument("export_front: empty front");

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write front file: " + path);

  if (format == FrontFormat::csv) {
    out << "alpha,f1,f2,fj_residual,accepted,acc_overall,acc_g0,acc_g1,acc_gap,fpr_g0,fpr_g1\n";
    for (const auto& p : front.all_points()) {
      const GroupReport& m = csv_metrics(p);
      out << fmt17(p.alpha) << ',' << fmt17(p.f1) << ',' << fmt17(p.f2) << ','
          << fmt17(p.fj_residual) << ',' << (p.accepted ? 1 : 0) << ',' << fmt17(m.acc_overall)
          << ',' << fmt17(m.acc_group[0]) << ',' << fmt17(m.acc_group[1]) << ','
          << fmt17(m.acc_gap) << ',' << fmt17(m.fpr_group[0]) << ',' << fmt17(m.fpr_group[1])
          << "\n";
    }
  } else {
    nlohmann::json j;
    j["schema"] = "fairfront.front.v1";
    j["epsilon"] = front.epsilon;
    j["provenance"] = front.provenance;
    j["points"] = nlohmann::json::array();
    for (const auto& p : front.points) j["points"].push_back(point_to_json(p));
    j["rejected"] = nlohmann::json::array();
    for (const auto& p : front.rejected) j["rejected"].push_back(point_to_json(p));
    out << j.dump(2) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

ParetoFront import_front(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open front file: " + path);
  nlohmann::json j;
  in >> j;
  if (j.value("schema", "") != "fairfront.front.v1")
    throw std::runtime_error("unrecognized front schema in " + path);
  ParetoFront front;
  front.epsilon = j.at("epsilon").get<double>();
  front.provenance = j.value("provenance", nlohmann::json::object());
  for (const auto& pj : j.at("points")) front.points.push_back(point_from_json(pj));
  for (const auto& pj : j.at("rejected")) front.rejected.push_back(point_from_json(pj));
  return front;
}

}  // namespace fairfront

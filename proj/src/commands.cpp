#include "fairfront/commands.hpp"

#include "fairfront/metrics.hpp"
#include "fairfront/pareto.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace fairfront {

SynthConfig RunConfig::synth_config() const {
  if (cells.size() != 4)
    throw std::invalid_argument("cells must have exactly 4 entries: g0c1,g0c0,g1c1,g1c0");
  SynthConfig s;
  s.n_g0_c1 = cells[0];
  s.n_g0_c0 = cells[1];
  s.n_g1_c1 = cells[2];
  s.n_g1_c0 = cells[3];
  s.feature_dim = feature_dim;
  s.sep_g0 = sep_g0;
  s.sep_g1 = sep_g1;
  s.noise_scale = noise_scale;
  s.seed = seed;
  return s;
}

nlohmann::json RunConfig::to_json() const {
  return {{"data_csv", data_csv},
          {"cells", cells},
          {"feature_dim", feature_dim},
          {"sep_g0", sep_g0},
          {"sep_g1", sep_g1},
          {"noise_scale", noise_scale},
          {"train_fraction", train_fraction},
          {"learning_rate", learning_rate},
          {"beta1", beta1},
          {"beta2", beta2},
          {"steps", steps},
          {"batch_size", batch_size},
          {"cba_mode", cba_mode},
          {"alphas", alphas},
          {"epsilon", epsilon},
          {"warm_start", warm_start},
          {"seed", seed},
          {"outdir", outdir}};
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  c.data_csv = j.value("data_csv", c.data_csv);
  c.cells = j.value("cells", c.cells);
  c.feature_dim = j.value("feature_dim", c.feature_dim);
  c.sep_g0 = j.value("sep_g0", c.sep_g0);
  c.sep_g1 = j.value("sep_g1", c.sep_g1);
  c.noise_scale = j.value("noise_scale", c.noise_scale);
  c.train_fraction = j.value("train_fraction", c.train_fraction);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.beta1 = j.value("beta1", c.beta1);
  c.beta2 = j.value("beta2", c.beta2);
  c.steps = j.value("steps", c.steps);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.cba_mode = j.value("cba_mode", c.cba_mode);
  c.alphas = j.value("alphas", c.alphas);
  c.epsilon = j.value("epsilon", c.epsilon);
  c.warm_start = j.value("warm_start", c.warm_start);
  c.seed = j.value("seed", c.seed);
  c.outdir = j.value("outdir", c.outdir);
  return c;
}

namespace {

void write_json_file(const nlohmann::json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

fs::path prepare_outdir(const RunConfig& cfg) {
  fs::path dir(cfg.outdir);
  fs::create_directories(dir);
  write_json_file(cfg.to_json(), dir / "provenance.json");
  return dir;
}

Dataset resolve_dataset(const RunConfig& cfg) {
  if (!cfg.data_csv.empty()) return load_csv(cfg.data_csv);
  return generate_synthetic(cfg.synth_config());
}

SolveOptions solve_options(const RunConfig& cfg) {
  SolveOptions o;
  o.steps = cfg.steps;
  o.learning_rate = cfg.learning_rate;
  o.beta1 = cfg.beta1;
  o.beta2 = cfg.beta2;
  o.epsilon = cfg.epsilon;
  o.cba_mode = parse_cba_mode(cfg.cba_mode);
  o.batch_size = cfg.batch_size;
  o.batch_seed = derive_seed(cfg.seed, "batch");
  return o;
}

nlohmann::json stats_to_json(const DatasetStats& s) {
  return {{"n", s.n},
          {"cells",
           {{"g0", {{"c0", s.cell[0][0]}, {"c1", s.cell[0][1]}}},
            {"g1", {{"c0", s.cell[1][0]}, {"c1", s.cell[1][1]}}}}},
          {"minority_count", s.minority_count},
          {"majority_count", s.majority_count},
          {"group_count", s.group_count},
          {"class_count", s.class_count},
          {"group_proportion", s.group_proportion},
          {"class_proportion", s.class_proportion}};
}

// Attach held-out evaluation to a solved point.
void attach_test_eval(TradeoffPoint& p, const Dataset& test, CbaMode mode) {
  p.test_metrics = evaluate(test, forward(p.theta, test));
  const LossPair lp = loss_pair(test, p.theta, mode);
  p.test_f1 = lp.f1;
  p.test_f2 = lp.f2;
}

nlohmann::json deviations_to_json(const DeviationTable& t) {
  return {{"acc_overall", t.acc_overall}, {"acc_g0", t.acc_group[0]},
          {"acc_g1", t.acc_group[1]},     {"acc_gap", t.acc_gap},
          {"fpr_g0", t.fpr_group[0]},     {"fpr_g1", t.fpr_group[1]},
          {"flagged", t.flagged}};
}

}  // namespace

void cmd_synth(const RunConfig& cfg) {
  const fs::path dir = prepare_outdir(cfg);
  const Dataset d = generate_synthetic(cfg.synth_config());
  const fs::path csv = dir / "synthetic.csv";
  save_csv(d, csv.string());
  write_json_file(stats_to_json(dataset_stats(d)), dir / "synthetic_stats.json");
  std::cout << "wrote " << csv.string() << " (" << d.size() << " samples, F=" << d.feature_dim()
            << ")\n";
}

void cmd_baseline(const RunConfig& cfg) {
  const fs::path dir = prepare_outdir(cfg);
  const Dataset d = resolve_dataset(cfg);
  const auto [train_set, test_set] =
      stratified_split(d, {cfg.train_fraction, derive_seed(cfg.seed, "split")});

  const SolveOptions opts = solve_options(cfg);
  TradeoffPoint pt = solve_at_alpha(1.0, train_set, WeightVector::zeros(d.feature_dim()), opts);
  attach_test_eval(pt, test_set, opts.cba_mode);

  save_checkpoint(pt.theta, (dir / "baseline_theta.json").string());
  nlohmann::json report{{"alpha", 1.0},
                        {"f1", pt.f1},
                        {"f2", pt.f2},
                        {"fj_residual", pt.fj_residual},
                        {"fj_lambda", pt.fj_lambda},
                        {"train", report_to_json(pt.metrics)},
                        {"test", report_to_json(*pt.test_metrics)},
                        {"test_f1", *pt.test_f1},
                        {"test_f2", *pt.test_f2},
                        {"deviations",
                         deviations_to_json(compare_train_test(pt.metrics, *pt.test_metrics))}};
  write_json_file(report, dir / "baseline_report.json");

  const auto& m = *pt.test_metrics;
  std::printf("baseline (alpha=1): test acc %.4f | g0 %.4f g1 %.4f gap %.4f | fpr g0 %.4f g1 %.4f\n",
              m.acc_overall, m.acc_group[0], m.acc_group[1], m.acc_gap, m.fpr_group[0],
              m.fpr_group[1]);
}

void cmd_sweep(const RunConfig& cfg) {
  const fs::path dir = prepare_outdir(cfg);
  const Dataset d = resolve_dataset(cfg);
  const auto [train_set, test_set] =
      stratified_split(d, {cfg.train_fraction, derive_seed(cfg.seed, "split")});

  const SolveOptions opts = solve_options(cfg);
  ParetoFront front = sweep_front(train_set, cfg.alphas, cfg.warm_start, opts,
                                  WeightVector::zeros(d.feature_dim()));
  front.provenance = cfg.to_json();

  for (auto* bucket : {&front.points, &front.rejected}) {
    for (auto& p : *bucket) {
      attach_test_eval(p, test_set, opts.cba_mode);
      save_checkpoint(p.theta, (dir / ("theta_alpha_" + alpha_tag(p.alpha) + ".json")).string());
      nlohmann::json report{
          {"alpha", p.alpha},
          {"train", report_to_json(p.metrics)},
          {"test", report_to_json(*p.test_metrics)},
          {"deviations", deviations_to_json(compare_train_test(p.metrics, *p.test_metrics))}};
      write_json_file(report, dir / ("report_alpha_" + alpha_tag(p.alpha) + ".json"));
    }
  }

  export_front(front, (dir / "front.csv").string(), FrontFormat::csv);
  export_front(front, (dir / "front.json").string(), FrontFormat::json);

  for (const auto& p : front.all_points())
    std::printf("alpha %-4s  f1 %.6f  f2 %.6e  fj %.3e  %s\n", alpha_tag(p.alpha).c_str(), p.f1,
                p.f2, p.fj_residual,
                p.accepted ? "accepted" : (p.dominated ? "dominated" : "rejected"));
  std::cout << "front: " << front.points.size() << " accepted, " << front.rejected.size()
            << " rejected -> " << (dir / "front.csv").string() << "\n";
}

int cmd_verify(const std::string& front_json_path, const std::string& data_csv_override,
               double tolerance) {
  const ParetoFront front = import_front(front_json_path);
  const auto all = front.all_points();
  if (all.empty()) throw std::runtime_error("front contains no points: " + front_json_path);

  RunConfig cfg = RunConfig::from_json(front.provenance);
  if (!data_csv_override.empty()) cfg.data_csv = data_csv_override;
  const Dataset d = resolve_dataset(cfg);
  const auto [train_set, test_set] =
      stratified_split(d, {cfg.train_fraction, derive_seed(cfg.seed, "split")});
  const CbaMode mode = parse_cba_mode(cfg.cba_mode);
  const fs::path dir = fs::path(front_json_path).parent_path();

  int mismatches = 0;
  for (const auto& p : all) {
    const fs::path ckpt = dir / ("theta_alpha_" + alpha_tag(p.alpha) + ".json");
    const WeightVector theta = load_checkpoint(ckpt.string());
    const LossPair lp = loss_pair(train_set, theta, mode);
    const FjResult fj = fj_residual(lp.g1, lp.g2);
    const double dev = std::max({std::abs(lp.f1 - p.f1), std::abs(lp.f2 - p.f2),
                                 std::abs(fj.residual - p.fj_residual)});
    const bool ok = dev <= tolerance;
    mismatches += ok ? 0 : 1;
    std::printf("alpha %-4s  recomputed f1 %.17g f2 %.17g fj %.17g  max dev %.3e  %s\n",
                alpha_tag(p.alpha).c_str(), lp.f1, lp.f2, fj.residual, dev,
                ok ? "ok" : "MISMATCH");
  }
  std::cout << (mismatches == 0 ? "verify: all points consistent\n"
                                : "verify: " + std::to_string(mismatches) + " mismatching points\n");
  return mismatches;
}

void cmd_plotdata(const std::string& front_json_path, const std::string& outdir) {
  const ParetoFront front = import_front(front_json_path);
  const auto all = front.all_points();
  if (all.empty()) throw std::runtime_error("front contains no points: " + front_json_path);

  fs::path dir(outdir);
  fs::create_directories(dir);

  const bool has_test = std::all_of(all.begin(), all.end(),
                                    [](const TradeoffPoint& p) { return p.test_metrics.has_value(); });

  auto write_table = [&](const std::string& metric, const std::string& split, auto getter) {
    const fs::path path = dir / ("plot_" + metric + "_" + split + ".csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "alpha," << metric << "\n";
    char buf[40];
    for (const auto& p : all) {
      std::snprintf(buf, sizeof buf, "%.17g", getter(p));
      out << alpha_tag(p.alpha) << ',' << buf << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
  };

  write_table("f1", "train", [](const TradeoffPoint& p) { return p.f1; });
  write_table("f2", "train", [](const TradeoffPoint& p) { return p.f2; });
  write_table("acc_gap", "train", [](const TradeoffPoint& p) { return p.metrics.acc_gap; });
  write_table("fpr_g0", "train", [](const TradeoffPoint& p) { return p.metrics.fpr_group[0]; });
  write_table("fpr_g1", "train", [](const TradeoffPoint& p) { return p.metrics.fpr_group[1]; });
  if (has_test) {
    write_table("f1", "test", [](const TradeoffPoint& p) { return *p.test_f1; });
    write_table("f2", "test", [](const TradeoffPoint& p) { return *p.test_f2; });
    write_table("acc_gap", "test",
                [](const TradeoffPoint& p) { return p.test_metrics->acc_gap; });
    write_table("fpr_g0", "test",
                [](const TradeoffPoint& p) { return p.test_metrics->fpr_group[0]; });
    write_table("fpr_g1", "test",
                [](const TradeoffPoint& p) { return p.test_metrics->fpr_group[1]; });
  }
  std::cout << "wrote plot tables for " << all.size() << " points to " << dir.string() << "\n";
}

}  // namespace fairfront

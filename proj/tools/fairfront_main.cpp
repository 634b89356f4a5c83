// fairfront: train fair binary classifiers and trace accuracy-vs-fairness
// Pareto fronts. Subcommands: synth, baseline, sweep, verify, plotdata.

#include "fairfront/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

void add_common_options(CLI::App* cmd, fairfront::RunConfig& cfg) {
  cmd->set_config("--config")->configurable(false);
  cmd->add_option("--data", cfg.data_csv, "dataset CSV (default: built-in synthetic preset)");
  cmd->add_option("--cells", cfg.cells,
                  "synthetic cell counts g0c1,g0c0,g1c1,g1c0")
      ->delimiter(',')
      ->expected(4);
  cmd->add_option("--feature-dim", cfg.feature_dim, "synthetic feature dimension");
  cmd->add_option("--sep-g0", cfg.sep_g0, "class separation for group 0");
  cmd->add_option("--sep-g1", cfg.sep_g1, "class separation for group 1");
  cmd->add_option("--noise-scale", cfg.noise_scale, "synthetic noise scale");
  cmd->add_option("--train-fraction", cfg.train_fraction, "train split fraction in (0,1)");
  cmd->add_option("--lr", cfg.learning_rate, "AdaMax learning rate");
  cmd->add_option("--beta1", cfg.beta1, "AdaMax beta1");
  cmd->add_option("--beta2", cfg.beta2, "AdaMax beta2");
  cmd->add_option("--steps", cfg.steps, "optimizer steps per solve");
  cmd->add_option("--batch-size", cfg.batch_size, "mini-batch size (0 = full batch)");
  cmd->add_option("--cba-mode", cfg.cba_mode, "normalized|literal");
  cmd->add_option("--alphas", cfg.alphas, "trade-off grid, e.g. 1.0,0.5,0.0")->delimiter(',');
  cmd->add_option("--epsilon", cfg.epsilon, "Fritz-John acceptance tolerance");
  cmd->add_flag("--warm-start,!--no-warm-start", cfg.warm_start,
                "chain solves from the previous alpha's solution");
  cmd->add_option("--seed", cfg.seed, "master seed");
  cmd->add_option("--outdir", cfg.outdir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairness/accuracy trade-off front tracer for binary classifiers"};
  app.require_subcommand(1);

  fairfront::RunConfig cfg;
  if (const char* env = std::getenv("FAIRFRONT_OUTDIR")) cfg.outdir = env;

  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset CSV");
  auto* baseline = app.add_subcommand("baseline", "train the accuracy-only baseline");
  auto* sweep = app.add_subcommand("sweep", "trace the Pareto front over the alpha grid");
  auto* verify = app.add_subcommand("verify", "recompute a stored front from its artifacts");
  auto* plotdata = app.add_subcommand("plotdata", "emit per-metric trade-off tables");
  for (auto* cmd : {synth, baseline, sweep}) add_common_options(cmd, cfg);

  std::string front_path = "out/front.json";
  std::string verify_data;
  verify->add_option("--front", front_path, "front JSON produced by sweep");
  verify->add_option("--data", verify_data, "override the dataset CSV recorded in provenance");

  std::string plot_front_path = "out/front.json";
  std::string plot_outdir = cfg.outdir;
  plotdata->add_option("--front", plot_front_path, "front JSON produced by sweep");
  plotdata->add_option("--outdir", plot_outdir, "output directory for the tables");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) fairfront::cmd_synth(cfg);
    if (baseline->parsed()) fairfront::cmd_baseline(cfg);
    if (sweep->parsed()) fairfront::cmd_sweep(cfg);
    if (verify->parsed()) return fairfront::cmd_verify(front_path, verify_data) == 0 ? 0 : 1;
    if (plotdata->parsed()) fairfront::cmd_plotdata(plot_front_path, plot_outdir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

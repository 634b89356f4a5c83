#pragma once

#include "fairfront/run_config.hpp"

#include <string>

namespace fairfront {

// CLI entry points. Each writes its artifacts under cfg.outdir together with
// a provenance.json snapshot of the resolved config, and throws on any
// precondition or I/O failure (the CLI maps that to a nonzero exit).

// Write the configured dataset as CSV plus a stats sidecar.
// -> synthetic.csv, synthetic_stats.json
void cmd_synth(const RunConfig& cfg);

// Train the accuracy-only baseline (alpha = 1) and evaluate train/test.
// -> baseline_theta.json, baseline_report.json
void cmd_baseline(const RunConfig& cfg);

// Trace the front over cfg.alphas, evaluate every point on the test split.
// -> front.csv, front.json, theta_alpha_<a>.json, report_alpha_<a>.json
void cmd_sweep(const RunConfig& cfg);

// Recompute f1, f2 and the Fritz-John residual of every stored point from
// the dataset and checkpoints; report mismatches beyond `tolerance`.
// Returns the number of mismatching points (0 = verified).
int cmd_verify(const std::string& front_json_path, const std::string& data_csv_override = "",
               double tolerance = 1e-9);

// Emit two-column (alpha, metric) tables for f1, f2, acc_gap and per-group
// FPR, for the train and (when present) test sides.
// -> plot_<metric>_<split>.csv under outdir
void cmd_plotdata(const std::string& front_json_path, const std::string& outdir);

}  // namespace fairfront

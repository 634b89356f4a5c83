#pragma once

#include "fairfront/dataset.hpp"
#include "fairfront/losses.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace fairfront {

// Resolved run configuration. Every field has a default; the resolved record
// is serialized into each run's provenance so outputs can be reproduced
// bit-identically. All randomness flows from `seed` through named sub-seeds
// (split, synth, fdcheck, batch).
struct RunConfig {
  std::string data_csv;  // empty -> use the synthetic preset below

  // synthetic preset (defaults mirror the Davidson hate-speech statistics)
  std::vector<long> cells = {8725, 302, 11895, 3861};  // g0c1,g0c0,g1c1,g1c0
  long feature_dim = 8;
  double sep_g0 = 1.2;
  double sep_g1 = 2.0;
  double noise_scale = 1.0;

  double train_fraction = 0.8;

  // optimizer
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  long steps = 2000;
  long batch_size = 0;  // 0 = full batch

  std::string cba_mode = "normalized";
  std::vector<double> alphas = {1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.0};
  double epsilon = 0.001;
  bool warm_start = true;

  std::uint64_t seed = 42;
  std::string outdir = "out";

  SynthConfig synth_config() const;
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

}  // namespace fairfront

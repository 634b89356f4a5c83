#pragma once

#include "fairfront/dataset.hpp"
#include "fairfront/linear_model.hpp"

#include <nlohmann/json.hpp>

#include <array>

namespace fairfront {

struct ConfusionCells {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;
  long count() const { return tp + fp + tn + fn; }
};

// Overall and group-conditioned accuracy, accuracy gap, and per-group false
// positive rate (fp / (fp + tn); 0 with a flag when the group has no true
// non-positive samples). Raw confusion cells are kept so any other rate can
// be recomputed downstream.
struct GroupReport {
  double acc_overall = 0.0;
  std::array<double, 2> acc_group = {0.0, 0.0};
  double acc_gap = 0.0;  // |acc_g0 - acc_g1|
  std::array<double, 2> fpr_group = {0.0, 0.0};
  std::array<ConfusionCells, 2> cells = {};
  std::array<bool, 2> fpr_undefined = {false, false};
  std::array<bool, 2> group_empty = {false, false};

  bool any_flag() const {
    return fpr_undefined[0] || fpr_undefined[1] || group_empty[0] || group_empty[1];
  }
};

GroupReport evaluate(const Dataset& d, const PredictionBatch& pred);

// Absolute train-vs-test deviations, per metric.
struct DeviationTable {
  double acc_overall = 0.0;
  std::array<double, 2> acc_group = {0.0, 0.0};
  double acc_gap = 0.0;
  std::array<double, 2> fpr_group = {0.0, 0.0};
  bool flagged = false;  // propagated from either report
};

DeviationTable compare_train_test(const GroupReport& train, const GroupReport& test);

nlohmann::json report_to_json(const GroupReport& r);
GroupReport report_from_json(const nlohmann::json& j);

}  // namespace fairfront

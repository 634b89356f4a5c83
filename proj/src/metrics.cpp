#include "fairfront/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace fairfront {

GroupReport evaluate(const Dataset& d, const PredictionBatch& pred) {
  if (pred.hard_labels.size() != d.size() || pred.probabilities.size() != d.size())
    throw std::invalid_argument("evaluate: prediction length mismatch");

  GroupReport r;
  for (Index i = 0; i < d.size(); ++i) {
    auto& c = r.cells[static_cast<std::size_t>(d.groups()[i])];
    const int truth = d.labels()[i];
    const int pred_label = pred.hard_labels[i];
    if (truth == 1)
      (pred_label == 1 ? c.tp : c.fn) += 1;
    else
      (pred_label == 1 ? c.fp : c.tn) += 1;
  }

  long correct = 0;
  for (std::size_t g = 0; g < 2; ++g) {
    const auto& c = r.cells[g];
    correct += c.tp + c.tn;
    if (c.count() == 0) {
      r.group_empty[g] = true;
      continue;
    }
    r.acc_group[g] = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.count());
    if (c.fp + c.tn == 0) {
      r.fpr_undefined[g] = true;
      r.fpr_group[g] = 0.0;
    } else {
      r.fpr_group[g] = static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
    }
  }
  r.acc_overall = static_cast<double>(correct) / static_cast<double>(d.size());
  r.acc_gap = std::abs(r.acc_group[0] - r.acc_group[1]);
  return r;
}

DeviationTable compare_train_test(const GroupReport& train, const GroupReport& test) {
  DeviationTable t;
  t.acc_overall = std::abs(train.acc_overall - test.acc_overall);
  for (std::size_t g = 0; g < 2; ++g) {
    t.acc_group[g] = std::abs(train.acc_group[g] - test.acc_group[g]);
    t.fpr_group[g] = std::abs(train.fpr_group[g] - test.fpr_group[g]);
  }
  t.acc_gap = std::abs(train.acc_gap - test.acc_gap);
  t.flagged = train.any_flag() || test.any_flag();
  return t;
}

namespace {

nlohmann::json cells_to_json(const GroupReport& r, std::size_t g) {
  const auto& c = r.cells[g];
  return {{"acc", r.acc_group[g]},
          {"fpr", r.fpr_group[g]},
          {"fpr_undefined", r.fpr_undefined[g]},
          {"empty", r.group_empty[g]},
          {"tp", c.tp},
          {"fp", c.fp},
          {"tn", c.tn},
          {"fn", c.fn}};
}

}  // namespace

nlohmann::json report_to_json(const GroupReport& r) {
  return {{"overall", r.acc_overall},
          {"per_group", {{"g0", cells_to_json(r, 0)}, {"g1", cells_to_json(r, 1)}}},
          {"gap", r.acc_gap}};
}

GroupReport report_from_json(const nlohmann::json& j) {
  GroupReport r;
  r.acc_overall = j.at("overall").get<double>();
  r.acc_gap = j.at("gap").get<double>();
  const char* keys[2] = {"g0", "g1"};
  for (std::size_t g = 0; g < 2; ++g) {
    const auto& pg = j.at("per_group").at(keys[g]);
    r.acc_group[g] = pg.at("acc").get<double>();
    r.fpr_group[g] = pg.at("fpr").get<double>();
    r.fpr_undefined[g] = pg.at("fpr_undefined").get<bool>();
    r.group_empty[g] = pg.at("empty").get<bool>();
    r.cells[g] = {pg.at("tp").get<long>(), pg.at("fp").get<long>(), pg.at("tn").get<long>(),
                  pg.at("fn").get<long>()};
  }
  return r;
}

}  // namespace fairfront

#pragma once

#include "fairfront/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fairfront {

struct Sample {
  VecXd features;
  int class_label;  // 1 = positive ("Hate")
  int group_label;  // 0 = group A, 1 = group B
};

// Immutable feature matrix with per-sample binary class and group labels.
// Rows of features() are samples; construction validates all invariants.
class Dataset {
 public:
  Dataset(MatXd features, ArrXi labels, ArrXi groups);

  Index size() const { return features_.rows(); }
  Index feature_dim() const { return features_.cols(); }

  const MatXd& features() const { return features_; }
  const ArrXi& labels() const { return labels_; }
  const ArrXi& groups() const { return groups_; }

  Sample sample(Index i) const {
    return {features_.row(i).transpose(), labels_[i], groups_[i]};
  }

  Dataset subset(const std::vector<Index>& rows) const;

 private:
  MatXd features_;
  ArrXi labels_;
  ArrXi groups_;
};

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
};

// Per-group shuffle + floor rule: floor(train_fraction * group_count) samples
// of each group go to train, the rest to test. Row order within each part
// follows the original dataset order.
std::pair<Dataset, Dataset> stratified_split(const Dataset& d, const SplitSpec& spec);

// Synthetic corpus shaped like the Davidson hate-speech statistics.
// Cell counts default to that dataset's (group, class) table. Group 0 gets a
// smaller class separation than group 1, so an accuracy-only baseline is
// measurably unfair to group 0.
struct SynthConfig {
  long n_g0_c1 = 8725;   // group 0 ("AAE"), positive class
  long n_g0_c0 = 302;    // group 0, negative class
  long n_g1_c1 = 11895;  // group 1 ("SAE"), positive class
  long n_g1_c0 = 3861;   // group 1, negative class
  Index feature_dim = 8;
  double sep_g0 = 1.2;  // class-signal separation, group 0
  double sep_g1 = 2.0;  // class-signal separation, group 1
  double noise_scale = 1.0;
  std::uint64_t seed = 0;

  long total() const { return n_g0_c1 + n_g0_c0 + n_g1_c1 + n_g1_c0; }
};

// Gaussian cells: the first feature_dim/2 dimensions carry the class signal
// (mean +sep_g for class 1, -sep_g for class 0), the remaining dimensions
// carry the group signal (mean +1 for group 0, -1 for group 1). Deterministic
// under cfg.seed.
Dataset generate_synthetic(const SynthConfig& cfg);

// CSV interchange: header `label,group,f0,...,f{F-1}`, one sample per row.
Dataset load_csv(const std::string& path);
void save_csv(const Dataset& d, const std::string& path);

struct DatasetStats {
  std::array<std::array<long, 2>, 2> cell = {};  // cell[group][class]
  long n = 0;
  long minority_count = 0;  // p
  long majority_count = 0;  // q
  std::array<long, 2> group_count = {};
  std::array<long, 2> class_count = {};
  std::array<double, 2> group_proportion = {};
  std::array<double, 2> class_proportion = {};
};

DatasetStats dataset_stats(const Dataset& d);

}  // namespace fairfront

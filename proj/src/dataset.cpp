#include "fairfront/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fairfront {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_binary(int v, const char* what) {
  if (v != 0 && v != 1) fail(std::string(what) + " must be 0 or 1");
}

}  // namespace

Dataset::Dataset(MatXd features, ArrXi labels, ArrXi groups)
    : features_(std::move(features)), labels_(std::move(labels)), groups_(std::move(groups)) {
  const Index n = features_.rows();
  if (n < 1) fail("dataset must contain at least one sample");
  if (features_.cols() < 1) fail("feature_dim must be positive");
  if (labels_.size() != n || groups_.size() != n)
    fail("labels/groups length must match sample count");
  if (!features_.allFinite()) fail("features contain non-finite values");
  for (Index i = 0; i < n; ++i) {
    check_binary(labels_[i], "class label");
    check_binary(groups_[i], "group label");
  }
}

Dataset Dataset::subset(const std::vector<Index>& rows) const {
  MatXd f(static_cast<Index>(rows.size()), feature_dim());
  ArrXi l(static_cast<Index>(rows.size()));
  ArrXi g(static_cast<Index>(rows.size()));
  for (Index i = 0; i < static_cast<Index>(rows.size()); ++i) {
    const Index r = rows[static_cast<std::size_t>(i)];
    f.row(i) = features_.row(r);
    l[i] = labels_[r];
    g[i] = groups_[r];
  }
  return Dataset(std::move(f), std::move(l), std::move(g));
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& d, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    fail("train_fraction must lie in (0,1)");

  std::array<std::vector<Index>, 2> by_group;
  for (Index i = 0; i < d.size(); ++i) by_group[static_cast<std::size_t>(d.groups()[i])].push_back(i);

  std::vector<Index> train_rows, test_rows;
  for (int g = 0; g < 2; ++g) {
    auto& idx = by_group[static_cast<std::size_t>(g)];
    if (idx.empty()) continue;
    if (idx.size() < 2) fail("group " + std::to_string(g) + " has fewer than 2 samples");
    std::mt19937_64 rng(derive_seed(spec.seed, g == 0 ? "split.g0" : "split.g1"));
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_train =
        static_cast<std::size_t>(std::floor(spec.train_fraction * static_cast<double>(idx.size())));
    train_rows.insert(train_rows.end(), idx.begin(), idx.begin() + static_cast<long>(n_train));
    test_rows.insert(test_rows.end(), idx.begin() + static_cast<long>(n_train), idx.end());
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  return {d.subset(train_rows), d.subset(test_rows)};
}

Dataset generate_synthetic(const SynthConfig& cfg) {
  if (cfg.n_g0_c1 < 0 || cfg.n_g0_c0 < 0 || cfg.n_g1_c1 < 0 || cfg.n_g1_c0 < 0)
    fail("cell counts must be non-negative");
  if (cfg.total() == 0) fail("synthetic config yields zero total samples");
  if (cfg.feature_dim < 1) fail("feature_dim must be positive");
  if (!(cfg.noise_scale > 0.0)) fail("noise_scale must be positive");
  if (cfg.sep_g0 < 0.0 || cfg.sep_g1 < 0.0) fail("class separations must be non-negative");

  const Index n = cfg.total();
  const Index f_dim = cfg.feature_dim;
  const Index class_dims = f_dim / 2;  // first half: class signal, rest: group signal

  MatXd features(n, f_dim);
  ArrXi labels(n), groups(n);
  std::mt19937_64 rng(derive_seed(cfg.seed, "synth"));
  std::normal_distribution<double> noise(0.0, 1.0);

  const long counts[2][2] = {{cfg.n_g0_c0, cfg.n_g0_c1}, {cfg.n_g1_c0, cfg.n_g1_c1}};
  Index row = 0;
  for (int g = 0; g < 2; ++g) {
    const double sep = g == 0 ? cfg.sep_g0 : cfg.sep_g1;
    const double group_mean = g == 0 ? 1.0 : -1.0;
    for (int c = 0; c < 2; ++c) {
      const double class_mean = c == 1 ? sep : -sep;
      for (long k = 0; k < counts[g][c]; ++k, ++row) {
        labels[row] = c;
        groups[row] = g;
        for (Index j = 0; j < f_dim; ++j) {
          const double mean = j < class_dims ? class_mean : group_mean;
          features(row, j) = mean + cfg.noise_scale * noise(rng);
        }
      }
    }
  }
  return Dataset(std::move(features), std::move(labels), std::move(groups));
}

namespace {

int parse_binary_field(const std::string& field, const char* what, long line) {
  if (field == "0") return 0;
  if (field == "1") return 1;
  fail(std::string(what) + " not binary at line " + std::to_string(line));
}

double parse_feature(const std::string& field, long line) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    fail("malformed feature value at line " + std::to_string(line));
  if (!std::isfinite(v)) fail("non-finite feature at line " + std::to_string(line));
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open dataset file: " + path);

  std::string line;
  if (!std::getline(in, line)) fail("empty dataset: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_fields(line);
  if (header.size() < 3 || header[0] != "label" || header[1] != "group")
    fail("bad header in " + path + ": expected label,group,f0,...");
  const Index f_dim = static_cast<Index>(header.size()) - 2;
  for (Index j = 0; j < f_dim; ++j) {
    if (header[static_cast<std::size_t>(j) + 2] != "f" + std::to_string(j))
      fail("bad header in " + path + ": expected feature column f" + std::to_string(j));
  }

  std::vector<double> feats;
  std::vector<int> labels, groups;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (static_cast<Index>(fields.size()) != f_dim + 2)
      fail("malformed row at line " + std::to_string(line_no) + ": expected " +
           std::to_string(f_dim + 2) + " fields, got " + std::to_string(fields.size()));
    labels.push_back(parse_binary_field(fields[0], "label", line_no));
    groups.push_back(parse_binary_field(fields[1], "group", line_no));
    for (Index j = 0; j < f_dim; ++j)
      feats.push_back(parse_feature(fields[static_cast<std::size_t>(j) + 2], line_no));
  }
  if (labels.empty()) fail("empty dataset: " + path);

  const Index n = static_cast<Index>(labels.size());
  MatXd features(n, f_dim);
  ArrXi l(n), g(n);
  for (Index i = 0; i < n; ++i) {
    l[i] = labels[static_cast<std::size_t>(i)];
    g[i] = groups[static_cast<std::size_t>(i)];
    for (Index j = 0; j < f_dim; ++j)
      features(i, j) = feats[static_cast<std::size_t>(i * f_dim + j)];
  }
  return Dataset(std::move(features), std::move(l), std::move(g));
}

void save_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  out << "label,group";
  for (Index j = 0; j < d.feature_dim(); ++j) out << ",f" << j;
  out << "\n";
  char buf[64];
  for (Index i = 0; i < d.size(); ++i) {
    out << d.labels()[i] << ',' << d.groups()[i];
    for (Index j = 0; j < d.feature_dim(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", d.features()(i, j));
      out << ',' << buf;
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

DatasetStats dataset_stats(const Dataset& d) {
  DatasetStats s;
  s.n = d.size();
  for (Index i = 0; i < d.size(); ++i) {
    const auto g = static_cast<std::size_t>(d.groups()[i]);
    const auto c = static_cast<std::size_t>(d.labels()[i]);
    ++s.cell[g][c];
  }
  for (int g = 0; g < 2; ++g)
    s.group_count[static_cast<std::size_t>(g)] =
        s.cell[static_cast<std::size_t>(g)][0] + s.cell[static_cast<std::size_t>(g)][1];
  for (int c = 0; c < 2; ++c)
    s.class_count[static_cast<std::size_t>(c)] =
        s.cell[0][static_cast<std::size_t>(c)] + s.cell[1][static_cast<std::size_t>(c)];
  s.minority_count = std::min(s.class_count[0], s.class_count[1]);
  s.majority_count = std::max(s.class_count[0], s.class_count[1]);
  for (int k = 0; k < 2; ++k) {
    s.group_proportion[static_cast<std::size_t>(k)] =
        static_cast<double>(s.group_count[static_cast<std::size_t>(k)]) / static_cast<double>(s.n);
    s.class_proportion[static_cast<std::size_t>(k)] =
        static_cast<double>(s.class_count[static_cast<std::size_t>(k)]) / static_cast<double>(s.n);
  }
  return s;
}

}  // namespace fairfront

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>

namespace fairfront {

using Eigen::Index;

// Dense column types, templated on scalar. Everything downstream works in
// double; the aliases keep kernel signatures generic.
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Arr = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

using VecXd = Vec<double>;
using MatXd = Mat<double>;
using ArrXd = Arr<double>;
using ArrXi = Arr<int>;

// Predicted probabilities are clamped into [kProbEps, 1 - kProbEps] so that
// log(p) and log(1-p) stay finite everywhere downstream.
inline constexpr double kProbEps = 1e-7;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Named sub-stream of a master seed. All randomness in a run flows from one
// seed through these streams so components stay independently reproducible.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stream) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (char c : stream) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 1099511628211ull;
  }
  return splitmix64(master ^ h);
}

}  // namespace fairfront

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tlsel/types.hpp"

namespace tlsel {

template <typename Derived>
double mean(const Eigen::MatrixBase<Derived>& x) {
  if (x.size() == 0) throw std::invalid_argument("mean of empty vector");
  return x.template cast<double>().mean();
}

// Population standard deviation (divide by n, not n-1).
template <typename Derived>
double stddev_pop(const Eigen::MatrixBase<Derived>& x) {
  if (x.size() == 0) throw std::invalid_argument("stddev of empty vector");
  const auto xd = x.template cast<double>().eval();
  const double mu = xd.mean();
  return std::sqrt((xd.array() - mu).square().mean());
}

// Linear-interpolation quantile at index (n-1)*p over a copy of the data.
inline double quantile(std::vector<double> v, double p) {
  if (v.empty()) throw std::invalid_argument("quantile of empty vector");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile p outside [0,1]");
  std::sort(v.begin(), v.end());
  const double idx = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(idx);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double w = idx - static_cast<double>(lo);
  return v[lo] * (1.0 - w) + v[hi] * w;
}

inline double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

}  // namespace tlsel

/*
 * (C) Copyright 2026 the crosspoint authors.
 * Licensed under the Apache License, Version 2.0; see
 * http://www.apache.org/licenses/LICENSE-2.0 for the full text.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace crosspoint {

inline double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Unbiased sample standard deviation.
inline double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline double standard_error(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  return stddev(v) / std::sqrt(static_cast<double>(v.size()));
}

// Midranks with a numeric tie tolerance: values closer than tie_tol are
// treated as tied and share the average of their ranks.
inline std::vector<double> midranks(const std::vector<double>& v, double tie_tol = 0.0) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] - v[order[i]] <= tie_tol) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;  // average 1-based rank
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return 0.0;
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;  // a constant series carries no trend
  return sxy / std::sqrt(sxx * syy);
}

// Spearman rank correlation with midranks for ties. tie_tol lets callers
// treat values that agree to numerical precision as tied instead of letting
// floating-point dust impose an arbitrary order.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y,
                       double tie_tol = 0.0) {
  return pearson(midranks(x, tie_tol), midranks(y, tie_tol));
}

}  // namespace crosspoint

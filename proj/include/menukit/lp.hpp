// SPDX-License-Identifier: MIT
// Dense tableau simplex for desk-scale linear programs of the form
// max c.x subject to A x <= b, x >= 0, with b >= 0 so the all-slack
// basis is feasible from the start.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "menukit/common.hpp"

namespace menukit {

inline constexpr double kLpPivotTol = 1e-9;
inline constexpr double kLpCostTol = 1e-9;

struct SimplexResult {
  std::string status;  // "optimal", "unbounded", or "iteration_limit"
  double value = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
};

// Entering rule: largest cost reduction, switching to Bland's rule
// after a long degenerate run so cycling terminates. Leaving rule:
// tightest ratio, ties by the smallest basis index.
[[nodiscard]] inline SimplexResult simplex_max(
    const std::vector<double>& c, const std::vector<std::vector<double>>& a,
    const std::vector<double>& b) {
  const std::size_t n = c.size();
  const std::size_t m = a.size();
  require(b.size() == m, "simplex_max: one bound per row required");
  for (const std::vector<double>& row : a)
    require(row.size() == n, "simplex_max: row width must match c");
  for (const double bi : b)
    require(std::isfinite(bi) && bi >= 0.0,
            "simplex_max: bounds must be finite and nonnegative");
  for (const double ci : c)
    require(std::isfinite(ci), "simplex_max: costs must be finite");

  const std::size_t cols = n + m + 1;
  std::vector<double> t((m + 1) * cols, 0.0);
  const auto at = [&](std::size_t i, std::size_t j) -> double& {
    return t[i * cols + j];
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = a[i][j];
    at(i, n + i) = 1.0;
    at(i, cols - 1) = b[i];
  }
  for (std::size_t j = 0; j < n; ++j) at(m, j) = -c[j];

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  SimplexResult res;
  constexpr std::size_t kMaxIterations = 200000;
  constexpr std::size_t kDegenerateLimit = 2000;
  std::size_t degenerate_run = 0;

  while (true) {
    if (res.iterations >= kMaxIterations) {
      res.status = "iteration_limit";
      break;
    }

    std::size_t enter = cols;
    if (degenerate_run < kDegenerateLimit) {
      double best = -kLpCostTol;
      for (std::size_t j = 0; j + 1 < cols; ++j)
        if (at(m, j) < best) {
          best = at(m, j);
          enter = j;
        }
    } else {
      for (std::size_t j = 0; j + 1 < cols; ++j)
        if (at(m, j) < -kLpCostTol) {
          enter = j;
          break;
        }
    }
    if (enter == cols) {
      res.status = "optimal";
      break;
    }

    // Ratio test in two passes. Accumulated roundoff can push a basic
    // value slightly negative; clamping it to zero turns what would be
    // a backward step into a degenerate pivot. Among near-tied ratios
    // the largest pivot element wins for stability, except under the
    // anti-cycling rule where the smallest basis index must win.
    double min_ratio = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double aij = at(i, enter);
      if (aij <= kLpPivotTol) continue;
      const double ratio = std::max(at(i, cols - 1), 0.0) / aij;
      if (min_ratio < 0.0 || ratio < min_ratio) min_ratio = ratio;
    }
    if (min_ratio < 0.0) {
      res.status = "unbounded";
      break;
    }
    const double ratio_window = min_ratio * 1e-9 + 1e-15;
    std::size_t leave = m;
    for (std::size_t i = 0; i < m; ++i) {
      const double aij = at(i, enter);
      if (aij <= kLpPivotTol) continue;
      const double ratio = std::max(at(i, cols - 1), 0.0) / aij;
      if (ratio > min_ratio + ratio_window) continue;
      if (leave == m) {
        leave = i;
        continue;
      }
      const bool better = degenerate_run < kDegenerateLimit
                              ? aij > at(leave, enter)
                              : basis[i] < basis[leave];
      if (better) leave = i;
    }
    degenerate_run = min_ratio <= 1e-12 ? degenerate_run + 1 : 0;

    const double pivot = at(leave, enter);
    for (std::size_t j = 0; j < cols; ++j) at(leave, j) /= pivot;
    at(leave, enter) = 1.0;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = at(i, enter);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        at(i, j) -= factor * at(leave, j);
      at(i, enter) = 0.0;
    }
    basis[leave] = enter;
    for (std::size_t i = 0; i < m; ++i)
      if (at(i, cols - 1) < 0.0 && at(i, cols - 1) > -1e-9)
        at(i, cols - 1) = 0.0;
    ++res.iterations;
  }

  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = at(i, cols - 1);
  res.value = at(m, cols - 1);
  return res;
}

}  // namespace menukit

// SPDX-License-Identifier: MIT
// Menu compression by rounding: prices floored onto coarse grids with a
// compensating discount, boundary-menu pruning, and the allocation and
// geometric-grid variants.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "menukit/common.hpp"
#include "menukit/model.hpp"

namespace menukit {

// ==== grid flooring ========================================================

// Largest multiple of step that does not exceed t. Values within a
// relative hair of a multiple count as on the grid, so a step like
// 0.1 * 0.1 still treats 0.5 as its own floor; the result is clamped
// to t so the floor property survives the tolerance.
[[nodiscard]] inline double floor_to_multiple(double t, double step) {
  require(step > 0.0 && std::isfinite(step),
          "floor_to_multiple: step must be positive");
  require(t >= 0.0 && std::isfinite(t),
          "floor_to_multiple: value must be nonnegative");
  const double guard = 1e-12 * (t + step);
  double k = std::floor(t / step);
  while ((k + 1.0) * step <= t + guard) k += 1.0;
  while (k > 0.0 && k * step > t + guard) k -= 1.0;
  return std::min(k * step, t);
}

// ==== price rounding =======================================================

// Prices floored to multiples of step; allocations unchanged. No
// discount, so revenue can drop by more than the grid pitch: a buyer
// who switches to a cheaper entry loses the gap between price levels.
[[nodiscard]] inline Menu round_prices_only(const Menu& m, double step) {
  std::vector<MenuEntry> es;
  es.reserve(m.entries().size());
  for (const MenuEntry& e : m.entries())
    es.push_back({e.q1, e.q2, floor_to_multiple(e.t, step)});
  return Menu(std::move(es));
}

// Prices floored to the eps^2 grid and discounted by (1 - eps), which
// keeps every buyer on an entry that pays at least (1 - eps) times the
// old price minus eps. Against any type distribution on the unit
// square, the new revenue is at least (1 - eps) * old - eps.
[[nodiscard]] inline Menu nudge_round_additive(const Menu& m, double eps) {
  require(eps > 0.0 && eps < 1.0, "nudge_round_additive: eps outside (0, 1)");
  for (const MenuEntry& e : m.entries())
    require(e.t <= 1.0 + 1e-9, "nudge_round_additive: prices must be in [0, 1]");
  std::vector<MenuEntry> es;
  es.reserve(m.entries().size());
  for (const MenuEntry& e : m.entries())
    es.push_back({e.q1, e.q2,
                  (1.0 - eps) * floor_to_multiple(e.t, eps * eps)});
  return Menu(std::move(es));
}

// Allocations floored to the eps grid first, then the price stage above.
// Only the size bound is guaranteed; the extra revenue loss from moving
// allocations is reported by callers empirically.
[[nodiscard]] inline Menu nudge_round_full(const Menu& m, double eps) {
  require(eps > 0.0 && eps < 1.0, "nudge_round_full: eps outside (0, 1)");
  std::vector<MenuEntry> es;
  es.reserve(m.entries().size());
  for (const MenuEntry& e : m.entries())
    es.push_back({floor_to_multiple(e.q1, eps), floor_to_multiple(e.q2, eps),
                  e.t});
  return nudge_round_additive(Menu(std::move(es)), eps);
}

// ==== boundary pruning =====================================================

struct PruneResult {
  Menu menu;
  bool applied = false;  // false: some entry lies strictly inside (0, 1)^2
};

// For menus whose entries all sit on the boundary of the allocation
// square: per price level and boundary side, only the entry with the
// largest free coordinate is kept. A dropped entry costs the same and
// allocates less, so no buyer loses utility and revenue is unchanged.
// The result has at most four entries per distinct price level.
[[nodiscard]] inline PruneResult boundary_prune(const Menu& m) {
  constexpr double kEdgeTol = 1e-12;
  const auto on_edge = [](double q) {
    return q <= kEdgeTol || q >= 1.0 - kEdgeTol;
  };
  for (const MenuEntry& e : m.entries())
    if (!on_edge(e.q1) && !on_edge(e.q2)) return {m, false};

  // side 0: q1 = 1, side 1: q1 = 0 (free coordinate q2);
  // side 2: q2 = 1, side 3: q2 = 0 (free coordinate q1).
  std::map<std::pair<int, double>, std::size_t> winner;
  const std::vector<MenuEntry>& es = m.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    const MenuEntry& e = es[i];
    int side;
    double free_coord;
    if (e.q1 >= 1.0 - kEdgeTol) {
      side = 0;
      free_coord = e.q2;
    } else if (e.q1 <= kEdgeTol) {
      side = 1;
      free_coord = e.q2;
    } else if (e.q2 >= 1.0 - kEdgeTol) {
      side = 2;
      free_coord = e.q1;
    } else {
      side = 3;
      free_coord = e.q1;
    }
    const auto key = std::make_pair(side, e.t);
    const auto it = winner.find(key);
    if (it == winner.end()) {
      winner.emplace(key, i);
      continue;
    }
    const MenuEntry& cur = es[it->second];
    const double cur_free = side <= 1 ? cur.q2 : cur.q1;
    if (free_coord > cur_free) it->second = i;
  }

  std::vector<bool> keep(es.size(), false);
  for (const auto& [key, index] : winner) keep[index] = true;
  std::vector<MenuEntry> pruned;
  for (std::size_t i = 0; i < es.size(); ++i)
    if (keep[i]) pruned.push_back(es[i]);
  return {Menu(std::move(pruned)), true};
}

// ==== geometric price grid =================================================

// Price grid (1 + eps^2)^k for k = -1 .. floor(log(cap) / log(1 + eps^2)),
// ascending; at most ceil(log(cap) / log(1 + eps^2)) + 2 points.
[[nodiscard]] inline std::vector<double> geometric_price_grid(double eps,
                                                              double cap) {
  require(eps > 0.0 && eps < 1.0, "geometric_price_grid: eps outside (0, 1)");
  require(cap > 1.0 && std::isfinite(cap),
          "geometric_price_grid: cap must exceed one");
  const double ratio = 1.0 + eps * eps;
  double kmax = std::floor(std::log(cap) / std::log(ratio));
  while (std::pow(ratio, kmax + 1.0) <= cap) kmax += 1.0;
  while (kmax >= 0.0 && std::pow(ratio, kmax) > cap) kmax -= 1.0;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(kmax) + 2);
  for (double k = -1.0; k <= kmax; k += 1.0) grid.push_back(std::pow(ratio, k));
  return grid;
}

// Prices floored onto the geometric grid, prices below the smallest
// grid point falling to zero, then discounted by (1 - eps). Suited to
// price ranges [1, cap]; only the grid-size bound is a guarantee.
[[nodiscard]] inline Menu nudge_round_multiplicative(const Menu& m, double eps,
                                                     double cap) {
  require(eps > 0.0 && eps < 1.0,
          "nudge_round_multiplicative: eps outside (0, 1)");
  const std::vector<double> grid = geometric_price_grid(eps, cap);
  for (const MenuEntry& e : m.entries())
    require(e.t <= cap * (1.0 + 1e-12),
            "nudge_round_multiplicative: prices must be in [0, cap]");
  std::vector<MenuEntry> es;
  es.reserve(m.entries().size());
  for (const MenuEntry& e : m.entries()) {
    const auto it = std::upper_bound(grid.begin(), grid.end(), e.t);
    const double snapped = it == grid.begin() ? 0.0 : *(it - 1);
    es.push_back({e.q1, e.q2, (1.0 - eps) * snapped});
  }
  return Menu(std::move(es));
}

}  // namespace menukit

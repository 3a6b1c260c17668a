// SPDX-License-Identifier: MIT
// Ground-truth references: revenue-optimal mechanisms for discretized
// type spaces from a linear program, exact posted-price baselines, and
// a multi-start local search over small menus.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "menukit/common.hpp"
#include "menukit/dist.hpp"
#include "menukit/lp.hpp"
#include "menukit/model.hpp"
#include "menukit/poly.hpp"
#include "menukit/revenue.hpp"
#include "menukit/rng.hpp"

namespace menukit {

// ==== finite-type mechanisms ===============================================

struct GridMechanism {
  std::vector<double> v1, v2, mass;  // one slot per type
  std::vector<double> q1, q2, t;

  [[nodiscard]] std::size_t types() const { return v1.size(); }

  [[nodiscard]] double revenue() const {
    double r = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) r += mass[k] * t[k];
    return r;
  }
};

struct MechanismAudit {
  double max_bound_violation = 0.0;  // allocation outside [0, 1]
  double max_ir_violation = 0.0;     // negative utility at a type
  double max_ic_violation = 0.0;     // gain from reporting another type
};

[[nodiscard]] inline MechanismAudit audit_mechanism(const GridMechanism& g) {
  MechanismAudit a;
  const std::size_t n = g.types();
  for (std::size_t k = 0; k < n; ++k) {
    a.max_bound_violation = std::max(
        {a.max_bound_violation, -g.q1[k], g.q1[k] - 1.0, -g.q2[k],
         g.q2[k] - 1.0});
    const double own = g.q1[k] * g.v1[k] + g.q2[k] * g.v2[k] - g.t[k];
    a.max_ir_violation = std::max(a.max_ir_violation, -own);
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k) continue;
      const double other = g.q1[l] * g.v1[k] + g.q2[l] * g.v2[k] - g.t[l];
      a.max_ic_violation = std::max(a.max_ic_violation, other - own);
    }
  }
  return a;
}

struct LpMechanismResult {
  GridMechanism mechanism;
  double value = 0.0;
  std::size_t cut_rounds = 0;
  std::size_t cuts_final = 0;
  std::size_t iterations = 0;  // summed simplex pivots
  MechanismAudit audit;
};

// Revenue-optimal truthful mechanism for a finite type distribution,
// restricted to nonnegative payments. Deviation constraints are not
// materialized up front: the LP is re-solved with the most violated
// ones added each round, and stale slack cuts are dropped to keep the
// tableau at desk scale.
[[nodiscard]] inline LpMechanismResult opt_mechanism_lp(
    const std::vector<double>& v1, const std::vector<double>& v2,
    const std::vector<double>& mass) {
  const std::size_t n = v1.size();
  require(n >= 1 && v2.size() == n && mass.size() == n,
          "opt_mechanism_lp: one value pair and mass per type");
  for (std::size_t k = 0; k < n; ++k)
    require(std::isfinite(v1[k]) && std::isfinite(v2[k]) && v1[k] >= 0.0 &&
                v2[k] >= 0.0 && std::isfinite(mass[k]) && mass[k] >= 0.0,
            "opt_mechanism_lp: values and masses must be nonnegative");

  // Variable layout: q1 of type k at k, q2 at n + k, payment at 2n + k.
  const std::size_t cols = 3 * n;
  std::vector<double> c(cols, 0.0);
  for (std::size_t k = 0; k < n; ++k) c[2 * n + k] = mass[k];

  std::vector<std::vector<double>> rows;
  std::vector<double> b;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> r1(cols, 0.0), r2(cols, 0.0), ir(cols, 0.0);
    r1[k] = 1.0;
    r2[n + k] = 1.0;
    ir[2 * n + k] = 1.0;
    ir[k] = -v1[k];
    ir[n + k] = -v2[k];
    rows.push_back(std::move(r1));
    b.push_back(1.0);
    rows.push_back(std::move(r2));
    b.push_back(1.0);
    rows.push_back(std::move(ir));
    b.push_back(0.0);
  }
  const std::size_t base_rows = rows.size();

  struct Cut {
    std::pair<std::size_t, std::size_t> id;  // (true type, reported type)
    std::size_t round_added = 0;
  };
  std::vector<Cut> cuts;
  std::set<std::pair<std::size_t, std::size_t>> active;
  const auto cut_row = [&](std::size_t k, std::size_t l) {
    std::vector<double> r(cols, 0.0);
    r[l] += v1[k];
    r[n + l] += v2[k];
    r[2 * n + l] -= 1.0;
    r[k] -= v1[k];
    r[n + k] -= v2[k];
    r[2 * n + k] += 1.0;
    return r;
  };

  LpMechanismResult out;
  constexpr std::size_t kMaxRounds = 60;
  constexpr std::size_t kCutsPerRound = 300;
  std::vector<double> x;
  for (std::size_t round = 1; round <= kMaxRounds; ++round) {
    out.cut_rounds = round;
    const SimplexResult res = simplex_max(c, rows, b);
    if (res.status != "optimal")
      throw internal_error("opt_mechanism_lp: simplex returned " + res.status);
    out.iterations += res.iterations;
    x = res.x;
    out.value = res.value;

    // Most violated deviation constraints at the current solution.
    struct Violation {
      double amount;
      std::size_t k, l;
    };
    std::vector<Violation> viol;
    for (std::size_t k = 0; k < n; ++k) {
      const double own = x[k] * v1[k] + x[n + k] * v2[k] - x[2 * n + k];
      for (std::size_t l = 0; l < n; ++l) {
        if (l == k || active.count({k, l})) continue;
        const double other = x[l] * v1[k] + x[n + l] * v2[k] - x[2 * n + l];
        if (other - own > 1e-9) viol.push_back({other - own, k, l});
      }
    }
    if (viol.empty()) break;
    if (round == kMaxRounds)
      throw internal_error("opt_mechanism_lp: deviation cuts did not settle");

    // Drop cuts that have stayed slack since before the last round.
    std::size_t w = 0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const std::size_t row_index = base_rows + i;
      double lhs = 0.0;
      for (std::size_t j = 0; j < cols; ++j) lhs += rows[row_index][j] * x[j];
      const bool stale = round > cuts[i].round_added + 2 && lhs < -1e-6;
      if (stale) {
        active.erase(cuts[i].id);
        continue;
      }
      rows[base_rows + w] = rows[row_index];
      cuts[w] = cuts[i];
      ++w;
    }
    rows.resize(base_rows + w);
    b.resize(base_rows + w);
    cuts.resize(w);

    std::sort(viol.begin(), viol.end(), [](const Violation& p,
                                           const Violation& q) {
      if (p.amount != q.amount) return p.amount > q.amount;
      return std::make_pair(p.k, p.l) < std::make_pair(q.k, q.l);
    });
    const std::size_t take = std::min(viol.size(), kCutsPerRound);
    for (std::size_t i = 0; i < take; ++i) {
      rows.push_back(cut_row(viol[i].k, viol[i].l));
      b.push_back(0.0);
      cuts.push_back({{viol[i].k, viol[i].l}, round});
      active.insert({viol[i].k, viol[i].l});
    }
  }
  out.cuts_final = cuts.size();

  GridMechanism& g = out.mechanism;
  g.v1 = v1;
  g.v2 = v2;
  g.mass = mass;
  g.q1.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
  g.q2.assign(x.begin() + static_cast<std::ptrdiff_t>(n),
              x.begin() + static_cast<std::ptrdiff_t>(2 * n));
  g.t.assign(x.begin() + static_cast<std::ptrdiff_t>(2 * n), x.end());
  out.audit = audit_mechanism(g);
  return out;
}

// ==== grid discretization ==================================================

// Down-rounded grid: n points lo + i (hi - lo) / n for i < n, the mass
// of each cell taken from the CDF with the top cell closed.
[[nodiscard]] inline std::vector<double> grid_points(const Marginal& m,
                                                     std::size_t n) {
  require(n >= 1, "grid_points: need at least one point");
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i)
    p[i] = m.lo() + (m.hi() - m.lo()) * static_cast<double>(i) /
                        static_cast<double>(n);
  return p;
}

[[nodiscard]] inline std::vector<double> grid_masses(const Marginal& m,
                                                     std::size_t n) {
  const std::vector<double> p = grid_points(m, n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double next = i + 1 < n ? p[i + 1] : m.hi();
    w[i] = (i + 1 < n ? m.cdf(next) : 1.0) - m.cdf(p[i]);
  }
  return w;
}

struct GridLpResult {
  LpMechanismResult lp;
  double step = 0.0;         // larger of the two grid pitches
  double upper_bound = 0.0;  // lp value plus the discretization slack
};

// Optimal mechanism for the product distribution restricted to the
// down-rounded n x n grid. Rounding a buyer's values down to the grid
// moves any menu's payments by at most one pitch per good, so the grid
// optimum plus twice the pitch bounds the continuous optimum.
[[nodiscard]] inline GridLpResult opt_grid_lp(const ProductDistribution& d,
                                              std::size_t n_grid) {
  require(n_grid >= 1 && n_grid <= 20, "opt_grid_lp: n_grid outside [1, 20]");
  const std::vector<double> p1 = grid_points(d.m1, n_grid);
  const std::vector<double> p2 = grid_points(d.m2, n_grid);
  const std::vector<double> w1 = grid_masses(d.m1, n_grid);
  const std::vector<double> w2 = grid_masses(d.m2, n_grid);
  std::vector<double> v1, v2, mass;
  v1.reserve(n_grid * n_grid);
  for (std::size_t i = 0; i < n_grid; ++i)
    for (std::size_t j = 0; j < n_grid; ++j) {
      v1.push_back(p1[i]);
      v2.push_back(p2[j]);
      mass.push_back(w1[i] * w2[j]);
    }
  GridLpResult out;
  out.lp = opt_mechanism_lp(v1, v2, mass);
  const double h1 = (d.m1.hi() - d.m1.lo()) / static_cast<double>(n_grid);
  const double h2 = (d.m2.hi() - d.m2.lo()) / static_cast<double>(n_grid);
  out.step = std::max(h1, h2);
  out.upper_bound = out.lp.value + 2.0 * out.step;
  return out;
}

[[nodiscard]] inline double opt_upper_bound(const ProductDistribution& d,
                                            std::size_t n_grid) {
  return opt_grid_lp(d, n_grid).upper_bound;
}

// Menu restricted to the same grid: each grid type picks its favorite
// entry. Always feasible for the LP above, so its revenue is a lower
// bound on the LP value.
[[nodiscard]] inline GridMechanism menu_to_grid_mechanism(
    const Menu& m, const ProductDistribution& d, std::size_t n_grid) {
  const std::vector<double> p1 = grid_points(d.m1, n_grid);
  const std::vector<double> p2 = grid_points(d.m2, n_grid);
  const std::vector<double> w1 = grid_masses(d.m1, n_grid);
  const std::vector<double> w2 = grid_masses(d.m2, n_grid);
  GridMechanism g;
  for (std::size_t i = 0; i < n_grid; ++i)
    for (std::size_t j = 0; j < n_grid; ++j) {
      const Choice ch = best_response(m, {p1[i], p2[j]});
      g.v1.push_back(p1[i]);
      g.v2.push_back(p2[j]);
      g.mass.push_back(w1[i] * w2[j]);
      g.q1.push_back(ch.q1);
      g.q2.push_back(ch.q2);
      g.t.push_back(ch.payment);
    }
  return g;
}

// ==== posted-price baselines ===============================================

// P(v1 + v2 >= p), exactly, from the polynomial marginals: the mass
// below the diagonal is integrated in closed form piecewise.
[[nodiscard]] inline double bundle_tail_mass(const ProductDistribution& d,
                                             double p) {
  const Marginal& m1 = d.m1;
  const Marginal& m2 = d.m2;
  if (p <= m1.lo() + m2.lo()) return 1.0;
  if (p >= m1.hi() + m2.hi()) return 0.0;

  double below = 0.0;
  // Columns whose whole value range lies under the diagonal.
  below += m1.cdf(p - m2.hi());
  // Columns where the diagonal cuts through the second good's support:
  // integrate density(x) * F2(p - x) in closed form.
  const double a = std::max(m1.lo(), p - m2.hi());
  const double bnd = std::min(m1.hi(), p - m2.lo());
  if (bnd > a) {
    const Poly cdf2 = m2.density().antiderivative();
    const Poly f2_of_diag =
        cdf2.compose_linear(p, -1.0) + Poly({-cdf2(m2.lo())});
    const Poly integrand = m1.density() * f2_of_diag;
    below += integrand.integral(a, bnd);
  }
  return 1.0 - below;
}

struct Baselines {
  double srev = 0.0;  // posted price per good, sold separately
  double brev = 0.0;  // best single price for the whole bundle
  double price1 = 0.0;
  double price2 = 0.0;
  double bundle_price = 0.0;
};

[[nodiscard]] inline Baselines baselines(const ProductDistribution& d) {
  Baselines out;
  const MyersonResult r1 = myerson_price(d.m1);
  const MyersonResult r2 = myerson_price(d.m2);
  out.price1 = r1.price;
  out.price2 = r2.price;
  out.srev = r1.revenue + r2.revenue;

  // Dense scan of p * P(v1 + v2 >= p), then golden-section refinement
  // of every local-max bracket; ties resolve to the lower price.
  const auto rev = [&](double p) { return p * bundle_tail_mass(d, p); };
  const double lo = d.m1.lo() + d.m2.lo();
  const double hi = d.m1.hi() + d.m2.hi();
  const int n = 2048;
  std::vector<double> val(n + 1);
  for (int i = 0; i <= n; ++i)
    val[i] = rev(lo + (hi - lo) * static_cast<double>(i) / n);
  double best_p = lo, best_v = val[0];
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 0; i <= n; ++i) {
    if (i > 0 && i < n && (val[i] < val[i - 1] || val[i] < val[i + 1]))
      continue;
    double a = lo + (hi - lo) * static_cast<double>(std::max(0, i - 1)) / n;
    double bb = lo + (hi - lo) * static_cast<double>(std::min(n, i + 1)) / n;
    double x1 = bb - golden * (bb - a), x2 = a + golden * (bb - a);
    double f1 = rev(x1), f2 = rev(x2);
    for (int it = 0; it < 120; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + golden * (bb - a);
        f2 = rev(x2);
      } else {
        bb = x2;
        x2 = x1;
        f2 = f1;
        x1 = bb - golden * (bb - a);
        f1 = rev(x1);
      }
    }
    const double p = 0.5 * (a + bb), v = rev(p);
    if (v > best_v + 1e-12 || (v >= best_v - 1e-12 && p < best_p)) {
      best_v = v;
      best_p = p;
    }
  }
  out.bundle_price = best_p;
  out.brev = best_v;
  return out;
}

// ==== menu local search ====================================================

// Best menu of at most size_budget outcomes found by multi-start
// coordinate descent over entry parameters, deterministic in the seed.
// Starts cover the posted-price baselines, random menus, and any warm
// starts the caller passes in.
[[nodiscard]] inline Menu opt_menu_search(const ProductDistribution& d,
                                          std::size_t size_budget,
                                          std::size_t restarts,
                                          std::uint64_t seed,
                                          const std::vector<Menu>& warm = {}) {
  require(size_budget >= 1, "opt_menu_search: size budget must be >= 1");
  const std::size_t slots = size_budget - 1;
  if (slots == 0) return Menu();

  const double t_cap = d.m1.hi() + d.m2.hi();
  const auto score = [&](const std::vector<MenuEntry>& es) {
    return revenue_exact(Menu(es), d).revenue;
  };

  const Baselines base = baselines(d);
  std::vector<std::vector<MenuEntry>> starts;
  const auto pad = [&](std::vector<MenuEntry> es) {
    while (es.size() < slots) es.push_back({1.0, 1.0, base.bundle_price});
    es.resize(slots);
    starts.push_back(std::move(es));
  };
  pad({});
  pad({{1.0, 0.0, base.price1}, {0.0, 1.0, base.price2}});
  pad({{1.0, 0.0, base.price1}});
  pad({{0.0, 1.0, base.price2}});
  for (const Menu& w : warm) pad(w.entries());
  for (std::size_t r = 0; r < restarts; ++r) {
    SplitMix64 rng = SplitMix64::substream(seed, r);
    std::vector<MenuEntry> es;
    for (std::size_t i = 0; i < slots; ++i)
      es.push_back({rng.next_unit(), rng.next_unit(),
                    rng.next_unit() * t_cap});
    starts.push_back(std::move(es));
  }

  std::vector<MenuEntry> best;
  double best_v = -1.0;
  for (const std::vector<MenuEntry>& start : starts) {
    std::vector<MenuEntry> cur = start;
    double cur_v = score(cur);
    for (double step = 0.2; step >= 1e-7; step *= 0.5) {
      bool improved = true;
      for (int pass = 0; pass < 200 && improved; ++pass) {
        improved = false;
        for (std::size_t i = 0; i < cur.size(); ++i) {
          for (int coord = 0; coord < 3; ++coord) {
            for (const double dir : {step, -step}) {
              std::vector<MenuEntry> trial = cur;
              MenuEntry& e = trial[i];
              if (coord == 0)
                e.q1 = std::clamp(e.q1 + dir, 0.0, 1.0);
              else if (coord == 1)
                e.q2 = std::clamp(e.q2 + dir, 0.0, 1.0);
              else
                e.t = std::clamp(e.t + dir, 0.0, t_cap);
              const double v = score(trial);
              if (v > cur_v + 1e-13) {
                cur = std::move(trial);
                cur_v = v;
                improved = true;
              }
            }
          }
        }
      }
    }
    if (cur_v > best_v) {
      best_v = cur_v;
      best = cur;
    }
  }

  // Entries indistinguishable from the null outcome add nothing.
  std::vector<MenuEntry> kept;
  for (const MenuEntry& e : best)
    if (e.q1 != 0.0 || e.q2 != 0.0 || e.t != 0.0) kept.push_back(e);
  return Menu(std::move(kept));
}

}  // namespace menukit

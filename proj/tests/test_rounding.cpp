// SPDX-License-Identifier: MIT
// Tests for grid flooring, price rounding with discount, boundary
// pruning, and the geometric price grid.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

#include "menukit/dist.hpp"
#include "menukit/revenue.hpp"
#include "menukit/rng.hpp"
#include "menukit/rounding.hpp"

using namespace menukit;

namespace {

Menu random_menu(SplitMix64& rng, std::size_t entries) {
  std::vector<MenuEntry> es;
  for (std::size_t i = 0; i < entries; ++i)
    es.push_back({rng.next_unit(), rng.next_unit(), rng.next_unit()});
  return Menu(std::move(es));
}

std::size_t distinct_prices(const Menu& m) {
  std::set<double> prices;
  for (const MenuEntry& e : m.entries()) prices.insert(e.t);
  return prices.size();
}

}  // namespace

TEST_CASE("floor to multiple") {
  CHECK(floor_to_multiple(0.567, 0.01) == Catch::Approx(0.56).margin(1e-15));
  CHECK(floor_to_multiple(3.7, 0.5) == Catch::Approx(3.5).margin(1e-12));
  CHECK(floor_to_multiple(0.0, 0.25) == 0.0);

  // Grid points map to themselves even when t / step rounds badly.
  CHECK(floor_to_multiple(0.5, 0.01) == 0.5);
  CHECK(floor_to_multiple(1.0, 0.01) == 1.0);
  CHECK(floor_to_multiple(0.07, 0.07) == 0.07);

  SplitMix64 rng(5150u);
  for (int i = 0; i < 2000; ++i) {
    const double t = 2.0 * rng.next_unit();
    const double step = 1e-3 + rng.next_unit();
    const double r = floor_to_multiple(t, step);
    CHECK(r <= t);
    CHECK(r + step > t - step * 1e-12);
  }

  CHECK_THROWS_AS(floor_to_multiple(1.0, 0.0), precondition_error);
  CHECK_THROWS_AS(floor_to_multiple(-0.5, 0.1), precondition_error);
}

TEST_CASE("additive rounding examples") {
  const Menu bundle({{1.0, 1.0, 0.5}});
  const Menu r1 = nudge_round_additive(bundle, 0.1);
  REQUIRE(r1.entries().size() == 1);
  CHECK(r1.entries()[0].q1 == 1.0);
  CHECK(r1.entries()[0].q2 == 1.0);
  CHECK(r1.entries()[0].t == Catch::Approx(0.45).margin(1e-15));

  const Menu single({{1.0, 0.0, 0.567}});
  const Menu r2 = nudge_round_additive(single, 0.1);
  CHECK(r2.entries()[0].t == Catch::Approx(0.504).margin(1e-15));

  // Worked guarantee check under the uniform square.
  const ProductDistribution u2 = uniform_squared();
  const double before = revenue_exact(bundle, u2).revenue;
  const double after = revenue_exact(r1, u2).revenue;
  CHECK(before == Catch::Approx(0.4375).margin(1e-12));
  CHECK(after == Catch::Approx(0.45 * (1.0 - 0.45 * 0.45 / 2.0)).margin(1e-12));
  CHECK(after >= 0.9 * before - 0.1);

  CHECK_THROWS_AS(nudge_round_additive(bundle, 0.0), precondition_error);
  CHECK_THROWS_AS(nudge_round_additive(bundle, 1.0), precondition_error);
  CHECK_THROWS_AS(nudge_round_additive(Menu({{1.0, 1.0, 1.2}}), 0.1),
                  precondition_error);
}

TEST_CASE("additive rounding guarantee on random menus") {
  const ProductDistribution dists[] = {uniform_squared(), beta12_squared()};
  SplitMix64 rng(424242u);
  for (int i = 0; i < 25; ++i) {
    const Menu m = random_menu(rng, 1 + static_cast<std::size_t>(i) % 8);
    for (const double eps : {0.05, 0.1, 0.2, 0.5}) {
      const Menu r = nudge_round_additive(m, eps);
      CHECK(menu_size(r) <= menu_size(m));
      CHECK(distinct_prices(r) <=
            static_cast<std::size_t>(1.0 / (eps * eps)) + 1);
      for (const ProductDistribution& d : dists) {
        const double before = revenue_exact(m, d).revenue;
        const double after = revenue_exact(r, d).revenue;
        CHECK(after >= (1.0 - eps) * before - eps - 1e-9);
      }
    }
  }
}

TEST_CASE("repeated rounding never grows the menu") {
  SplitMix64 rng(777u);
  for (int i = 0; i < 10; ++i) {
    const Menu m = random_menu(rng, 6);
    for (const double eps : {0.1, 0.3}) {
      const Menu once = nudge_round_additive(m, eps);
      const Menu twice = nudge_round_additive(once, eps);
      CHECK(menu_size(once) <= menu_size(m));
      CHECK(menu_size(twice) <= menu_size(once));
    }
  }
}

TEST_CASE("boundary pruning") {
  // Same price on the q1 = 1 side: the generous entry wins.
  const Menu pair({{1.0, 0.3, 0.5}, {1.0, 0.7, 0.5}});
  const PruneResult pr = boundary_prune(pair);
  CHECK(pr.applied);
  REQUIRE(pr.menu.entries().size() == 1);
  CHECK(pr.menu.entries()[0].q2 == 0.7);

  // Corner entries compete on the q1 side only; other sides survive.
  const Menu mixed({{1.0, 1.0, 0.3}, {1.0, 0.4, 0.3}, {0.0, 1.0, 0.3}});
  const PruneResult pm = boundary_prune(mixed);
  CHECK(pm.applied);
  CHECK(pm.menu.entries().size() == 2);

  // Idempotence.
  const PruneResult again = boundary_prune(pm.menu);
  CHECK(again.applied);
  CHECK(again.menu.entries().size() == pm.menu.entries().size());

  // Interior entries gate the whole transform off.
  const Menu interior({{1.0, 1.0, 0.4}, {0.5, 0.5, 0.2}});
  const PruneResult gate = boundary_prune(interior);
  CHECK_FALSE(gate.applied);
  CHECK(gate.menu.entries().size() == interior.entries().size());
}

TEST_CASE("boundary pruning preserves exact revenue") {
  const ProductDistribution dists[] = {uniform_squared(), beta12_squared()};
  SplitMix64 rng(31337u);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<MenuEntry> es;
    const std::size_t n = 3 + static_cast<std::size_t>(trial) % 6;
    for (std::size_t i = 0; i < n; ++i) {
      const int side = static_cast<int>(rng.next_u64() % 4);
      const double free_coord = rng.next_unit();
      const double t =
          0.1 * (1.0 + static_cast<double>(rng.next_u64() % 5));
      if (side == 0)
        es.push_back({1.0, free_coord, t});
      else if (side == 1)
        es.push_back({0.0, free_coord, t});
      else if (side == 2)
        es.push_back({free_coord, 1.0, t});
      else
        es.push_back({free_coord, 0.0, t});
    }
    const Menu m(es);
    const PruneResult pr = boundary_prune(m);
    REQUIRE(pr.applied);
    CHECK(menu_size(pr.menu) <= 4 * distinct_prices(m) + 1);
    for (const ProductDistribution& d : dists)
      CHECK(revenue_exact(pr.menu, d).revenue ==
            Catch::Approx(revenue_exact(m, d).revenue).margin(1e-10));
  }
}

TEST_CASE("full rounding moves allocations onto the grid") {
  const Menu m({{0.57, 0.33, 0.5}});
  const Menu r = nudge_round_full(m, 0.1);
  REQUIRE(r.entries().size() == 1);
  CHECK(r.entries()[0].q1 == Catch::Approx(0.5).margin(1e-12));
  CHECK(r.entries()[0].q2 == Catch::Approx(0.3).margin(1e-12));
  CHECK(r.entries()[0].t == Catch::Approx(0.45).margin(1e-15));

  // Already on the grid: only the discount moves the price.
  const Menu grid({{0.5, 0.3, 0.45}});
  const Menu rg = nudge_round_full(grid, 0.1);
  CHECK(rg.entries()[0].q1 == Catch::Approx(0.5).margin(1e-12));
  CHECK(rg.entries()[0].q2 == Catch::Approx(0.3).margin(1e-12));
  CHECK(rg.entries()[0].t == Catch::Approx(0.405).margin(1e-15));

  SplitMix64 rng(99u);
  for (int i = 0; i < 10; ++i) {
    const Menu rm = random_menu(rng, 10);
    for (const double eps : {0.2, 0.5}) {
      const std::size_t alloc_levels =
          static_cast<std::size_t>(std::floor(1.0 / eps)) + 1;
      const std::size_t price_levels =
          static_cast<std::size_t>(std::floor(1.0 / (eps * eps))) + 1;
      CHECK(menu_size(nudge_round_full(rm, eps)) <=
            alloc_levels * alloc_levels * price_levels + 1);
    }
  }
}

TEST_CASE("geometric price grid") {
  const std::vector<double> g = geometric_price_grid(0.1, 100.0);
  CHECK(g.size() == 464);
  CHECK(g.size() <= static_cast<std::size_t>(
                        std::ceil(std::log(100.0) / std::log(1.01))) +
                        2);
  CHECK(g.front() == Catch::Approx(1.0 / 1.01).margin(1e-15));
  CHECK(g.back() <= 100.0);
  CHECK(g.back() * 1.01 > 100.0);
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    CHECK(g[i] < g[i + 1]);
    CHECK(g[i + 1] == Catch::Approx(g[i] * 1.01).epsilon(1e-12));
  }

  for (const double eps : {0.05, 0.3}) {
    for (const double cap : {2.0, 10.0, 1000.0}) {
      const double ratio = 1.0 + eps * eps;
      const std::size_t bound = static_cast<std::size_t>(std::ceil(
                                    std::log(cap) / std::log(ratio))) +
                                2;
      CHECK(geometric_price_grid(eps, cap).size() <= bound);
    }
  }
  CHECK_THROWS_AS(geometric_price_grid(0.1, 1.0), precondition_error);
  CHECK_THROWS_AS(geometric_price_grid(0.0, 2.0), precondition_error);
}

TEST_CASE("multiplicative rounding") {
  const double ratio = 1.01;
  const Menu m({{1.0, 1.0, 100.0}, {1.0, 0.0, 0.995}, {0.0, 1.0, 0.98}});
  const Menu r = nudge_round_multiplicative(m, 0.1, 100.0);
  REQUIRE(r.entries().size() == 3);

  // The cap price snaps to the top grid point, kept prices stay within
  // one ratio below, and sub-grid prices fall to zero.
  CHECK(r.entries()[0].t ==
        Catch::Approx(0.9 * std::pow(ratio, 462.0)).epsilon(1e-12));
  CHECK(r.entries()[1].t == Catch::Approx(0.9 / 1.01).epsilon(1e-12));
  CHECK(r.entries()[2].t == 0.0);

  for (const MenuEntry& before : m.entries())
    for (const MenuEntry& after : r.entries())
      if (before.q1 == after.q1 && before.q2 == after.q2 && after.t > 0.0) {
        CHECK(after.t <= 0.9 * before.t);
        CHECK(after.t * ratio > 0.9 * before.t);
      }

  CHECK_THROWS_AS(nudge_round_multiplicative(m, 0.1, 50.0),
                  precondition_error);
}

TEST_CASE("price scaling keeps a proportional share of revenue") {
  const ProductDistribution dists[] = {uniform_squared(), beta12_squared()};
  SplitMix64 rng(2025u);
  for (int i = 0; i < 8; ++i) {
    const Menu m = random_menu(rng, 5);
    for (const double lam : {0.3, 0.7, 0.9}) {
      std::vector<MenuEntry> es;
      for (const MenuEntry& e : m.entries())
        es.push_back({e.q1, e.q2, lam * e.t});
      const Menu scaled(es);
      for (const ProductDistribution& d : dists)
        CHECK(revenue_exact(scaled, d).revenue >=
              lam * revenue_exact(m, d).revenue - 1e-9);
    }
  }
}

TEST_CASE("discount necessity witness") {
  // A cheap bundle straddling a grid point: flooring alone loses more
  // than an eps fraction of revenue, the discount variant never does.
  const double eps = 0.2;
  const Menu m({{1.0, 1.0, 0.06}});
  const ProductDistribution u2 = uniform_squared();
  const double before = revenue_exact(m, u2).revenue;

  const Menu floored = round_prices_only(m, eps * eps);
  CHECK(floored.entries()[0].t == Catch::Approx(0.04).margin(1e-15));
  const double after = revenue_exact(floored, u2).revenue;
  CHECK(before - after > eps * before);

  const Menu nudged = nudge_round_additive(m, eps);
  const double guarded = revenue_exact(nudged, u2).revenue;
  CHECK(guarded >= (1.0 - eps) * before - eps - 1e-12);
}

// SPDX-License-Identifier: MIT
#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "menukit/oracle.hpp"
#include "menukit/revenue.hpp"
#include "menukit/rng.hpp"

using namespace menukit;

namespace {

Menu random_menu(SplitMix64& rng, int entries) {
  std::vector<MenuEntry> es;
  for (int i = 0; i < entries; ++i)
    es.push_back({rng.next_unit(), rng.next_unit(), 2.0 * rng.next_unit()});
  return Menu(std::move(es));
}

// Expected revenue of a finite menu against an explicit list of types.
double finite_revenue(const Menu& m, const std::vector<double>& v1,
                      const std::vector<double>& v2,
                      const std::vector<double>& mass) {
  double r = 0.0;
  for (std::size_t k = 0; k < v1.size(); ++k)
    r += mass[k] * best_response(m, {v1[k], v2[k]}).payment;
  return r;
}

}  // namespace

TEST_CASE("mechanism audit flags planted violations") {
  GridMechanism g;
  g.v1 = {1.0, 2.0};
  g.v2 = {0.0, 0.0};
  g.mass = {0.5, 0.5};
  g.q1 = {1.0, 1.0};
  g.q2 = {0.0, 0.0};
  g.t = {0.25, 1.0};
  // Type 2 gets utility 1 from its own outcome but 1.75 from type 1's.
  const MechanismAudit a = audit_mechanism(g);
  CHECK(a.max_bound_violation == 0.0);
  CHECK(a.max_ir_violation == 0.0);
  CHECK(a.max_ic_violation == Catch::Approx(0.75).margin(1e-15));

  g.q1[0] = 1.5;
  g.t[0] = 2.0;
  const MechanismAudit b = audit_mechanism(g);
  CHECK(b.max_bound_violation == Catch::Approx(0.5).margin(1e-15));
  CHECK(b.max_ir_violation == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("two-by-two grid matches deterministic menu enumeration") {
  const std::vector<double> v1 = {0.5, 0.5, 1.0, 1.0};
  const std::vector<double> v2 = {0.5, 1.0, 0.5, 1.0};
  const std::vector<double> mass(4, 0.25);
  const LpMechanismResult res = opt_mechanism_lp(v1, v2, mass);
  CHECK(res.value == Catch::Approx(1.125).margin(1e-9));
  CHECK(res.mechanism.revenue() == Catch::Approx(res.value).margin(1e-9));
  CHECK(res.audit.max_bound_violation <= 1e-8);
  CHECK(res.audit.max_ir_violation <= 1e-8);
  CHECK(res.audit.max_ic_violation <= 1e-8);

  // Deterministic mechanisms are menus over the three nonnull bundles.
  // With values on the half-integer lattice an optimal such menu can be
  // moved price by price onto the same lattice without losing revenue,
  // so enumerating lattice prices (plus leaving an entry out) is exact.
  const std::array<std::pair<double, double>, 3> bundles = {
      {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}};
  const std::array<double, 5> prices = {0.0, 0.5, 1.0, 1.5, 2.0};
  double best = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) {
        std::vector<MenuEntry> es;
        const std::array<int, 3> pick = {i, j, k};
        for (int e = 0; e < 3; ++e)
          if (pick[e] < 5)
            es.push_back({bundles[e].first, bundles[e].second,
                          prices[static_cast<std::size_t>(pick[e])]});
        best = std::max(best, finite_revenue(Menu(es), v1, v2, mass));
      }
  CHECK(best == Catch::Approx(1.125).margin(1e-12));
  CHECK(res.value == Catch::Approx(best).margin(1e-9));
}

TEST_CASE("single-good pair of equiprobable values") {
  const LpMechanismResult res =
      opt_mechanism_lp({0.5, 1.0}, {0.0, 0.0}, {0.5, 0.5});
  CHECK(res.value == Catch::Approx(0.5).margin(1e-9));
  CHECK(res.audit.max_ic_violation <= 1e-8);
}

TEST_CASE("lp input validation") {
  CHECK_THROWS_AS(opt_mechanism_lp({}, {}, {}), precondition_error);
  CHECK_THROWS_AS(opt_mechanism_lp({1.0}, {1.0, 2.0}, {1.0}),
                  precondition_error);
  CHECK_THROWS_AS(opt_mechanism_lp({-1.0}, {1.0}, {1.0}), precondition_error);
  CHECK_THROWS_AS(opt_mechanism_lp({1.0}, {1.0}, {-0.5}), precondition_error);
}

TEST_CASE("down-rounded grid points and masses") {
  const Marginal b = Marginal::beta12();
  const std::vector<double> p = grid_points(b, 6);
  REQUIRE(p.size() == 6);
  for (int i = 0; i < 6; ++i)
    CHECK(p[static_cast<std::size_t>(i)] ==
          Catch::Approx(i / 6.0).margin(1e-15));

  const std::vector<double> w = grid_masses(b, 6);
  double total = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double lo = i / 6.0;
    const double hi = (i + 1) / 6.0;
    const double expect =
        (i + 1 < 6 ? b.cdf(hi) : 1.0) - b.cdf(lo);
    CHECK(w[static_cast<std::size_t>(i)] ==
          Catch::Approx(expect).margin(1e-15));
    total += w[static_cast<std::size_t>(i)];
  }
  CHECK(total == Catch::Approx(1.0).margin(1e-12));
  // Top cell is closed, so the full mass is covered for any n.
  for (std::size_t n : {5, 12}) {
    const std::vector<double> wu = grid_masses(Marginal::uniform01(), n);
    double s = 0.0;
    for (double wi : wu) s += wi;
    CHECK(s == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("grid lp sweep tightens the upper bound") {
  const ProductDistribution d = beta12_squared();
  const std::array<std::size_t, 4> sizes = {6, 8, 10, 12};
  const std::array<double, 4> pinned = {
      0.30041152263374477,
      0.307464599609375,
      0.31254000000000004,
      0.31546585648148173,
  };
  std::array<GridLpResult, 4> runs;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    runs[i] = opt_grid_lp(d, sizes[i]);
    CHECK(runs[i].lp.value == Catch::Approx(pinned[i]).margin(1e-7));
    CHECK(runs[i].step ==
          Catch::Approx(1.0 / static_cast<double>(sizes[i])).margin(1e-15));
    CHECK(runs[i].upper_bound ==
          Catch::Approx(runs[i].lp.value + 2.0 * runs[i].step).margin(1e-12));
    CHECK(runs[i].lp.audit.max_bound_violation <= 1e-8);
    CHECK(runs[i].lp.audit.max_ir_violation <= 1e-8);
    CHECK(runs[i].lp.audit.max_ic_violation <= 1e-8);
    if (i > 0) CHECK(runs[i].upper_bound < runs[i - 1].upper_bound);
  }

  const Baselines base = baselines(d);
  CHECK(runs[3].lp.value >= base.srev);
  CHECK(runs[3].lp.value <= base.srev + 0.15);

  // Every feasible grid mechanism, in particular any menu restricted to
  // the grid, is dominated by the lp optimum.
  std::vector<Menu> spot;
  spot.push_back(Menu({{1.0, 1.0, base.bundle_price}}));
  spot.push_back(Menu({{1.0, 0.0, base.price1}, {0.0, 1.0, base.price2}}));
  spot.push_back(opt_menu_search(d, 4, 2, 11));
  SplitMix64 rng(404);
  for (int i = 0; i < 3; ++i) spot.push_back(random_menu(rng, 5));
  for (const Menu& m : spot) {
    const GridMechanism g = menu_to_grid_mechanism(m, d, 12);
    const MechanismAudit a = audit_mechanism(g);
    CHECK(a.max_bound_violation == 0.0);
    CHECK(a.max_ir_violation <= 1e-9);
    CHECK(a.max_ic_violation <= 1e-9);
    CHECK(g.revenue() <= runs[3].lp.value + 1e-8);
    // The discretization slack also covers the continuous revenue.
    CHECK(revenue_exact(m, d).revenue <= runs[3].upper_bound + 1e-9);
  }
}

TEST_CASE("uniform squared grid lp") {
  const ProductDistribution d = uniform_squared();
  const GridLpResult run = opt_grid_lp(d, 12);
  CHECK(run.lp.value == Catch::Approx(115.0 / 216.0).margin(1e-7));
  CHECK(run.upper_bound ==
        Catch::Approx(run.lp.value + 1.0 / 6.0).margin(1e-12));
  CHECK(run.lp.audit.max_ic_violation <= 1e-8);

  const Baselines base = baselines(d);
  CHECK(run.upper_bound >= base.srev);
  CHECK(run.upper_bound >= base.brev);
  const Menu found = opt_menu_search(d, 4, 2, 17);
  CHECK(revenue_exact(found, d).revenue <= run.upper_bound + 1e-9);
  CHECK(menu_to_grid_mechanism(found, d, 12).revenue() <=
        run.lp.value + 1e-8);
}

TEST_CASE("degenerate one-point grid is vacuous but valid") {
  CHECK(opt_upper_bound(uniform_squared(), 1) ==
        Catch::Approx(2.0).margin(1e-12));
  CHECK_THROWS_AS(opt_grid_lp(uniform_squared(), 0), precondition_error);
  CHECK_THROWS_AS(opt_grid_lp(uniform_squared(), 21), precondition_error);
}

TEST_CASE("bundle tail mass") {
  const ProductDistribution uni = uniform_squared();
  const ProductDistribution beta = beta12_squared();

  CHECK(bundle_tail_mass(uni, 0.5) == Catch::Approx(0.875).margin(1e-12));
  CHECK(bundle_tail_mass(uni, 1.0) == Catch::Approx(0.5).margin(1e-12));
  CHECK(bundle_tail_mass(uni, 1.5) == Catch::Approx(0.125).margin(1e-12));
  CHECK(bundle_tail_mass(beta, 0.5) == Catch::Approx(21.0 / 32.0).margin(1e-12));

  CHECK(bundle_tail_mass(uni, 0.0) == 1.0);
  CHECK(bundle_tail_mass(uni, -1.0) == 1.0);
  CHECK(bundle_tail_mass(uni, 2.0) == 0.0);
  CHECK(bundle_tail_mass(beta, 2.5) == 0.0);

  // Dual route: a single bundle entry at price p earns p times the tail.
  for (const ProductDistribution& d : {uni, beta})
    for (const double p : {0.3, 0.7, 1.2, 1.9}) {
      const Menu m({{1.0, 1.0, p}});
      CHECK(revenue_exact(m, d).revenue ==
            Catch::Approx(p * bundle_tail_mass(d, p)).margin(1e-10));
    }

  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double tail = bundle_tail_mass(beta, 2.0 * i / 100.0);
    CHECK(tail <= prev + 1e-12);
    prev = tail;
  }
}

TEST_CASE("posted price baselines") {
  const Baselines beta = baselines(beta12_squared());
  CHECK(beta.srev == Catch::Approx(8.0 / 27.0).margin(1e-9));
  CHECK(beta.price1 == Catch::Approx(1.0 / 3.0).margin(1e-6));
  CHECK(beta.price2 == Catch::Approx(1.0 / 3.0).margin(1e-6));
  CHECK(beta.brev == Catch::Approx(0.33087358098962577).margin(1e-8));
  CHECK(beta.bundle_price ==
        Catch::Approx(0.54830716374574573).margin(1e-5));
  CHECK(beta.brev > beta.srev);

  const Baselines uni = baselines(uniform_squared());
  CHECK(uni.srev == Catch::Approx(0.5).margin(1e-9));
  CHECK(uni.price1 == Catch::Approx(0.5).margin(1e-6));
  CHECK(uni.brev == Catch::Approx(0.54433105395181736).margin(1e-9));
  CHECK(uni.bundle_price ==
        Catch::Approx(std::sqrt(2.0 / 3.0)).margin(1e-6));

  // brev dominates every posted bundle price by construction.
  const ProductDistribution d = uniform_squared();
  for (int i = 1; i < 20; ++i) {
    const double p = 0.1 * i;
    CHECK(uni.brev >= p * bundle_tail_mass(d, p) - 1e-12);
  }
}

TEST_CASE("menu local search") {
  const ProductDistribution beta = beta12_squared();
  const Baselines base = baselines(beta);

  SECTION("size budget one leaves only the null outcome") {
    const Menu m = opt_menu_search(beta, 1, 3, 1);
    CHECK(m.entries().empty());
    CHECK(revenue_exact(m, beta).revenue == 0.0);
  }

  SECTION("single entry beats the bundle baseline") {
    const Menu m = opt_menu_search(beta, 2, 2, 1);
    REQUIRE(m.entries().size() <= 1);
    const double rev = revenue_exact(m, beta).revenue;
    CHECK(rev >= base.brev - 1e-9);
    CHECK(rev <= 0.48213252314814836 + 1e-6);
  }

  SECTION("two entries beat both baselines") {
    const ProductDistribution uni = uniform_squared();
    const Baselines ub = baselines(uni);
    const Menu m = opt_menu_search(uni, 3, 2, 2);
    const double rev = revenue_exact(m, uni).revenue;
    CHECK(rev >= std::max(ub.srev, ub.brev) - 1e-9);
  }

  SECTION("deterministic in the seed") {
    const Menu a = opt_menu_search(beta, 3, 2, 42);
    const Menu b = opt_menu_search(beta, 3, 2, 42);
    REQUIRE(a.entries().size() == b.entries().size());
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
      CHECK(a.entries()[i].q1 == b.entries()[i].q1);
      CHECK(a.entries()[i].q2 == b.entries()[i].q2);
      CHECK(a.entries()[i].t == b.entries()[i].t);
    }
  }

  SECTION("revenue is nondecreasing in the budget with warm starts") {
    std::vector<Menu> warm;
    double prev = -1.0;
    for (std::size_t budget = 1; budget <= 4; ++budget) {
      const Menu m = opt_menu_search(beta, budget, 1, 5, warm);
      const double rev = revenue_exact(m, beta).revenue;
      CHECK(rev >= prev - 1e-12);
      prev = rev;
      warm = {m};
    }
    CHECK(prev <= 0.48213252314814836 + 1e-6);
  }

  SECTION("single-good embedding recovers the one-good optimum") {
    const ProductDistribution d = {Marginal::beta12(),
                                   Marginal::polynomial({1e8}, 0.0, 1e-8)};
    const Menu m = opt_menu_search(d, 2, 2, 3);
    REQUIRE(m.entries().size() == 1);
    const double rev = revenue_exact(m, d).revenue;
    CHECK(rev == Catch::Approx(4.0 / 27.0).margin(1e-6));
    CHECK(m.entries()[0].t == Catch::Approx(1.0 / 3.0).margin(1e-3));
  }
}

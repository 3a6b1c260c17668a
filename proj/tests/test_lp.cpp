// SPDX-License-Identifier: MIT
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <vector>

#include "menukit/lp.hpp"
#include "menukit/rng.hpp"

using namespace menukit;

namespace {

// Residual feasibility of a reported solution against the original data.
double max_residual(const std::vector<double>& c,
                    const std::vector<std::vector<double>>& a,
                    const std::vector<double>& b, const SimplexResult& res) {
  double worst = 0.0;
  for (double xi : res.x) worst = std::max(worst, -xi);
  for (std::size_t i = 0; i < a.size(); ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) lhs += a[i][j] * res.x[j];
    worst = std::max(worst, lhs - b[i]);
  }
  double obj = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) obj += c[j] * res.x[j];
  worst = std::max(worst, std::fabs(obj - res.value));
  return worst;
}

}  // namespace

TEST_CASE("two-variable box program") {
  const std::vector<double> c = {1.0, 1.0};
  const std::vector<std::vector<double>> a = {{1.0, 0.0}, {0.0, 1.0}};
  const std::vector<double> b = {1.0, 2.0};
  const SimplexResult res = simplex_max(c, a, b);
  REQUIRE(res.status == "optimal");
  CHECK(res.value == Catch::Approx(3.0).margin(1e-12));
  CHECK(res.x[0] == Catch::Approx(1.0).margin(1e-12));
  CHECK(res.x[1] == Catch::Approx(2.0).margin(1e-12));
  CHECK(max_residual(c, a, b, res) <= 1e-12);
}

TEST_CASE("vertex selection with competing constraints") {
  // max 3x + 2y, x + y <= 4, x + 3y <= 6: optimum at (4, 0).
  const std::vector<double> c = {3.0, 2.0};
  const std::vector<std::vector<double>> a = {{1.0, 1.0}, {1.0, 3.0}};
  const std::vector<double> b = {4.0, 6.0};
  const SimplexResult res = simplex_max(c, a, b);
  REQUIRE(res.status == "optimal");
  CHECK(res.value == Catch::Approx(12.0).margin(1e-12));
  CHECK(res.x[0] == Catch::Approx(4.0).margin(1e-12));
  CHECK(res.x[1] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("negative cost stays at the origin") {
  const std::vector<double> c = {-1.0, -2.0};
  const std::vector<std::vector<double>> a = {{1.0, 1.0}};
  const std::vector<double> b = {5.0};
  const SimplexResult res = simplex_max(c, a, b);
  REQUIRE(res.status == "optimal");
  CHECK(res.value == 0.0);
  CHECK(res.iterations == 0);
}

TEST_CASE("unbounded directions are reported") {
  SECTION("no rows at all") {
    const SimplexResult res = simplex_max({1.0}, {}, {});
    CHECK(res.status == "unbounded");
  }
  SECTION("constraint misses the improving direction") {
    const SimplexResult res =
        simplex_max({1.0, -1.0}, {{0.0, 1.0}}, {1.0});
    CHECK(res.status == "unbounded");
  }
}

TEST_CASE("degenerate pivoting terminates") {
  // Beale's cycling example; the plain largest-coefficient rule loops
  // on it forever without the fallback rule.
  const std::vector<double> c = {0.75, -150.0, 0.02, -6.0};
  const std::vector<std::vector<double>> a = {
      {0.25, -60.0, -0.04, 9.0},
      {0.5, -90.0, -0.02, 3.0},
      {0.0, 0.0, 1.0, 0.0},
  };
  const std::vector<double> b = {0.0, 0.0, 1.0};
  const SimplexResult res = simplex_max(c, a, b);
  REQUIRE(res.status == "optimal");
  CHECK(res.value == Catch::Approx(0.05).margin(1e-10));
  CHECK(max_residual(c, a, b, res) <= 1e-10);
}

TEST_CASE("redundant rows do not move the optimum") {
  const std::vector<double> c = {2.0, 1.0};
  std::vector<std::vector<double>> a = {{1.0, 1.0}};
  std::vector<double> b = {3.0};
  const double base = simplex_max(c, a, b).value;
  for (int dup = 0; dup < 4; ++dup) {
    a.push_back(a[0]);
    b.push_back(b[0]);
  }
  a.push_back({2.0, 2.0});
  b.push_back(6.0);
  const SimplexResult res = simplex_max(c, a, b);
  REQUIRE(res.status == "optimal");
  CHECK(res.value == Catch::Approx(base).margin(1e-12));
}

TEST_CASE("random feasible programs stay feasible at the optimum") {
  SplitMix64 rng(20240817);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.next_u64() % 5;
    const std::size_t m = 1 + rng.next_u64() % 6;
    std::vector<double> c(n);
    for (double& ci : c) ci = 2.0 * rng.next_unit() - 1.0;
    std::vector<std::vector<double>> a(m, std::vector<double>(n));
    std::vector<double> b(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (double& aij : a[i]) aij = rng.next_unit();
      b[i] = 0.5 + rng.next_unit();
    }
    // Rows are nonnegative with positive bounds, so the feasible set is
    // a bounded polytope containing the origin.
    const SimplexResult res = simplex_max(c, a, b);
    REQUIRE(res.status == "optimal");
    CHECK(max_residual(c, a, b, res) <= 1e-9);
    CHECK(res.value >= -1e-12);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(simplex_max({1.0}, {{1.0}}, {-1.0}), precondition_error);
  CHECK_THROWS_AS(simplex_max({1.0, 1.0}, {{1.0}}, {1.0}),
                  precondition_error);
  CHECK_THROWS_AS(simplex_max({1.0}, {{1.0}, {1.0}}, {1.0}),
                  precondition_error);
}

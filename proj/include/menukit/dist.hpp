// SPDX-License-Identifier: MIT
//
// Product value distributions on an axis-aligned rectangle: polynomial
// marginal densities with exact CDFs, inverse-CDF sampling, the
// regular-density check used by the approximation guarantees, and the
// optimal single-good posted price.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "menukit/common.hpp"
#include "menukit/poly.hpp"
#include "menukit/rng.hpp"

namespace menukit {

enum class MarginalKind { uniform, beta12, polynomial };

// One-dimensional value distribution with a polynomial density on a
// bounded interval. Immutable once constructed; construction validates
// that the density is nonnegative and integrates to one.
class Marginal {
 public:
  // Uniform on [0, 1].
  [[nodiscard]] static Marginal uniform01() {
    return Marginal(MarginalKind::uniform, Poly({1.0}), 0.0, 1.0, "uniform");
  }

  // Beta(1,2): density 2(1-x) on [0, 1], CDF 1-(1-x)^2.
  [[nodiscard]] static Marginal beta12() {
    return Marginal(MarginalKind::beta12, Poly({2.0, -2.0}), 0.0, 1.0,
                    "beta12");
  }

  // Arbitrary polynomial density on [lo, hi]. The coefficients are in
  // ascending order. Throws if the density is negative somewhere on the
  // support or its mass differs from 1 by more than 1e-12.
  [[nodiscard]] static Marginal polynomial(const std::vector<double>& coeffs,
                                           double lo, double hi) {
    require(std::isfinite(lo) && std::isfinite(hi) && hi > lo,
            "marginal support must be a nondegenerate finite interval");
    Poly f(coeffs);
    require(std::abs(f.integral(lo, hi) - 1.0) <= 1e-12,
            "marginal density must integrate to 1");
    require(poly_min_on(f, lo, hi) >= -1e-12,
            "marginal density must be nonnegative on its support");
    std::string name = "poly:";
    char buf[64];
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.17g", i ? "," : "", f.coeffs()[i]);
      name += buf;
    }
    std::snprintf(buf, sizeof buf, "@%.17g,%.17g", lo, hi);
    name += buf;
    return Marginal(MarginalKind::polynomial, f, lo, hi, name);
  }

  [[nodiscard]] MarginalKind kind() const { return kind_; }
  [[nodiscard]] double lo() const { return lo_; }
  [[nodiscard]] double hi() const { return hi_; }
  [[nodiscard]] const Poly& density() const { return pdf_; }
  [[nodiscard]] const std::string& name() const { return name_; }

  [[nodiscard]] double pdf(double x) const { return pdf_(x); }

  // CDF clamped to [0, 1], zero below the support and one above it.
  [[nodiscard]] double cdf(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    return std::clamp(cdf_(x) - cdf_lo_, 0.0, 1.0);
  }

  // Inverse CDF for u in [0, 1]. Closed forms for the uniform and
  // Beta(1,2) kinds; monotone bisection otherwise.
  [[nodiscard]] double inv_cdf(double u) const {
    require(u >= 0.0 && u <= 1.0, "inv_cdf: u outside [0,1]");
    switch (kind_) {
      case MarginalKind::uniform:
        return lo_ + u * (hi_ - lo_);
      case MarginalKind::beta12:
        return 1.0 - std::sqrt(1.0 - u);
      case MarginalKind::polynomial: {
        double a = lo_, b = hi_;
        for (int it = 0; it < 100; ++it) {
          const double m = 0.5 * (a + b);
          if (m <= a || m >= b) break;
          if (cdf(m) < u)
            a = m;
          else
            b = m;
        }
        return 0.5 * (a + b);
      }
    }
    throw internal_error("inv_cdf: unknown marginal kind");
  }

 private:
  Marginal(MarginalKind kind, Poly pdf, double lo, double hi, std::string name)
      : kind_(kind),
        pdf_(std::move(pdf)),
        cdf_(pdf_.antiderivative()),
        cdf_lo_(cdf_(lo)),
        lo_(lo),
        hi_(hi),
        name_(std::move(name)) {}

  MarginalKind kind_;
  Poly pdf_;
  Poly cdf_;
  double cdf_lo_;
  double lo_, hi_;
  std::string name_;
};

// Independent pair of marginals; the value distribution of the two goods.
struct ProductDistribution {
  Marginal m1;
  Marginal m2;

  [[nodiscard]] double pdf(double x1, double x2) const {
    return m1.pdf(x1) * m2.pdf(x2);
  }
};

[[nodiscard]] inline ProductDistribution beta12_squared() {
  return {Marginal::beta12(), Marginal::beta12()};
}

[[nodiscard]] inline ProductDistribution uniform_squared() {
  return {Marginal::uniform01(), Marginal::uniform01()};
}

// Canonical spec string, parseable by parse_dist_spec.
[[nodiscard]] inline std::string describe(const ProductDistribution& d) {
  if (d.m1.name() == d.m2.name()) return "iid:" + d.m1.name();
  return "product:" + d.m1.name() + "," + d.m2.name();
}

// ==== sampling =============================================================

// Inverse-CDF sampler over an explicit deterministic stream; each type
// consumes two uniforms, first good first.
struct SampleStream {
  explicit SampleStream(const ProductDistribution& d, std::uint64_t seed)
      : dist(d), rng(seed) {}

  [[nodiscard]] std::pair<double, double> next() {
    const double u1 = rng.next_unit();
    const double u2 = rng.next_unit();
    return {dist.m1.inv_cdf(u1), dist.m2.inv_cdf(u2)};
  }

  const ProductDistribution& dist;
  SplitMix64 rng;
};

// ==== spec strings =========================================================

[[nodiscard]] inline Marginal parse_marginal_spec(const std::string& s) {
  if (s == "uniform") return Marginal::uniform01();
  if (s == "beta12") return Marginal::beta12();
  if (s.rfind("poly:", 0) == 0) {
    const std::string body = s.substr(5);
    const std::size_t at = body.find('@');
    if (at == std::string::npos)
      throw parse_error("poly marginal needs @lo,hi: " + s);
    std::vector<double> coeffs;
    std::size_t pos = 0;
    const std::string clist = body.substr(0, at);
    while (pos <= clist.size()) {
      const std::size_t comma = std::min(clist.find(',', pos), clist.size());
      std::size_t used = 0;
      const std::string tok = clist.substr(pos, comma - pos);
      try {
        coeffs.push_back(std::stod(tok, &used));
      } catch (const std::exception&) {
        throw parse_error("bad polynomial coefficient '" + tok + "' in " + s);
      }
      if (used != tok.size())
        throw parse_error("bad polynomial coefficient '" + tok + "' in " + s);
      pos = comma + 1;
    }
    const std::string range = body.substr(at + 1);
    const std::size_t comma = range.find(',');
    if (comma == std::string::npos)
      throw parse_error("poly marginal needs @lo,hi: " + s);
    double lo, hi;
    try {
      lo = std::stod(range.substr(0, comma));
      hi = std::stod(range.substr(comma + 1));
    } catch (const std::exception&) {
      throw parse_error("bad support bounds in " + s);
    }
    return Marginal::polynomial(coeffs, lo, hi);
  }
  throw parse_error("unknown marginal spec '" + s + "'");
}

// Accepts "iid:<marginal>" and "product:<marginal>,<marginal>". Poly
// marginals contain commas, so the product separator is found by taking
// the first comma split where both halves parse.
[[nodiscard]] inline ProductDistribution parse_dist_spec(const std::string& s) {
  if (s.rfind("iid:", 0) == 0) {
    Marginal m = parse_marginal_spec(s.substr(4));
    return {m, m};
  }
  if (s.rfind("product:", 0) == 0) {
    const std::string body = s.substr(8);
    std::size_t from = 0;
    while (true) {
      const std::size_t comma = body.find(',', from);
      if (comma == std::string::npos) break;
      try {
        Marginal a = parse_marginal_spec(body.substr(0, comma));
        Marginal b = parse_marginal_spec(body.substr(comma + 1));
        return {a, b};
      } catch (const parse_error&) {
        from = comma + 1;
      }
    }
    throw parse_error("cannot split product spec '" + s +
                      "' into two marginals");
  }
  throw parse_error("unknown distribution spec '" + s +
                    "' (want iid:... or product:...)");
}

// ==== density regularity check =============================================

struct HazardReport {
  bool satisfied = false;
  double min_value = 0.0;
  double arg1 = 0.0;
  double arg2 = 0.0;
};

// Evaluates 3 f1 f2 + x1 f1' f2 + x2 f1 f2' over an inclusive grid on the
// support rectangle, polishes the worst point by pattern search, and
// reports whether the minimum is nonnegative (within 1e-12). Densities
// that vanish on part of the boundary are evaluated literally there.
[[nodiscard]] inline HazardReport hazard_check(const ProductDistribution& d,
                                               int grid_n = 257) {
  require(grid_n >= 2, "hazard_check: grid_n must be at least 2");
  const Poly f1 = d.m1.density(), df1 = f1.derivative();
  const Poly f2 = d.m2.density(), df2 = f2.derivative();
  const auto expr = [&](double x1, double x2) {
    return 3.0 * f1(x1) * f2(x2) + x1 * df1(x1) * f2(x2) +
           x2 * f1(x1) * df2(x2);
  };
  HazardReport rep;
  rep.min_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_n; ++i) {
    const double x1 =
        d.m1.lo() + (d.m1.hi() - d.m1.lo()) * static_cast<double>(i) / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double x2 =
          d.m2.lo() + (d.m2.hi() - d.m2.lo()) * static_cast<double>(j) / (grid_n - 1);
      const double v = expr(x1, x2);
      if (v < rep.min_value) {
        rep.min_value = v;
        rep.arg1 = x1;
        rep.arg2 = x2;
      }
    }
  }
  double step = std::max(d.m1.hi() - d.m1.lo(), d.m2.hi() - d.m2.lo()) /
                (grid_n - 1);
  while (step > 1e-10) {
    bool moved = false;
    const double cand[4][2] = {{rep.arg1 + step, rep.arg2},
                               {rep.arg1 - step, rep.arg2},
                               {rep.arg1, rep.arg2 + step},
                               {rep.arg1, rep.arg2 - step}};
    for (const auto& c : cand) {
      const double x1 = std::clamp(c[0], d.m1.lo(), d.m1.hi());
      const double x2 = std::clamp(c[1], d.m2.lo(), d.m2.hi());
      const double v = expr(x1, x2);
      if (v < rep.min_value) {
        rep.min_value = v;
        rep.arg1 = x1;
        rep.arg2 = x2;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  rep.satisfied = rep.min_value >= -1e-12;
  return rep;
}

// ==== single-good posted price =============================================

struct MyersonResult {
  double price = 0.0;
  double revenue = 0.0;
};

// Maximizes p * (1 - F(p)) over the support by a dense scan followed by
// golden-section refinement of every local-max bracket. Ties within
// 1e-12 resolve to the lower price.
[[nodiscard]] inline MyersonResult myerson_price(const Marginal& m) {
  const auto rev = [&](double p) { return p * (1.0 - m.cdf(p)); };
  const int n = 4096;
  std::vector<double> val(n + 1);
  const double lo = m.lo(), hi = m.hi();
  for (int i = 0; i <= n; ++i)
    val[i] = rev(lo + (hi - lo) * static_cast<double>(i) / n);

  std::vector<std::pair<double, double>> cand;  // (revenue, price)
  cand.emplace_back(val[0], lo);
  cand.emplace_back(val[n], hi);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 1; i < n; ++i) {
    if (val[i] < val[i - 1] || val[i] < val[i + 1]) continue;
    double a = lo + (hi - lo) * static_cast<double>(i - 1) / n;
    double b = lo + (hi - lo) * static_cast<double>(i + 1) / n;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = rev(x1), f2 = rev(x2);
    for (int it = 0; it < 120; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = rev(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = rev(x1);
      }
    }
    const double p = 0.5 * (a + b);
    cand.emplace_back(rev(p), p);
  }
  double best = -1.0;
  for (const auto& [r, p] : cand) best = std::max(best, r);
  double price = std::numeric_limits<double>::infinity();
  for (const auto& [r, p] : cand)
    if (r >= best - 1e-12) price = std::min(price, p);
  return {price, rev(price)};
}

}  // namespace menukit

// SPDX-License-Identifier: MIT
//
// Expected revenue of a menu under a product distribution, two ways:
// exactly, by decomposing the value rectangle into best-response regions
// and integrating the polynomial density over each (Gauss-Legendre on a
// Duffy-transformed triangle fan, exact for polynomials), and by seeded
// Monte Carlo as an independent cross-check.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "menukit/common.hpp"
#include "menukit/dist.hpp"
#include "menukit/geometry.hpp"
#include "menukit/model.hpp"

namespace menukit {

struct GaussLegendre {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Nodes and weights by Newton iteration on the Legendre recurrence.
[[nodiscard]] inline GaussLegendre gauss_legendre(int n) {
  require(n >= 1 && n <= 64, "gauss_legendre: order out of range");
  GaussLegendre gl;
  gl.x.resize(n);
  gl.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    gl.x[i] = x;
    gl.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return gl;
}

// ==== region decomposition =================================================

struct RegionDecomposition {
  std::vector<ConvexPolygon> entry_region;  // parallel to menu entries
  ConvexPolygon null_region;
  ConvexPolygon support;
};

// Best-response regions over the support rectangle. Region boundaries
// are indifference lines; shared edges carry no mass under a density.
[[nodiscard]] inline RegionDecomposition regions(
    const Menu& m, const ProductDistribution& d) {
  RegionDecomposition out;
  out.support = make_rect(d.m1.lo(), d.m2.lo(), d.m1.hi(), d.m2.hi());
  const std::vector<MenuEntry>& es = m.entries();
  out.entry_region.reserve(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    ConvexPolygon r = out.support;
    for (std::size_t j = 0; j < es.size() && !r.empty(); ++j) {
      if (j == i) continue;
      r = clip(r, es[i].q1 - es[j].q1, es[i].q2 - es[j].q2,
               es[i].t - es[j].t);
    }
    if (!r.empty()) r = clip(r, es[i].q1, es[i].q2, es[i].t);
    out.entry_region.push_back(r);
  }
  ConvexPolygon nul = out.support;
  for (const MenuEntry& e : es) {
    if (nul.empty()) break;
    nul = clip(nul, -e.q1, -e.q2, -e.t);
  }
  out.null_region = nul;
  return out;
}

// ==== polynomial mass over a polygon =======================================

// Probability mass of a convex polygon under the product density. Fan
// triangulation plus a Duffy map onto the unit square; the quadrature
// order is chosen so the result is exact for the polynomial integrand.
[[nodiscard]] inline double polygon_mass(const ConvexPolygon& p,
                                         const ProductDistribution& d) {
  if (p.empty()) return 0.0;
  const int deg = d.m1.density().degree() + d.m2.density().degree();
  const int order = deg / 2 + 2;
  const GaussLegendre gl = gauss_legendre(order);
  const GaussLegendre glu = gauss_legendre(order + 1);  // +1 for the Duffy factor
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < p.v.size(); ++i) {
    const Vec2 a = p.v[0], b = p.v[i], c = p.v[i + 1];
    const double cross =
        (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    double acc = 0.0;
    for (std::size_t iu = 0; iu < glu.x.size(); ++iu) {
      const double u = 0.5 * (glu.x[iu] + 1.0);
      double inner = 0.0;
      for (std::size_t iw = 0; iw < gl.x.size(); ++iw) {
        const double w = 0.5 * (gl.x[iw] + 1.0);
        const double x = a.x + u * ((b.x - a.x) + w * (c.x - b.x));
        const double y = a.y + u * ((b.y - a.y) + w * (c.y - b.y));
        inner += gl.w[iw] * d.pdf(x, y);
      }
      acc += glu.w[iu] * u * inner;
    }
    total += acc * 0.25 * cross;
  }
  return total;
}

// ==== revenue ==============================================================

struct RevenueReport {
  double revenue = 0.0;
  std::vector<double> entry_mass;
  double null_mass = 0.0;
};

[[nodiscard]] inline RevenueReport revenue_exact(const Menu& m,
                                                 const ProductDistribution& d) {
  const RegionDecomposition dec = regions(m, d);
  RevenueReport rep;
  rep.entry_mass.resize(m.entries().size(), 0.0);
  for (std::size_t i = 0; i < m.entries().size(); ++i) {
    rep.entry_mass[i] = polygon_mass(dec.entry_region[i], d);
    rep.revenue += m.entries()[i].t * rep.entry_mass[i];
  }
  rep.null_mass = polygon_mass(dec.null_region, d);
  return rep;
}

struct McReport {
  double estimate = 0.0;
  double stderr_est = 0.0;
  std::uint64_t n = 0;
};

// Sample-mean revenue with its standard error. Buyer tie handling is the
// same best_response used everywhere else.
[[nodiscard]] inline McReport revenue_mc(const Menu& m,
                                         const ProductDistribution& d,
                                         std::uint64_t n, std::uint64_t seed) {
  require(n >= 2, "revenue_mc: need at least two samples");
  SampleStream stream(d, seed);
  double sum = 0.0, sumsq = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto [x1, x2] = stream.next();
    const double pay = best_response(m, {x1, x2}).payment;
    sum += pay;
    sumsq += pay * pay;
  }
  McReport rep;
  rep.n = n;
  rep.estimate = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (sumsq - sum * sum / static_cast<double>(n)) /
                        static_cast<double>(n - 1));
  rep.stderr_est = std::sqrt(var / static_cast<double>(n));
  return rep;
}

}  // namespace menukit

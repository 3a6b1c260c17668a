// SPDX-License-Identifier: MIT
//
// Revenue-gap certificates for the product of two Beta(1,2) marginals on
// the unit square. Everything in this header is specific to that
// instance: the exclusion curve and its tangent diagonal, the signed
// density of the transformed measure on the strip next to the axis, and
// the coarse and exact lower bounds on how much revenue a menu leaves on
// the table there.
//
// The transformed measure on [0, strip_width] x [0, 1] is a unit atom at
// the origin plus the signed density g below; each column balances to
// zero above the exclusion curve, which is what makes the per-column
// slack a certificate.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "menukit/common.hpp"
#include "menukit/model.hpp"
#include "menukit/revenue.hpp"

namespace menukit {

// ==== exclusion curve and transformed density ==============================

// Lower branch of the zero-utility boundary: x2 = (2 - 3 x1)/(4 - 5 x1).
[[nodiscard]] inline double exclusion_curve(double x) {
  require(x >= 0.0 && x < 0.8, "exclusion_curve: argument outside [0, 0.8)");
  return (2.0 - 3.0 * x) / (4.0 - 5.0 * x);
}

[[nodiscard]] inline double exclusion_curve_slope(double x) {
  require(x >= 0.0 && x < 0.8,
          "exclusion_curve_slope: argument outside [0, 0.8)");
  const double den = 4.0 - 5.0 * x;
  return -2.0 / (den * den);
}

// The same boundary mirrored across the diagonal (the inverse function):
// x1 = (2 - 4 x2)/(3 - 5 x2), defined for x2 < 0.6.
[[nodiscard]] inline double exclusion_curve_inverse(double y) {
  require(y >= 0.0 && y < 0.6,
          "exclusion_curve_inverse: argument outside [0, 0.6)");
  return (2.0 - 4.0 * y) / (3.0 - 5.0 * y);
}

// Signed density of the transformed measure,
//   g(x1, x2) = 4(1 - x2) + 4(1 - x1) - 20 (1 - x1)(1 - x2),
// kept below as alpha(x1) + beta(x1) * x2. Along the exclusion curve
// g(x1, S(x1)) = -4 (1 - x1) exactly.
[[nodiscard]] inline double transformed_density(double x1, double x2) {
  const double a = 1.0 - x1;
  return (4.0 - 16.0 * a) + x2 * (20.0 * a - 4.0);
}

namespace detail {

inline void density_coeffs(double x1, double& alpha, double& beta) {
  const double a = 1.0 - x1;
  alpha = 4.0 - 16.0 * a;
  beta = 20.0 * a - 4.0;
}

}  // namespace detail

// Integral of g over one full column above the exclusion curve. Zero
// identically; exposed so the balance can be checked directly.
[[nodiscard]] inline double column_balance(double x1) {
  double alpha, beta;
  detail::density_coeffs(x1, alpha, beta);
  const double s = exclusion_curve(x1);
  const auto anti = [&](double y) { return (alpha + 0.5 * beta * y) * y; };
  return anti(1.0) - anti(s);
}

// ==== instance constants ===================================================

struct InstanceConstants {
  // Intercept of the diagonal segment of the exclusion boundary; the
  // line x1 + x2 = diag_intercept is tangent to the curved branches.
  double diag_intercept = 0.0;
  // Width of the certificate strip: the x1 at which the curved branch
  // meets the diagonal, i.e. exclusion_curve(x) + x = diag_intercept.
  double strip_width = 0.0;
  // Upper bound on the radius of curvature of the exclusion curve over
  // the strip (attained at x1 = 0).
  double curvature_radius_max = 0.0;
  // Lower bound on -g over the band of halfwidth strip_halfwidth around
  // the exclusion curve, for x1 in the strip.
  double density_floor = 0.0;
  // Widest certificate halfwidth the density floor is audited for.
  double strip_halfwidth = 0.0;
};

namespace detail {

[[nodiscard]] inline double curvature_radius(double x) {
  const double sp = exclusion_curve_slope(x);
  const double den = 4.0 - 5.0 * x;
  const double spp = -20.0 / (den * den * den);
  return std::pow(1.0 + sp * sp, 1.5) / std::abs(spp);
}

[[nodiscard]] inline InstanceConstants compute_instance_constants() {
  InstanceConstants k;
  k.diag_intercept = 0.5534938;
  k.strip_halfwidth = 0.02;

  // exclusion_curve(x) + x = diag_intercept reduces to
  // 5 x^2 - (1 + 5c) x + (4c - 2) = 0; the strip ends at the smaller root.
  const double c = k.diag_intercept;
  const double b = 1.0 + 5.0 * c;
  const double disc = b * b - 20.0 * (4.0 * c - 2.0);
  if (disc <= 0.0) throw audit_error("strip width discriminant not positive");
  k.strip_width = (b - std::sqrt(disc)) / 10.0;
  if (std::abs(exclusion_curve(k.strip_width) + k.strip_width - c) > 1e-12)
    throw audit_error("strip width does not meet the diagonal");

  // The radius of curvature decreases across the strip, so its value at
  // zero is the bound; audited on a grid anyway.
  k.curvature_radius_max = curvature_radius(0.0);
  for (int i = 0; i <= 4096; ++i) {
    const double x = k.strip_width * static_cast<double>(i) / 4096.0;
    if (curvature_radius(x) > k.curvature_radius_max + 1e-12)
      throw audit_error("curvature radius exceeds its claimed maximum");
  }

  // -g on the band around the curve is smallest at the top right corner:
  // -g(x1, S + h) = 4(1 - x1) - h (20 (1 - x1) - 4), minimized at
  // x1 = strip_width, h = strip_halfwidth.
  const double a0 = 1.0 - k.strip_width;
  k.density_floor = 4.0 * a0 - (20.0 * a0 - 4.0) * k.strip_halfwidth;
  for (int i = 0; i <= 2000; ++i) {
    const double x1 = k.strip_width * static_cast<double>(i) / 2000.0;
    const double s = exclusion_curve(x1);
    for (int j = 0; j <= 40; ++j) {
      const double h =
          k.strip_halfwidth * (2.0 * static_cast<double>(j) / 40.0 - 1.0);
      const double mg = -transformed_density(x1, s + h);
      if (mg < k.density_floor - 1e-12)
        throw audit_error("density floor violated on the audited band");
    }
  }
  return k;
}

}  // namespace detail

// Computed once and audited against grid checks on first use.
[[nodiscard]] inline const InstanceConstants& instance_constants() {
  static const InstanceConstants k = detail::compute_instance_constants();
  return k;
}

// Exclusion boundary of the region whose types end up with the null
// entry under the reference mechanism: pointwise minimum of the two
// curved branches and the tangent diagonal, on [0, diag_intercept].
[[nodiscard]] inline double exclusion_boundary(double x) {
  const InstanceConstants& k = instance_constants();
  require(x >= 0.0 && x <= k.diag_intercept,
          "exclusion_boundary: argument outside [0, diag_intercept]");
  double best = k.diag_intercept - x;
  best = std::min(best, exclusion_curve(x));
  best = std::min(best, exclusion_curve_inverse(x));
  return best;
}

// ==== piecewise-linear functions ===========================================

struct LinearPiece {
  double x0 = 0.0;
  double x1 = 0.0;
  double a0 = 0.0;  // value a0 + a1 * x
  double a1 = 0.0;

  [[nodiscard]] double value(double x) const { return a0 + a1 * x; }
};

struct PiecewiseLinear {
  std::vector<LinearPiece> pieces;  // contiguous, increasing in x

  [[nodiscard]] std::size_t segments() const { return pieces.size(); }

  [[nodiscard]] double value(double x) const {
    require(!pieces.empty(), "PiecewiseLinear: no pieces");
    require(x >= pieces.front().x0 - 1e-12 && x <= pieces.back().x1 + 1e-12,
            "PiecewiseLinear: argument outside the domain");
    for (const LinearPiece& p : pieces)
      if (x <= p.x1) return p.value(x);
    return pieces.back().value(x);
  }
};

// ==== allocation contour ===================================================
//
// Height in each column of the strip at which the buyer's chosen entry
// switches from allocating good 2 with probability at most 1/2 to more
// than 1/2, clamped to [0, 1]. Piecewise linear; each piece is
// reconstructed in closed form from the entry pair that generates it.

namespace detail {

struct ContourSample {
  double t = 0.0;
  int hi = -1;  // active high entry index, or a clamp marker
  int lo = -1;  // active low entry index, -1 for the null entry
};

inline constexpr int kClampLow = -2;
inline constexpr int kClampHigh = -3;

// In a fixed column x1 each entry is a line b + s * x2 with
// b = q1 * x1 - t and s = q2. Low lines have s <= 1/2 (the null entry
// included), high lines s > 1/2, so their upper envelopes cross once.
[[nodiscard]] inline ContourSample contour_sample(
    const std::vector<MenuEntry>& es, double x1) {
  const auto low_max = [&](double y, int* arg) {
    double best = 0.0;
    int idx = -1;
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (es[i].q2 > 0.5) continue;
      const double v = es[i].q1 * x1 - es[i].t + es[i].q2 * y;
      if (v > best) {
        best = v;
        idx = static_cast<int>(i);
      }
    }
    if (arg) *arg = idx;
    return best;
  };
  const auto high_max = [&](double y, int* arg) {
    double best = -1e300;
    int idx = -1;
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (es[i].q2 <= 0.5) continue;
      const double v = es[i].q1 * x1 - es[i].t + es[i].q2 * y;
      if (v > best) {
        best = v;
        idx = static_cast<int>(i);
      }
    }
    if (arg) *arg = idx;
    return best;
  };

  ContourSample out;
  bool any_high = false;
  for (const MenuEntry& e : es)
    if (e.q2 > 0.5) any_high = true;
  if (!any_high || high_max(1.0, nullptr) < low_max(1.0, nullptr)) {
    out.t = 1.0;
    out.hi = out.lo = kClampHigh;
    return out;
  }
  if (high_max(0.0, nullptr) > low_max(0.0, nullptr)) {
    out.t = 0.0;
    out.hi = out.lo = kClampLow;
    return out;
  }
  // The difference high - low is strictly increasing; bisect for the
  // root, then solve the active pair exactly.
  double a = 0.0, b = 1.0;
  for (int it = 0; it < 80; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    if (high_max(m, nullptr) - low_max(m, nullptr) <= 0.0)
      a = m;
    else
      b = m;
  }
  const double root = 0.5 * (a + b);
  int hi = -1, lo = -1;
  high_max(root, &hi);
  low_max(root, &lo);
  out.hi = hi;
  out.lo = lo;
  const double sh = es[hi].q2;
  const double bh = es[hi].q1 * x1 - es[hi].t;
  const double sl = lo >= 0 ? es[lo].q2 : 0.0;
  const double bl = lo >= 0 ? (es[lo].q1 * x1 - es[lo].t) : 0.0;
  double t = (bl - bh) / (sh - sl);
  if (!(std::abs(t - root) <= 1e-6)) t = root;  // stale pair near a breakpoint
  out.t = std::clamp(t, 0.0, 1.0);
  return out;
}

inline void contour_build(const std::vector<MenuEntry>& es, double a, double b,
                          const ContourSample& pa, const ContourSample& pb,
                          int depth, std::vector<LinearPiece>& out) {
  if (pa.hi == pb.hi && pa.lo == pb.lo) {
    LinearPiece piece;
    piece.x0 = a;
    piece.x1 = b;
    bool formed = false;
    if (pa.hi == kClampHigh) {
      piece.a0 = 1.0;
      piece.a1 = 0.0;
      formed = true;
    } else if (pa.hi == kClampLow) {
      piece.a0 = 0.0;
      piece.a1 = 0.0;
      formed = true;
    } else if (pa.hi >= 0) {
      const MenuEntry& h = es[pa.hi];
      const double sl = pa.lo >= 0 ? es[pa.lo].q2 : 0.0;
      const double q1l = pa.lo >= 0 ? es[pa.lo].q1 : 0.0;
      const double tl = pa.lo >= 0 ? es[pa.lo].t : 0.0;
      piece.a1 = (q1l - h.q1) / (h.q2 - sl);
      piece.a0 = (h.t - tl) / (h.q2 - sl);
      formed = std::abs(piece.value(a) - pa.t) <= 1e-9 &&
               std::abs(piece.value(b) - pb.t) <= 1e-9;
    }
    if (formed) {
      const double m = 0.5 * (a + b);
      const ContourSample pm = contour_sample(es, m);
      if (pm.hi == pa.hi && pm.lo == pa.lo &&
          std::abs(piece.value(m) - pm.t) <= 1e-9) {
        out.push_back(piece);
        return;
      }
    }
  }
  if (depth >= 50) {
    // Unresolved sliver narrower than any tolerance in play: bridge the
    // endpoint samples linearly.
    LinearPiece piece;
    piece.x0 = a;
    piece.x1 = b;
    piece.a1 = (pb.t - pa.t) / (b - a);
    piece.a0 = pa.t - piece.a1 * a;
    out.push_back(piece);
    return;
  }
  const double m = 0.5 * (a + b);
  const ContourSample pm = contour_sample(es, m);
  contour_build(es, a, m, pa, pm, depth + 1, out);
  contour_build(es, m, b, pm, pb, depth + 1, out);
}

}  // namespace detail

// Switch-height contour of a menu over the certificate strip.
[[nodiscard]] inline PiecewiseLinear allocation_contour(const Menu& m) {
  const InstanceConstants& k = instance_constants();
  const std::vector<MenuEntry>& es = m.entries();
  std::vector<LinearPiece> raw;
  const detail::ContourSample pa = detail::contour_sample(es, 0.0);
  const detail::ContourSample pb = detail::contour_sample(es, k.strip_width);
  detail::contour_build(es, 0.0, k.strip_width, pa, pb, 0, raw);

  PiecewiseLinear out;
  for (const LinearPiece& p : raw) {
    if (!out.pieces.empty()) {
      LinearPiece& last = out.pieces.back();
      if (std::abs(last.a0 - p.a0) <= 1e-10 &&
          std::abs(last.a1 - p.a1) <= 1e-10) {
        last.x1 = p.x1;
        continue;
      }
    }
    out.pieces.push_back(p);
  }
  return out;
}

// ==== deviation measure ====================================================

namespace detail {

// Measure of {x in [x0, x1] : |exclusion_curve(x) - piece(x)| > delta}.
// The difference phi = curve - line is strictly concave, so the far set
// is one interval above the band plus at most two end intervals below.
[[nodiscard]] inline double piece_far_measure(const LinearPiece& p,
                                              double delta) {
  const auto phi = [&](double x) { return exclusion_curve(x) - p.value(x); };
  const double u = p.x0, w = p.x1;
  if (w <= u) return 0.0;

  double xmax;
  if (p.a1 >= exclusion_curve_slope(u))
    xmax = u;
  else if (p.a1 <= exclusion_curve_slope(w))
    xmax = w;
  else
    xmax = (4.0 - std::sqrt(2.0 / -p.a1)) / 5.0;
  xmax = std::clamp(xmax, u, w);
  const double peak = phi(xmax);

  // Bisection run to the floating-point fixpoint; phi is monotone on
  // each side of xmax.
  const auto root = [&](double a, double b, double target, bool rising) {
    while (true) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      if ((phi(m) < target) == rising)
        a = m;
      else
        b = m;
    }
    return 0.5 * (a + b);
  };

  double far = 0.0;
  if (peak > delta) {
    const double lo = phi(u) > delta ? u : root(u, xmax, delta, true);
    const double hi = phi(w) > delta ? w : root(xmax, w, delta, false);
    far += hi - lo;
  }
  if (peak < -delta) return w - u;  // entire piece sits below the band
  if (phi(u) < -delta) far += root(u, xmax, -delta, true) - u;
  if (phi(w) < -delta) far += w - root(xmax, w, -delta, false);
  return far;
}

}  // namespace detail

// Measure of the part of the strip where the contour strays more than
// delta from the exclusion curve.
[[nodiscard]] inline double deviation_measure(const PiecewiseLinear& t,
                                              double delta) {
  require(delta > 0.0, "deviation_measure: delta must be positive");
  double far = 0.0;
  for (const LinearPiece& p : t.pieces)
    far += detail::piece_far_measure(p, delta);
  return far;
}

// ==== gap certificates =====================================================

struct GapCertificate {
  std::string kind;            // "coarse" or "exact"
  double certified_gap = 0.0;  // lower bound on opt - revenue(menu)
  double delta = 0.0;          // coarse: halfwidth used
  double deviation = 0.0;      // coarse: far measure
  double z_term = 0.0;         // exact: utility mass below the curve
  double a_term = 0.0;         // exact: slack above the curve
  double quad_error = 0.0;     // exact: quadrature refinement difference
};

// Coarse certificate: every column whose contour is more than delta away
// from the exclusion curve leaves at least (delta/4)(delta/2) times the
// density floor on the table.
[[nodiscard]] inline GapCertificate certify_gap_coarse(const Menu& m,
                                                       double delta) {
  const InstanceConstants& k = instance_constants();
  require(delta > 0.0 && delta <= k.strip_halfwidth,
          "certify_gap_coarse: delta outside (0, strip_halfwidth]");
  GapCertificate cert;
  cert.kind = "coarse";
  cert.delta = delta;
  cert.deviation = deviation_measure(allocation_contour(m), delta);
  cert.certified_gap =
      (delta / 4.0) * (delta / 2.0) * cert.deviation * k.density_floor;
  return cert;
}

namespace detail {

struct EnvelopePiece {
  double y0 = 0.0, y1 = 0.0;
  double b = 0.0, s = 0.0;
};

// Upper envelope of the utility lines of one column over x2 in [0, 1],
// null entry included, so the envelope is the buyer's utility. The
// active slope strictly increases, one piece per line at most.
[[nodiscard]] inline std::vector<EnvelopePiece> column_envelope(
    const std::vector<MenuEntry>& es, double x1) {
  struct Line {
    double b, s;
  };
  std::vector<Line> lines;
  lines.reserve(es.size() + 1);
  lines.push_back({0.0, 0.0});
  for (const MenuEntry& e : es) lines.push_back({e.q1 * x1 - e.t, e.q2});

  const auto argmax_at = [&](double y) {
    double best = -1e300;
    for (const Line& ln : lines) best = std::max(best, ln.b + ln.s * y);
    std::size_t arg = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const double v = lines[i].b + lines[i].s * y;
      if (v >= best - 1e-14 &&
          (arg == lines.size() || lines[i].s > lines[arg].s))
        arg = i;
    }
    return arg;
  };

  std::vector<EnvelopePiece> out;
  double y = 0.0;
  std::size_t act = argmax_at(0.0);
  for (std::size_t guard = 0; guard <= lines.size() && y < 1.0; ++guard) {
    double ynext = 1.0;
    for (std::size_t j = 0; j < lines.size(); ++j) {
      if (lines[j].s <= lines[act].s) continue;
      const double yc =
          (lines[act].b - lines[j].b) / (lines[j].s - lines[act].s);
      if (yc > y + 1e-15 && yc < ynext) ynext = yc;
    }
    out.push_back({y, ynext, lines[act].b, lines[act].s});
    y = ynext;
    if (y < 1.0) act = argmax_at(y);
  }
  return out;
}

[[nodiscard]] inline double linear_product_integral(double a0, double a1,
                                                    double b0, double b1,
                                                    double lo, double hi) {
  const auto anti = [&](double y) {
    return y * (a0 * b0 + y * (0.5 * (a0 * b1 + a1 * b0) + y * a1 * b1 / 3.0));
  };
  return anti(hi) - anti(lo);
}

}  // namespace detail

struct ColumnGap {
  double z = 0.0;
  double a = 0.0;
};

// Pointwise integrand of the exact certificate in one column: utility
// weighted by -g below the exclusion curve, plus (x2 - utility) weighted
// by g above it. Both parts are nonnegative for every menu: the utility
// envelope is nonnegative with slope at most one, -g > 0 below the
// curve, and the column balance above the curve is zero with g crossing
// from negative to positive once.
[[nodiscard]] inline ColumnGap column_gap(const Menu& m, double x1) {
  double alpha, beta;
  detail::density_coeffs(x1, alpha, beta);
  const double s = exclusion_curve(x1);
  ColumnGap acc;
  for (const detail::EnvelopePiece& p :
       detail::column_envelope(m.entries(), x1)) {
    const double zhi = std::min(p.y1, s);
    if (zhi > p.y0)
      acc.z +=
          detail::linear_product_integral(p.b, p.s, -alpha, -beta, p.y0, zhi);
    const double alo = std::max(p.y0, s);
    if (p.y1 > alo)
      acc.a += detail::linear_product_integral(-p.b, 1.0 - p.s, alpha, beta,
                                               alo, p.y1);
  }
  return acc;
}

// Exact certificate: integral of column_gap over the strip. The outer
// integrand kinks where an envelope breakpoint crosses the exclusion
// curve, where the envelope's active set changes, and where a breakpoint
// leaves [0, 1]; all of those are found in closed form and the panels
// split there, so composite Gauss-Legendre converges to machine
// precision. The reported gap conservatively subtracts the difference
// between the two refinement levels.
[[nodiscard]] inline GapCertificate certify_gap_exact(const Menu& m,
                                                      int panels = 256) {
  require(panels >= 8, "certify_gap_exact: need at least 8 panels");
  const InstanceConstants& k = instance_constants();
  const double xw = k.strip_width;

  // Breakpoint height of a line pair is linear in x1: c0 + c1 * x1.
  struct PairLine {
    double c0, c1;
  };
  std::vector<MenuEntry> lines = m.entries();
  lines.push_back(MenuEntry{});  // null
  std::vector<PairLine> cross;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double dq2 = lines[j].q2 - lines[i].q2;
      if (std::abs(dq2) < 1e-15) continue;
      cross.push_back({(lines[j].t - lines[i].t) / dq2,
                       (lines[i].q1 - lines[j].q1) / dq2});
    }
  }

  std::vector<double> events{0.0, xw};
  const auto add_event = [&](double x) {
    if (x > 1e-13 && x < xw - 1e-13) events.push_back(x);
  };
  for (const PairLine& p : cross) {
    // Breakpoint meets the exclusion curve: (c0 + c1 x)(4 - 5x) = 2 - 3x.
    const double qa = -5.0 * p.c1;
    const double qb = 4.0 * p.c1 - 5.0 * p.c0 + 3.0;
    const double qc = 4.0 * p.c0 - 2.0;
    if (std::abs(qa) < 1e-15) {
      if (std::abs(qb) > 1e-15) add_event(-qc / qb);
    } else {
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc >= 0.0) {
        const double rt = std::sqrt(disc);
        add_event((-qb + rt) / (2.0 * qa));
        add_event((-qb - rt) / (2.0 * qa));
      }
    }
    // Breakpoint leaves the unit interval.
    if (std::abs(p.c1) > 1e-15) {
      add_event(-p.c0 / p.c1);
      add_event((1.0 - p.c0) / p.c1);
    }
  }
  // Two breakpoints collide (the active set changes).
  for (std::size_t i = 0; i < cross.size(); ++i) {
    for (std::size_t j = i + 1; j < cross.size(); ++j) {
      const double dc1 = cross[i].c1 - cross[j].c1;
      if (std::abs(dc1) > 1e-15)
        add_event((cross[j].c0 - cross[i].c0) / dc1);
    }
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end(),
                           [](double a, double b) { return b - a < 1e-13; }),
               events.end());

  const GaussLegendre gl = gauss_legendre(16);
  const auto integrate = [&](int scale) {
    ColumnGap total;
    for (std::size_t e = 0; e + 1 < events.size(); ++e) {
      const double lo = events[e], hi = events[e + 1];
      const int sub =
          std::max(1, static_cast<int>(std::ceil(scale * (hi - lo) / xw)));
      for (int s = 0; s < sub; ++s) {
        const double plo = lo + (hi - lo) * static_cast<double>(s) / sub;
        const double phi = lo + (hi - lo) * static_cast<double>(s + 1) / sub;
        const double mid = 0.5 * (plo + phi), half = 0.5 * (phi - plo);
        for (std::size_t q = 0; q < gl.x.size(); ++q) {
          const ColumnGap cg = column_gap(m, mid + half * gl.x[q]);
          total.z += gl.w[q] * half * cg.z;
          total.a += gl.w[q] * half * cg.a;
        }
      }
    }
    return total;
  };

  const ColumnGap coarse = integrate(panels / 2);
  const ColumnGap fine = integrate(panels);
  GapCertificate cert;
  cert.kind = "exact";
  cert.z_term = fine.z;
  cert.a_term = fine.a;
  cert.quad_error = std::abs(fine.z + fine.a - coarse.z - coarse.a);
  cert.certified_gap = fine.z + fine.a - cert.quad_error;
  return cert;
}

// ==== guarantee parameters =================================================

struct LowerBoundParams {
  double delta = 0.0;       // certificate halfwidth matched to eps
  double size_bound = 0.0;  // menus smaller than this leave more than eps
};

// Parameters tying a target revenue shortfall eps to a menu-size bound.
[[nodiscard]] inline LowerBoundParams lower_bound_params(double eps) {
  const InstanceConstants& k = instance_constants();
  require(eps > 0.0, "lower_bound_params: eps must be positive");
  LowerBoundParams out;
  out.delta = std::sqrt(8.0 * eps / (k.strip_width * k.density_floor));
  require(out.delta <= k.strip_halfwidth,
          "lower_bound_params: eps too large for the audited band");
  out.size_bound =
      k.strip_width / (8.0 * std::sqrt(k.curvature_radius_max * out.delta));
  return out;
}

}  // namespace menukit

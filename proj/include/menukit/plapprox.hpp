// SPDX-License-Identifier: MIT
// Chord-sagitta geometry of the exclusion curve: how wide a line segment
// can stay close to it, greedy piecewise-linear approximations built from
// chords, and the segment-budget check those bounds imply.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "menukit/common.hpp"
#include "menukit/duality.hpp"
#include "menukit/rng.hpp"

namespace menukit {

// ==== chord width bounds ===================================================

struct ChordBound {
  double exact = 0.0;  // width of the widest chord of depth 2 * delta
  double bound = 0.0;  // its cap 4 * sqrt(r * delta)
};

// Widest chord that stays within delta of an arc of curvature radius r:
// the chord cuts 2 * delta deep at most, so its half-width w satisfies
// w^2 = r^2 - (r - 2 delta)^2.
[[nodiscard]] inline ChordBound chord_bound(double r, double delta) {
  require(r > 0.0 && std::isfinite(r), "chord_bound: radius must be positive");
  require(delta > 0.0 && delta <= r, "chord_bound: delta outside (0, r]");
  ChordBound out;
  out.exact = std::sqrt(16.0 * r * delta - 16.0 * delta * delta);
  out.bound = 4.0 * std::sqrt(r * delta);
  return out;
}

// ==== secants of the exclusion curve =======================================

struct ChordDeviation {
  double max_dev = 0.0;  // largest value of curve - secant over the span
  double arg = 0.0;      // abscissa where it is attained
};

// Vertical sagitta of the secant of the exclusion curve over [x0, x1].
// The curve is strictly concave, so curve - secant is nonnegative and
// unimodal with its peak where the curve's slope matches the secant's.
[[nodiscard]] inline ChordDeviation chord_deviation(double x0, double x1) {
  const InstanceConstants& k = instance_constants();
  require(x0 >= 0.0 && x1 <= k.strip_width + 1e-12 && x0 < x1,
          "chord_deviation: span outside the strip");
  const double s0 = exclusion_curve(x0);
  const double a1 = (exclusion_curve(x1) - s0) / (x1 - x0);
  ChordDeviation out;
  out.arg = std::clamp((4.0 - std::sqrt(2.0 / -a1)) / 5.0, x0, x1);
  out.max_dev = exclusion_curve(out.arg) - (s0 + a1 * (out.arg - x0));
  return out;
}

// Measure of {x in [p.x0, p.x1] : |exclusion_curve(x) - p(x)| <= delta},
// the complement of the far set within the piece's span. Never exceeds
// chord_bound(radius, delta).bound for any line.
[[nodiscard]] inline double segment_close_measure(const LinearPiece& p,
                                                  double delta) {
  require(delta > 0.0, "segment_close_measure: delta must be positive");
  return (p.x1 - p.x0) - detail::piece_far_measure(p, delta);
}

// ==== greedy approximation =================================================

// Piecewise-linear approximation of the exclusion curve over the strip:
// each piece is a chord of the curve extended as far as the sup-norm
// budget allows. The accepted sagitta is backed off by a relative hair
// so the far measure of the result at the same delta is exactly zero.
[[nodiscard]] inline PiecewiseLinear greedy_pl_approx(double delta) {
  const InstanceConstants& k = instance_constants();
  require(delta >= 1e-12 && delta <= k.strip_halfwidth,
          "greedy_pl_approx: delta outside [1e-12, strip_halfwidth]");
  const double target = delta * (1.0 - 1e-9);
  PiecewiseLinear t;
  double x0 = 0.0;
  while (x0 < k.strip_width) {
    double hi = k.strip_width;
    if (chord_deviation(x0, hi).max_dev > target) {
      double lo = x0;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (chord_deviation(x0, mid).max_dev <= target ? lo : hi) = mid;
      }
      require(lo > x0, "greedy_pl_approx: no admissible chord");
      hi = lo;
    }
    LinearPiece p;
    p.x0 = x0;
    p.x1 = hi;
    const double s0 = exclusion_curve(x0);
    p.a1 = (exclusion_curve(hi) - s0) / (hi - x0);
    p.a0 = s0 - p.a1 * x0;
    t.pieces.push_back(p);
    x0 = hi;
  }
  return t;
}

// ==== segment budget check =================================================

struct BudgetCheck {
  double budget = 0.0;         // strip_width / (8 sqrt(r * delta))
  std::size_t segments = 0;    // pieces of the contour under test
  double deviation = 0.0;      // far measure of the contour at delta
  bool vacuous = false;        // budget admits no contour at all
  bool within_budget = false;  // the claim applies to this contour
  bool holds = true;           // the claimed implication for this contour
};

// Checks one contour against the claim that any contour made of at most
// strip_width / (8 sqrt(r * delta)) segments strays more than delta from
// the exclusion curve on at least half the strip. Within the budget,
// each segment is close on a span of at most 4 sqrt(r * delta), so the
// close spans cannot cover more than half of strip_width.
[[nodiscard]] inline BudgetCheck segment_budget_check(const PiecewiseLinear& t,
                                                      double delta) {
  const InstanceConstants& k = instance_constants();
  require(delta > 0.0, "segment_budget_check: delta must be positive");
  BudgetCheck out;
  out.budget =
      k.strip_width / (8.0 * std::sqrt(k.curvature_radius_max * delta));
  out.segments = t.segments();
  out.deviation = deviation_measure(t, delta);
  out.vacuous = out.budget < 1.0;
  out.within_budget =
      !out.vacuous &&
      static_cast<double>(out.segments) <= std::floor(out.budget);
  out.holds = !out.within_budget || out.deviation >= 0.5 * k.strip_width;
  return out;
}

// ==== adversarial contour families =========================================

// First n - 1 pieces of t followed by one constant piece to the end of
// t's domain; squeezes a fine contour under a segment budget.
[[nodiscard]] inline PiecewiseLinear truncate_with_constant(
    const PiecewiseLinear& t, std::size_t n) {
  require(n >= 1, "truncate_with_constant: need at least one piece");
  require(!t.pieces.empty(), "truncate_with_constant: empty contour");
  if (n > t.pieces.size()) return t;
  PiecewiseLinear out;
  out.pieces.assign(t.pieces.begin(),
                    t.pieces.begin() + static_cast<std::ptrdiff_t>(n - 1));
  LinearPiece tail;
  tail.x0 = n > 1 ? out.pieces.back().x1 : t.pieces.front().x0;
  tail.x1 = t.pieces.back().x1;
  tail.a0 = n > 1 ? out.pieces.back().value(tail.x0) : t.value(tail.x0);
  tail.a1 = 0.0;
  out.pieces.push_back(tail);
  return out;
}

// Random contour over the strip: sorted random breakpoints, each piece a
// line through a point within offset_scale of the curve at the piece's
// midpoint, with a slope perturbed around the curve's own.
[[nodiscard]] inline PiecewiseLinear random_contour(SplitMix64& rng,
                                                    std::size_t pieces,
                                                    double offset_scale) {
  const InstanceConstants& k = instance_constants();
  require(pieces >= 1, "random_contour: need at least one piece");
  require(offset_scale >= 0.0, "random_contour: offset scale negative");
  std::vector<double> cuts{0.0, k.strip_width};
  for (std::size_t i = 1; i < pieces; ++i)
    cuts.push_back(rng.next_unit() * k.strip_width);
  std::sort(cuts.begin(), cuts.end());
  PiecewiseLinear t;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    LinearPiece p;
    p.x0 = cuts[i];
    p.x1 = cuts[i + 1];
    const double mid = 0.5 * (p.x0 + p.x1);
    const double offset = (2.0 * rng.next_unit() - 1.0) * offset_scale;
    p.a1 = exclusion_curve_slope(mid) + 0.1 * (2.0 * rng.next_unit() - 1.0);
    p.a0 = exclusion_curve(mid) + offset - p.a1 * mid;
    t.pieces.push_back(p);
  }
  return t;
}

}  // namespace menukit

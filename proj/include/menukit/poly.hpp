// SPDX-License-Identifier: MIT
//
// Dense univariate polynomials with ascending coefficients, used for
// density and CDF arithmetic. Degrees stay tiny (single digits), so the
// quadratic-time products below are never a concern.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "menukit/common.hpp"

namespace menukit {

class Poly {
 public:
  Poly() : c_{0.0} {}
  explicit Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
    trim();
  }

  [[nodiscard]] static Poly constant(double c) { return Poly({c}); }

  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] const std::vector<double>& coeffs() const { return c_; }

  [[nodiscard]] double operator()(double x) const {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  [[nodiscard]] Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<double> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      d[i - 1] = static_cast<double>(i) * c_[i];
    return Poly(std::move(d));
  }

  // Antiderivative with zero constant term.
  [[nodiscard]] Poly antiderivative() const {
    std::vector<double> a(c_.size() + 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
      a[i + 1] = c_[i] / static_cast<double>(i + 1);
    return Poly(std::move(a));
  }

  [[nodiscard]] double integral(double a, double b) const {
    Poly F = antiderivative();
    return F(b) - F(a);
  }

  // Coefficients of p(c0 + c1 * x).
  [[nodiscard]] Poly compose_linear(double c0, double c1) const {
    Poly acc;
    Poly inner({c0, c1});
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * inner + Poly::constant(c_[i]);
    }
    return acc;
  }

  [[nodiscard]] Poly operator*(const Poly& o) const {
    std::vector<double> out(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        out[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(out));
  }

  [[nodiscard]] Poly operator+(const Poly& o) const {
    std::vector<double> out(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
    return Poly(std::move(out));
  }

  [[nodiscard]] Poly scaled(double s) const {
    std::vector<double> out = c_;
    for (double& v : out) v *= s;
    return Poly(std::move(out));
  }

 private:
  void trim() {
    while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
  }

  std::vector<double> c_;
};

// Minimum of p over [lo, hi]: endpoint values plus every sign change of
// the derivative, each refined by bisection. scan_n controls the bracket
// scan resolution.
[[nodiscard]] inline double poly_min_on(const Poly& p, double lo, double hi,
                                        int scan_n = 4096) {
  require(hi > lo, "poly_min_on: empty interval");
  const Poly dp = p.derivative();
  double best = std::min(p(lo), p(hi));
  double prev_x = lo;
  double prev_d = dp(lo);
  for (int i = 1; i <= scan_n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / scan_n;
    const double d = dp(x);
    if ((prev_d < 0.0 && d >= 0.0) || (prev_d > 0.0 && d <= 0.0)) {
      double a = prev_x, b = x;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        if ((dp(m) < 0.0) == (prev_d < 0.0))
          a = m;
        else
          b = m;
      }
      best = std::min(best, p(0.5 * (a + b)));
    }
    prev_x = x;
    prev_d = d;
  }
  return best;
}

}  // namespace menukit

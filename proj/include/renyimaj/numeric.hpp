#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "renyimaj/errors.hpp"

namespace renyimaj::numeric {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log(sum_i exp(xs[i])); -inf for an empty or all -inf input.
inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return -kInf;
  const double hi = *std::max_element(xs.begin(), xs.end());
  if (hi == -kInf) return -kInf;
  if (hi == kInf) return kInf;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - hi);
  return hi + std::log(sum);
}

// log(exp(x) - 1) for x > 0, valid past the overflow point of expm1.
inline double log_expm1(double x) {
  if (x > 30.0) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

// Ceiling that first snaps values within `guard` of an integer onto it, so
// rounding noise in an exact integer does not add one.
inline double ceil_guarded(double x, double guard = 1e-9) {
  const double r = std::nearbyint(x);
  if (std::abs(x - r) <= guard) return r;
  return std::ceil(x);
}

struct GoldenResult {
  double x;
  double fx;
  int iterations;
};

// Golden-section minimisation of f over [lo, hi]. Stops once the bracket is
// narrower than `tol` or after `max_iter` shrink steps. The returned point is
// the best one evaluated, including both end points.
template <class F>
GoldenResult golden_section_minimize(F&& f, double lo, double hi, double tol = 1e-12,
                                     int max_iter = 200) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  GoldenResult best{a, f(a), 0};
  const double fb = f(b);
  if (fb < best.fx) best = {b, fb, 0};
  if (!(b - a > tol)) return best;

  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  for (; it < max_iter && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc < best.fx) best = {c, fc, it};
  if (fd < best.fx) best = {d, fd, it};
  best.iterations = it;
  return best;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  detail::require(count >= 2, "grid needs at least two points");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = hi;
  return out;
}

// Geometric grid lo..hi (both > 0) with `count` points.
inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  detail::require(lo > 0.0 && hi > 0.0, "log grid needs positive end points");
  auto exps = linspace(std::log10(lo), std::log10(hi), count);
  for (auto& e : exps) e = std::pow(10.0, e);
  exps.front() = lo;
  exps.back() = hi;
  return exps;
}

}  // namespace renyimaj::numeric

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "renyimaj/errors.hpp"

namespace renyimaj {

// Absolute tolerance for sum-to-one and partial-sum comparisons.
inline constexpr double kMassTolerance = 1e-12;

/// Finite probability mass function.
///
/// Masses are kept in their original order together with a descending copy
/// and the permutation between the two. Ties in the descending order are
/// resolved by original index, so `order()[r]` is the atom ranked r-th.
/// Zero masses are allowed; `p_min()` and `support_size()` ignore them.
class Pmf {
 public:
  explicit Pmf(std::vector<double> masses) : masses_(std::move(masses)) {
    detail::require(!masses_.empty(), "pmf must have at least one atom");
    double total = 0.0;
    for (double m : masses_) {
      detail::require(std::isfinite(m) && m >= 0.0, "pmf masses must be finite and non-negative");
      total += m;
    }
    // summation error grows with the number of terms
    const double tol = std::max(kMassTolerance, 4.0 * static_cast<double>(masses_.size()) *
                                                    std::numeric_limits<double>::epsilon());
    if (std::abs(total - 1.0) > tol) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", total);
      throw DomainError(std::string("pmf masses must sum to 1 (got ") + buf + ")");
    }

    order_.resize(masses_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return masses_[a] > masses_[b]; });
    sorted_.reserve(masses_.size());
    cumulative_.reserve(masses_.size());
    double run = 0.0;
    for (std::size_t idx : order_) {
      sorted_.push_back(masses_[idx]);
      run += masses_[idx];
      cumulative_.push_back(run);
    }
    support_ = static_cast<std::size_t>(
        std::count_if(masses_.begin(), masses_.end(), [](double m) { return m > 0.0; }));
  }

  // Scales non-negative weights to unit total.
  static Pmf normalized(std::vector<double> weights) {
    double total = 0.0;
    for (double w : weights) {
      detail::require(std::isfinite(w) && w >= 0.0, "weights must be finite and non-negative");
      total += w;
    }
    detail::require(total > 0.0, "weights must have a positive total");
    for (double& w : weights) w /= total;
    return Pmf(std::move(weights));
  }

  std::size_t size() const noexcept { return masses_.size(); }
  std::size_t support_size() const noexcept { return support_; }
  double operator[](std::size_t i) const { return masses_[i]; }

  std::span<const double> masses() const noexcept { return masses_; }
  std::span<const double> sorted() const noexcept { return sorted_; }
  std::span<const std::size_t> order() const noexcept { return order_; }

  double p_max() const noexcept { return sorted_.front(); }
  double p_min() const noexcept { return sorted_[support_ - 1]; }

  bool is_sorted_descending() const noexcept {
    return std::is_sorted(masses_.begin(), masses_.end(), std::greater<>());
  }

  /// Sum of the k largest masses, G_P(k). Defined for 1 <= k <= size().
  double partial_sum(std::size_t k) const {
    detail::require(k >= 1 && k <= masses_.size(), "partial_sum: k out of range");
    if (k == masses_.size()) return 1.0;
    return cumulative_[k - 1];
  }

 private:
  std::vector<double> masses_;
  std::vector<double> sorted_;
  std::vector<double> cumulative_;
  std::vector<std::size_t> order_;
  std::size_t support_ = 0;
};

inline Pmf uniform(std::size_t n) {
  detail::require(n >= 1, "uniform: n must be positive");
  return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

inline Pmf point_mass(std::size_t n, std::size_t at = 0) {
  detail::require(at < n, "point_mass: atom out of range");
  std::vector<double> m(n, 0.0);
  m[at] = 1.0;
  return Pmf(std::move(m));
}

// Geometric law truncated to {1..n}: P(j) = (1-a) a^(j-1) / (1-a^n).
inline Pmf geometric(double a, std::size_t n) {
  detail::require(a > 0.0 && a < 1.0, "geometric: a must lie in (0,1)");
  detail::require(n >= 1, "geometric: n must be positive");
  std::vector<double> w(n);
  const double norm = -std::expm1(static_cast<double>(n) * std::log(a));
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = (1.0 - a) * std::pow(a, static_cast<double>(j)) / norm;
  }
  return Pmf::normalized(std::move(w));
}

// Joint law of two independent variables, atoms in row-major (p index major).
inline Pmf product(const Pmf& p, const Pmf& q) {
  std::vector<double> m;
  m.reserve(p.size() * q.size());
  for (double a : p.masses()) {
    for (double b : q.masses()) m.push_back(a * b);
  }
  return Pmf::normalized(std::move(m));
}

// k-fold i.i.d. product.
inline Pmf power(const Pmf& p, int k) {
  detail::require(k >= 1, "power: k must be positive");
  Pmf out = p;
  for (int i = 1; i < k; ++i) out = product(out, p);
  return out;
}

/// True iff p is majorized by q: G_p(k) <= G_q(k) for every k below the
/// common length. The shorter pmf is padded with zeros.
inline bool majorizes(const Pmf& q, const Pmf& p, double tol = kMassTolerance) {
  const std::size_t len = std::max(p.size(), q.size());
  auto g = [](const Pmf& d, std::size_t k) { return k >= d.size() ? 1.0 : d.partial_sum(k); };
  for (std::size_t k = 1; k < len; ++k) {
    if (g(p, k) > g(q, k) + tol) return false;
  }
  return true;
}

/// The ratio class P_n(rho): pmfs on n atoms with p_max / p_min <= rho.
struct MassRatioClass {
  std::size_t n;
  double rho;
};

inline bool in_ratio_class(const Pmf& p, const MassRatioClass& c) {
  detail::require(c.n >= 1 && c.rho >= 1.0, "ratio class needs n >= 1 and rho >= 1");
  detail::require(p.size() == c.n && p.support_size() == c.n,
                  "in_ratio_class: pmf must be strictly positive on exactly n atoms");
  return p.p_max() <= c.rho * p.p_min() * (1.0 + kMassTolerance);
}

}  // namespace renyimaj

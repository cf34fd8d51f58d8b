#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "renyimaj/errors.hpp"
#include "renyimaj/numeric.hpp"
#include "renyimaj/pmf.hpp"

namespace renyimaj {

/// Extended Rényi order alpha in [0, inf]. The points 0, 1 and infinity are
/// tagged exactly; a finite order is never treated as special because it is
/// close to one of them.
class Order {
 public:
  enum class Kind { zero, one, infinity, finite };

  explicit Order(double value) {
    detail::require(!std::isnan(value) && value >= 0.0, "order must be a non-negative number");
    if (value == 0.0) {
      kind_ = Kind::zero;
    } else if (value == 1.0) {
      kind_ = Kind::one;
    } else if (std::isinf(value)) {
      kind_ = Kind::infinity;
    } else {
      kind_ = Kind::finite;
    }
    value_ = value;
  }

  static Order zero() { return Order(0.0); }
  static Order one() { return Order(1.0); }
  static Order infinity() { return Order(std::numeric_limits<double>::infinity()); }

  Kind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }
  bool is_zero() const noexcept { return kind_ == Kind::zero; }
  bool is_one() const noexcept { return kind_ == Kind::one; }
  bool is_infinity() const noexcept { return kind_ == Kind::infinity; }

  friend bool operator==(const Order&, const Order&) = default;

 private:
  Kind kind_ = Kind::one;
  double value_ = 1.0;
};

inline std::string to_string(const Order& a) {
  if (a.is_infinity()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", a.value());
  return buf;
}

/// Logarithm base for reported entropies. All arithmetic runs in nats and
/// is converted once on the way out.
struct LogBase {
  double base = 2.0;

  static LogBase bits() { return {2.0}; }
  static LogBase nats() { return {std::exp(1.0)}; }
  static LogBase of(double b) {
    detail::require(std::isfinite(b) && b > 1.0, "log base must be > 1");
    return {b};
  }

  double ln_base() const { return std::log(base); }
  double from_nats(double x) const { return x / ln_base(); }
  double to_nats(double x) const { return x * ln_base(); }
  double log(double x) const { return std::log(x) / ln_base(); }
};

// Orders within this distance of 1 use the first-order expansion around the
// Shannon value instead of 1/(1-alpha) log sum.
inline constexpr double kNearOneOrder = 1e-7;

/// A mass value repeated `weight` times (weight need not be an integer).
struct WeightedMass {
  double mass;
  double weight;
};

/// Rényi entropy in nats of a pmf given as grouped masses.
inline double renyi_entropy_nats(std::span<const WeightedMass> groups, const Order& alpha) {
  using numeric::kInf;
  switch (alpha.kind()) {
    case Order::Kind::zero: {
      double support = 0.0;
      for (const auto& g : groups) {
        if (g.mass > 0.0) support += g.weight;
      }
      return std::log(support);
    }
    case Order::Kind::infinity: {
      double top = 0.0;
      for (const auto& g : groups) {
        if (g.weight > 0.0) top = std::max(top, g.mass);
      }
      return -std::log(top);
    }
    default:
      break;
  }

  const double a = alpha.value();
  double shannon = 0.0;
  for (const auto& g : groups) {
    if (g.mass > 0.0) shannon -= g.weight * g.mass * std::log(g.mass);
  }
  if (alpha.is_one()) return shannon;

  if (std::abs(a - 1.0) < kNearOneOrder) {
    // H_a = H - (a-1)/2 Var(ln P) + O((a-1)^2)
    double second = 0.0;
    for (const auto& g : groups) {
      if (g.mass > 0.0) {
        const double l = std::log(g.mass);
        second += g.weight * g.mass * l * l;
      }
    }
    const double var = std::max(0.0, second - shannon * shannon);
    return shannon - 0.5 * (a - 1.0) * var;
  }

  // log sum_g w_g m_g^a, shifted by the largest term
  double hi = -kInf;
  for (const auto& g : groups) {
    if (g.mass > 0.0 && g.weight > 0.0) hi = std::max(hi, std::log(g.weight) + a * std::log(g.mass));
  }
  double sum = 0.0;
  for (const auto& g : groups) {
    if (g.mass > 0.0 && g.weight > 0.0) {
      sum += std::exp(std::log(g.weight) + a * std::log(g.mass) - hi);
    }
  }
  return (hi + std::log(sum)) / (1.0 - a);
}

inline std::vector<WeightedMass> as_groups(std::span<const double> masses) {
  std::vector<WeightedMass> g;
  g.reserve(masses.size());
  for (double m : masses) g.push_back({m, 1.0});
  return g;
}

inline double renyi_entropy(const Pmf& p, const Order& alpha, LogBase base = LogBase::bits()) {
  const auto groups = as_groups(p.masses());
  const double h = renyi_entropy_nats(groups, alpha);
  // Clamp rounding noise into [0, log support].
  const double cap = std::log(static_cast<double>(p.support_size()));
  return base.from_nats(std::clamp(h, 0.0, cap));
}

/// Rényi divergence D_alpha(p || q). Infinite values are legal results.
inline double renyi_divergence(const Pmf& p, const Pmf& q, const Order& alpha,
                               LogBase base = LogBase::bits()) {
  using numeric::kInf;
  detail::require(p.size() == q.size(), "renyi_divergence: pmfs must share an alphabet");
  const std::size_t n = p.size();

  bool p_escapes_q = false;  // P puts mass where Q has none
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] > 0.0 && q[i] == 0.0) p_escapes_q = true;
  }

  double nats = 0.0;
  switch (alpha.kind()) {
    case Order::Kind::zero: {
      // The only event of full P-probability that matters is supp(P).
      double q_supp = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (p[i] > 0.0) q_supp += q[i];
      }
      nats = q_supp > 0.0 ? -std::log(std::min(1.0, q_supp)) : kInf;
      break;
    }
    case Order::Kind::infinity: {
      if (p_escapes_q) return kInf;
      double best = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (p[i] > 0.0) best = std::max(best, std::log(p[i]) - std::log(q[i]));
      }
      nats = best;
      break;
    }
    default: {
      const double a = alpha.value();
      if (p_escapes_q && a >= 1.0) return kInf;
      if (alpha.is_one() || (std::abs(a - 1.0) < kNearOneOrder && !p_escapes_q)) {
        double mean = 0.0;
        double second = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (p[i] > 0.0) {
            const double r = std::log(p[i]) - std::log(q[i]);
            mean += p[i] * r;
            second += p[i] * r * r;
          }
        }
        nats = alpha.is_one() ? mean : mean + 0.5 * (a - 1.0) * std::max(0.0, second - mean * mean);
        break;
      }
      std::vector<double> terms;
      for (std::size_t i = 0; i < n; ++i) {
        if (p[i] > 0.0 && q[i] > 0.0) {
          terms.push_back(a * std::log(p[i]) + (1.0 - a) * std::log(q[i]));
        }
      }
      if (terms.empty()) return kInf;
      nats = numeric::log_sum_exp(terms) / (a - 1.0);
      break;
    }
  }
  return base.from_nats(std::max(0.0, nats));
}

}  // namespace renyimaj

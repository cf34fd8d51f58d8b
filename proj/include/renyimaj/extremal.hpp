#pragma once

// Extremal distributions of the mass-ratio class P_n(rho) and the maximal
// Rényi-entropy gap c_alpha^(n)(rho) = log n - min_{P in P_n(rho)} H_alpha(P),
// together with its n -> infinity closed form.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "renyimaj/errors.hpp"
#include "renyimaj/numeric.hpp"
#include "renyimaj/pmf.hpp"
#include "renyimaj/renyi.hpp"

namespace renyimaj {

/// Range of the smallest mass beta of a member of P_n(rho):
/// [1/(1+(n-1)rho), 1/n].
struct BetaWindow {
  double lower;
  double upper;

  bool contains(double beta, double rel_tol = 1e-12) const {
    return beta >= lower * (1.0 - rel_tol) && beta <= upper * (1.0 + rel_tol);
  }
};

inline BetaWindow beta_window(std::size_t n, double rho) {
  detail::require(n >= 1 && rho >= 1.0, "beta_window needs n >= 1 and rho >= 1");
  const double nd = static_cast<double>(n);
  return {1.0 / (1.0 + (nd - 1.0) * rho), 1.0 / nd};
}

struct ExtremalProfile {
  std::size_t n;
  double rho;
  Order alpha;
  double gap;        // in the requested log base
  double beta_star;  // smallest mass of the minimiser
  Pmf q_beta_star;
};

namespace detail {

// floor((1 - n*beta) / ((rho-1)*beta)) clamped to {0..n-1}.
inline std::size_t top_count(std::size_t n, double rho, double beta) {
  const double raw = std::floor((1.0 - static_cast<double>(n) * beta) / ((rho - 1.0) * beta));
  if (!(raw > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(raw), n - 1);
}

// Masses of the three-level pmf (rho*beta x i, middle, beta x (n-i-1)).
inline std::array<WeightedMass, 3> three_level(std::size_t n, double rho, double beta,
                                               std::size_t i) {
  const double nd = static_cast<double>(n);
  const double id = static_cast<double>(i);
  const double middle = std::max(0.0, 1.0 - (nd + id * rho - id - 1.0) * beta);
  return {WeightedMass{rho * beta, id}, WeightedMass{middle, 1.0},
          WeightedMass{beta, nd - id - 1.0}};
}

inline Pmf three_level_pmf(std::size_t n, double rho, double beta, std::size_t i) {
  std::vector<double> m;
  m.reserve(n);
  const double top = rho * beta;
  double head = 0.0;
  for (std::size_t j = 0; j < i; ++j) {
    m.push_back(top);
    head += top;
  }
  const double tail = static_cast<double>(n - i - 1) * beta;
  m.push_back(1.0 - head - tail);
  for (std::size_t j = i + 1; j < n; ++j) m.push_back(beta);
  if (m[i] < 0.0) m[i] = 0.0;
  return Pmf::normalized(std::move(m));
}

}  // namespace detail

/// Majorant of p inside P_n(rho) built from p_min: i masses rho*p_min, one
/// middle mass, and p_min on the rest. Requires p in P_n(rho) and rho > 1.
inline Pmf lemma1_majorant(const Pmf& p, double rho) {
  detail::require(rho > 1.0, "majorant needs rho > 1");
  detail::require(in_ratio_class(p, {p.size(), rho}), "majorant: pmf is not in P_n(rho)");
  const std::size_t n = p.size();
  const double pmin = p.p_min();
  return detail::three_level_pmf(n, rho, pmin, detail::top_count(n, rho, pmin));
}

/// The one-parameter family Q_beta that contains the entropy minimiser of
/// P_n(rho). The middle mass is computed as one minus the rest.
inline Pmf q_beta(std::size_t n, double rho, double beta) {
  detail::require(n >= 2 && rho > 1.0, "q_beta needs n >= 2 and rho > 1");
  detail::require(beta_window(n, rho).contains(beta), "q_beta: beta outside its window");
  const auto w = beta_window(n, rho);
  beta = std::clamp(beta, w.lower, w.upper);
  return detail::three_level_pmf(n, rho, beta, detail::top_count(n, rho, beta));
}

/// Breakpoints beta_i = 1/(n + i(rho-1)), i = 0..n-1, where the index of the
/// middle mass changes. Decreasing in i, from 1/n down to the window floor.
inline std::vector<double> beta_breakpoints(std::size_t n, double rho) {
  std::vector<double> b(n);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = 1.0 / (nd + static_cast<double>(i) * (rho - 1.0));
  return b;
}

inline constexpr int kGoldenMaxIterations = 200;
inline constexpr double kBetaTolerance = 1e-12;

/// Maximal entropy gap on n atoms with mass ratio at most rho.
///
/// Minimises H_alpha(Q_beta) over the beta window. Between consecutive
/// breakpoints the top count is fixed and Q_beta is affine in beta, so each
/// subinterval gets its own golden-section search; the breakpoints are
/// evaluated as well and the global minimum over all candidates is kept.
inline ExtremalProfile gap_finite(std::size_t n, double rho, const Order& alpha,
                                  LogBase base = LogBase::bits()) {
  detail::require(n >= 1, "gap_finite needs n >= 1");
  if (n == 1) return {1, rho, alpha, 0.0, 1.0, uniform(1)};
  if (!(rho > 1.0) || alpha.is_zero()) {
    return {n, rho, alpha, 0.0, 1.0 / static_cast<double>(n), uniform(n)};
  }

  const auto breaks = beta_breakpoints(n, rho);
  const double log_n = std::log(static_cast<double>(n));

  double best_h = numeric::kInf;
  double best_beta = breaks.front();
  auto consider = [&](double beta, double h) {
    if (h < best_h) {
      best_h = h;
      best_beta = beta;
    }
  };

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double hi = breaks[i];
    const double lo = breaks[i + 1];
    auto objective = [&](double beta) {
      const auto g = detail::three_level(n, rho, beta, i);
      return renyi_entropy_nats(g, alpha);
    };
    consider(hi, objective(hi));
    consider(lo, objective(lo));
    const auto r = numeric::golden_section_minimize(objective, lo, hi, kBetaTolerance,
                                                    kGoldenMaxIterations);
    consider(r.x, r.fx);
  }

  Pmf q = q_beta(n, rho, best_beta);
  const double gap_nats = std::clamp(log_n - best_h, 0.0, std::log(rho));
  return {n, rho, alpha, base.from_nats(gap_nats), best_beta, std::move(q)};
}

namespace detail {

inline double eq14_nats(double rho, double a) {
  const double lr = std::log(rho);
  const double rm1 = rho - 1.0;
  if (a > 1.0 && a * lr > 700.0) {
    // rho^a overflows; same expression with every large factor in logs.
    const double L = a * lr;
    const double log_big = L + std::log1p(-(1.0 + a * rm1) * std::exp(-L));
    const double log_scale = std::log(a - 1.0) + std::log(rm1);
    const double t1 = (numeric::log_add_exp(log_scale, log_big) - log_scale) / (a - 1.0);
    const double log_r_minus_1 = L + std::log1p(-std::exp(-L));
    const double t2 = a / (a - 1.0) *
                      std::log1p(std::exp(log_big - std::log(a - 1.0) - log_r_minus_1));
    return t1 - t2;
  }
  const double r_minus_1 = std::expm1(a * lr);
  const double num = a * rm1 - r_minus_1;  // 1 + a(rho-1) - rho^a
  const double t1 = std::log1p(num / ((1.0 - a) * rm1)) / (a - 1.0);
  const double t2 = a / (a - 1.0) * std::log1p(num / ((1.0 - a) * r_minus_1));
  return t1 - t2;
}

inline double eq16_nats(double rho) {
  const double lr = std::log(rho);
  const double s = rho * lr / (rho - 1.0);
  return s - 1.0 - std::log(s);
}

// Orders closer to 1 than this are interpolated between the alpha = 1 value
// and the closed form evaluated at 1 +- kNearOne.
inline constexpr double kNearOne = 1e-6;

template <class General, class AtOne>
double bridge_near_one(double a, General general, AtOne at_one) {
  if (std::abs(a - 1.0) >= kNearOne) return general(a);
  const double c1 = at_one();
  if (a == 1.0) return c1;
  const double side = a > 1.0 ? kNearOne : -kNearOne;
  return c1 + (general(1.0 + side) - c1) * (a - 1.0) / side;
}

}  // namespace detail

/// c_alpha^(infinity)(rho), the n -> infinity limit of the entropy gap.
inline double gap_asymptotic(double rho, const Order& alpha, LogBase base = LogBase::bits()) {
  if (!(rho > 1.0) || alpha.is_zero()) return 0.0;
  if (alpha.is_infinity()) return base.log(rho);
  const double nats = detail::bridge_near_one(
      alpha.value(), [rho](double a) { return detail::eq14_nats(rho, a); },
      [rho] { return detail::eq16_nats(rho); });
  return base.from_nats(std::clamp(nats, 0.0, std::log(rho)));
}

/// Interior maximiser x* in (0,1) of x -> log f_alpha(x) / (alpha-1), with
/// f_alpha(x) = (1 + (rho^alpha - 1) x) / (1 + (rho-1) x)^alpha; x is the
/// asymptotic fraction of atoms carrying the large mass.
inline double asymptotic_maximizer(double rho, const Order& alpha) {
  detail::require(rho > 1.0, "asymptotic_maximizer needs rho > 1");
  detail::require(!alpha.is_zero(), "asymptotic_maximizer needs alpha > 0");
  const double rm1 = rho - 1.0;
  const double lr = std::log(rho);
  if (alpha.is_infinity()) return 0.0;
  auto general = [&](double a) {
    if (a > 1.0) {
      // Divide through by rho^a so large orders stay finite.
      const double inv = std::exp(-a * lr);
      return ((1.0 + a * rm1) * inv - 1.0) / ((1.0 - a) * rm1 * (1.0 - inv));
    }
    const double r_minus_1 = std::expm1(a * lr);
    return (a * rm1 - r_minus_1) / ((1.0 - a) * rm1 * r_minus_1);
  };
  auto at_one = [&] { return (rho * lr - rho + 1.0) / (rm1 * rm1); };
  return detail::bridge_near_one(alpha.value(), general, at_one);
}

/// v(alpha) = c_alpha^(infinity)(2), by its own closed form
/// log((a-1)/(2^a-2)) - a/(a-1) log(a/(2^a-1)), and log(2/(e ln 2)) at 1.
inline double v_of_alpha(const Order& alpha, LogBase base = LogBase::bits()) {
  if (alpha.is_zero()) return 0.0;
  if (alpha.is_infinity()) return base.log(2.0);
  const double ln2 = std::log(2.0);
  auto general = [ln2](double a) {
    const double x = (a - 1.0) * ln2;
    double t1;
    if (x > 30.0) {
      t1 = std::log(a - 1.0) - ln2 - numeric::log_expm1(x);
    } else {
      t1 = std::log((a - 1.0) / (2.0 * std::expm1(x)));
    }
    const double t2 = a / (a - 1.0) * (std::log(a) - numeric::log_expm1(a * ln2));
    return t1 - t2;
  };
  auto at_one = [ln2] { return std::log(2.0 / (std::exp(1.0) * ln2)); };
  return base.from_nats(std::max(0.0, detail::bridge_near_one(alpha.value(), general, at_one)));
}

}  // namespace renyimaj

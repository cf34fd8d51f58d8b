#pragma once

// Guessing moments of i.i.d. blocks and how much clustering the alphabet
// can reduce them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "renyimaj/aggregate.hpp"
#include "renyimaj/errors.hpp"
#include "renyimaj/extremal.hpp"
#include "renyimaj/pmf.hpp"
#include "renyimaj/renyi.hpp"
#include "renyimaj/type_classes.hpp"

namespace renyimaj {

/// Optimal guessing order: atoms by non-increasing mass, ties by index.
class RankingFunction {
 public:
  explicit RankingFunction(const Pmf& p)
      : by_rank_(p.order().begin(), p.order().end()), rank_(p.size()) {
    for (std::size_t r = 0; r < by_rank_.size(); ++r) rank_[by_rank_[r]] = r + 1;
  }

  // 1-based number of guesses needed when X = x.
  std::size_t operator()(std::size_t x) const { return rank_[x]; }
  // Atom guessed at attempt r (1-based).
  std::size_t atom_at(std::size_t r) const { return by_rank_[r - 1]; }
  std::size_t size() const noexcept { return rank_.size(); }
  const std::vector<std::size_t>& ranks() const noexcept { return rank_; }

 private:
  std::vector<std::size_t> by_rank_;
  std::vector<std::size_t> rank_;
};

/// E[g(X)^rho] for an arbitrary guessing function given as 1-based ranks.
inline double guessing_moment(const Pmf& p, const std::vector<std::size_t>& ranks, double rho_g) {
  detail::require(ranks.size() == p.size(), "guessing_moment: rank table size mismatch");
  double sum = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    sum += p[x] * std::pow(static_cast<double>(ranks[x]), rho_g);
  }
  return sum;
}

inline constexpr double kProductSpaceLimit = 1e7;

/// Minimal rho_g-th guessing moment E[g(X^k)^rho_g] of an i.i.d. block of
/// length k, by full ranking of the product space. Sequences are handled per
/// type class, so repeated masses cost nothing extra. Refuses n^k > 1e7.
inline double exact_guessing_moment(const Pmf& p, double rho_g, int k) {
  detail::require(rho_g > 0.0, "guessing moment order must be positive");
  detail::require(k >= 1, "block length must be positive");
  const double n = static_cast<double>(p.support_size());
  if (k * std::log(n) > std::log(kProductSpaceLimit) + 1e-9) {
    throw RefusalError("exact guessing moment refuses n^k > 1e7");
  }

  struct Block {
    double log_prob;
    long long count;
  };
  std::vector<Block> blocks;
  for_each_type_class(group_masses(p), k, [&](const TypeClass& tc) {
    blocks.push_back({tc.log_prob, std::llround(std::exp(tc.log_count))});
  });
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& a, const Block& b) { return a.log_prob > b.log_prob; });

  double moment = 0.0;
  long long rank = 0;
  for (const auto& b : blocks) {
    double ranks = 0.0;
    for (long long l = rank + 1; l <= rank + b.count; ++l) {
      ranks += std::pow(static_cast<double>(l), rho_g);
    }
    moment += std::exp(b.log_prob) * ranks;
    rank += b.count;
  }
  return moment;
}

struct ArikanBounds {
  double lower;
  double upper;
};

/// Bounds on (1/k) log E[g(X^k)^rho_g]:
/// rho_g H_{1/(1+rho_g)}(X) - rho_g log(1 + k ln n)/k <= . <= rho_g H_{1/(1+rho_g)}(X).
inline ArikanBounds arikan_bounds(const Pmf& p, double rho_g, int k,
                                  LogBase base = LogBase::bits()) {
  detail::require(rho_g > 0.0 && k >= 1, "arikan_bounds needs rho_g > 0 and k >= 1");
  const double h = renyi_entropy(p, Order(1.0 / (1.0 + rho_g)), base);
  const double kd = static_cast<double>(k);
  const double slack = rho_g * base.log(1.0 + kd * std::log(static_cast<double>(p.size()))) / kd;
  return {rho_g * h - slack, rho_g * h};
}

struct GuessBoundReport {
  int k;
  double rho_g;
  double lower;  // holds for every f in F_{n,m}
  double upper;  // holds for the Huffman aggregation
};

/// Bounds on (1/k) log(E[g(X^k)^rho_g] / E[g(Y^k)^rho_g]) with Y = f(X).
inline GuessBoundReport clustering_gain_bounds(const Pmf& p, std::size_t m, double rho_g, int k,
                                               LogBase base = LogBase::bits()) {
  detail::require(rho_g > 0.0 && k >= 1, "clustering_gain_bounds needs rho_g > 0 and k >= 1");
  const Order alpha(1.0 / (1.0 + rho_g));
  const double h_x = renyi_entropy(p, alpha, base);
  const double h_tilde = renyi_entropy(tilde_x(p, m), alpha, base);
  const double kd = static_cast<double>(k);
  const double log_n = base.log(1.0 + kd * std::log(static_cast<double>(p.size())));
  const double log_m = base.log(1.0 + kd * std::log(static_cast<double>(m)));
  const double diff = h_x - h_tilde;
  return {k, rho_g, rho_g * diff - rho_g * log_n / kd,
          rho_g * (diff + v_of_alpha(alpha, base)) + rho_g * log_m / kd};
}

}  // namespace renyimaj

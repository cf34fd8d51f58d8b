#pragma once

// Rényi entropy of f(X) over all aggregations f: {1..n} -> {1..m}.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "renyimaj/errors.hpp"
#include "renyimaj/extremal.hpp"
#include "renyimaj/pmf.hpp"
#include "renyimaj/renyi.hpp"

namespace renyimaj {

/// Surjective map from n input atoms onto m output cells (0-based).
class Aggregation {
 public:
  Aggregation(std::vector<std::size_t> map, std::size_t m) : map_(std::move(map)), m_(m) {
    detail::require(m_ >= 1 && !map_.empty(), "aggregation needs m >= 1 and n >= 1");
    std::vector<bool> hit(m_, false);
    for (std::size_t j : map_) {
      detail::require(j < m_, "aggregation: output index out of range");
      hit[j] = true;
    }
    detail::require(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }),
                    "aggregation must be surjective");
  }

  std::size_t n() const noexcept { return map_.size(); }
  std::size_t m() const noexcept { return m_; }
  std::size_t operator()(std::size_t x) const { return map_[x]; }
  const std::vector<std::size_t>& table() const noexcept { return map_; }

  // Pmf of f(X): q(j) = sum of p(i) over f(i) = j.
  Pmf induced(const Pmf& p) const {
    detail::require(p.size() == map_.size(), "aggregation and pmf sizes differ");
    std::vector<double> q(m_, 0.0);
    for (std::size_t i = 0; i < map_.size(); ++i) q[map_[i]] += p[i];
    return Pmf::normalized(std::move(q));
  }

  friend bool operator==(const Aggregation&, const Aggregation&) = default;

 private:
  std::vector<std::size_t> map_;
  std::size_t m_;
};

namespace detail {

inline void check_aggregation_input(const Pmf& p, std::size_t m) {
  require(m >= 2 && m < p.size(), "m must satisfy 2 <= m < n");
  require(p.is_sorted_descending(), "pmf must be sorted in non-increasing order");
}

}  // namespace detail

/// The maximally entropic m-ary pmf majorizing p. Uniform when p(1) < 1/m;
/// otherwise the first n* masses are kept and the remainder is spread evenly,
/// n* being the largest i < m with p(i) >= (p(i+1) + ... + p(n)) / (m - i).
inline Pmf tilde_x(const Pmf& p, std::size_t m) {
  detail::check_aggregation_input(p, m);
  const auto x = p.masses();
  const std::size_t n = x.size();
  const double md = static_cast<double>(m);
  if (x[0] * md < 1.0) return uniform(m);

  // tail[i] = x[i] + ... + x[n-1], accumulated from the small end
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + x[i];

  std::size_t n_star = 0;
  for (std::size_t i = m - 1; i >= 1; --i) {
    // 1-based i: p(i) >= tail(i+1) / (m - i)
    if (x[i - 1] * static_cast<double>(m - i) >= tail[i] - kMassTolerance) {
      n_star = i;
      break;
    }
  }
  if (n_star == 0) {
    throw std::logic_error("tilde_x: no split index found although p(1) >= 1/m");
  }

  std::vector<double> out(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n_star));
  const double spread = tail[n_star] / static_cast<double>(m - n_star);
  out.resize(m, spread);
  return Pmf::normalized(std::move(out));
}

/// Least entropic aggregation: the n-m+1 largest atoms share one cell, the
/// remaining m-1 atoms pass through.
inline Pmf tilde_y(const Pmf& p, std::size_t m) {
  detail::check_aggregation_input(p, m);
  const auto x = p.masses();
  const std::size_t head = x.size() - m + 1;
  std::vector<double> out;
  out.reserve(m);
  double first = 0.0;
  for (std::size_t i = head; i-- > 0;) first += x[i];
  out.push_back(first);
  out.insert(out.end(), x.begin() + static_cast<std::ptrdiff_t>(head), x.end());
  return Pmf::normalized(std::move(out));
}

/// Map realising tilde_y.
inline Aggregation tilde_y_map(const Pmf& p, std::size_t m) {
  detail::check_aggregation_input(p, m);
  const std::size_t n = p.size();
  std::vector<std::size_t> f(n, 0);
  for (std::size_t i = n - m + 1; i < n; ++i) f[i] = i - (n - m);
  return Aggregation(std::move(f), m);
}

struct HuffmanMerge {
  std::size_t first;   // key (largest atom index) of the merged nodes
  std::size_t second;
  double mass;         // mass of the resulting node
};

struct HuffmanTrace {
  std::vector<HuffmanMerge> merges;
  std::vector<double> output;  // Q, non-increasing
  // Largest i such that cells 1..i are the untouched atoms 1..i.
  std::size_t prefix_index = 0;
};

struct HuffmanAggregation {
  Aggregation map;
  HuffmanTrace trace;
};

/// Stops the Huffman algorithm after n-m merges of the two smallest masses
/// and sends every atom to the cell it was merged into. Among equal masses the
/// node holding the larger atom indices is merged first. Output cells are
/// ordered by decreasing mass; masses within rounding of each other count as
/// tied and keep smallest-atom-index order.
inline HuffmanAggregation huffman_aggregate(const Pmf& p, std::size_t m) {
  detail::check_aggregation_input(p, m);
  const std::size_t n = p.size();

  struct Node {
    double mass;
    std::size_t key;  // largest atom index inside
    std::size_t low;  // smallest atom index inside
    std::vector<std::size_t> atoms;
  };
  // top() is the node to merge next: smallest mass, then largest key
  auto later = [](const Node& a, const Node& b) {
    if (a.mass != b.mass) return a.mass > b.mass;
    return a.key < b.key;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(later)> heap(later);
  for (std::size_t i = 0; i < n; ++i) heap.push(Node{p[i], i, i, {i}});

  HuffmanTrace trace;
  trace.merges.reserve(n - m);
  while (heap.size() > m) {
    Node a = heap.top();
    heap.pop();
    Node b = heap.top();
    heap.pop();
    Node merged{a.mass + b.mass, std::max(a.key, b.key), std::min(a.low, b.low), {}};
    merged.atoms = std::move(a.atoms);
    merged.atoms.insert(merged.atoms.end(), b.atoms.begin(), b.atoms.end());
    trace.merges.push_back({a.key, b.key, merged.mass});
    heap.push(std::move(merged));
  }

  std::vector<Node> cells;
  cells.reserve(m);
  while (!heap.empty()) {
    cells.push_back(heap.top());
    heap.pop();
  }
  std::sort(cells.begin(), cells.end(), [](const Node& a, const Node& b) {
    if (a.mass != b.mass) return a.mass > b.mass;
    return a.low < b.low;
  });
  // 0.2 + 0.1 must tie with 0.3: reorder runs of near-equal masses by index
  for (std::size_t s = 0; s < cells.size();) {
    std::size_t e = s + 1;
    while (e < cells.size() && cells[e - 1].mass - cells[e].mass <= kMassTolerance) ++e;
    std::sort(cells.begin() + static_cast<std::ptrdiff_t>(s), cells.begin() + static_cast<std::ptrdiff_t>(e),
              [](const Node& a, const Node& b) { return a.low < b.low; });
    s = e;
  }

  std::vector<std::size_t> f(n, 0);
  for (std::size_t j = 0; j < cells.size(); ++j) {
    for (std::size_t atom : cells[j].atoms) f[atom] = j;
    trace.output.push_back(cells[j].mass);
  }
  // Structural identity: cell j is exactly the single atom j.
  while (trace.prefix_index < m - 1 && cells[trace.prefix_index].atoms.size() == 1 &&
         cells[trace.prefix_index].atoms.front() == trace.prefix_index) {
    ++trace.prefix_index;
  }
  return {Aggregation(std::move(f), m), std::move(trace)};
}

/// Q*: the first i cells of the Huffman output, then their remaining total
/// S spread evenly over the last m - i cells.
inline Pmf q_star(const HuffmanTrace& trace) {
  const std::size_t m = trace.output.size();
  const std::size_t i = trace.prefix_index;
  std::vector<double> out(trace.output.begin(), trace.output.begin() + static_cast<std::ptrdiff_t>(i));
  double s = 0.0;
  for (std::size_t j = i; j < m; ++j) s += trace.output[j];
  out.resize(m, s / static_cast<double>(m - i));
  return Pmf::normalized(std::move(out));
}

struct EntropyRange {
  double lower;      // H(tilde_x) - v(alpha)
  double upper;      // H(tilde_x), an upper bound on every aggregation
  double min_value;  // H(tilde_y), attained
};

inline EntropyRange entropy_range(const Pmf& p, std::size_t m, const Order& alpha,
                                  LogBase base = LogBase::bits()) {
  const double upper = renyi_entropy(tilde_x(p, m), alpha, base);
  return {upper - v_of_alpha(alpha, base), upper, renyi_entropy(tilde_y(p, m), alpha, base)};
}

struct OracleResult {
  double max_value;
  Aggregation argmax;
  double min_value;
  Aggregation argmin;
};

inline constexpr double kOracleLimit = 1e7;

/// Exact extrema of H_alpha(f(X)) over every surjection f, by enumeration
/// of all m^n maps. Only for tiny instances (m^n <= 1e7).
inline OracleResult exhaustive_oracle(const Pmf& p, std::size_t m, const Order& alpha,
                                      LogBase base = LogBase::bits()) {
  const std::size_t n = p.size();
  detail::require(m >= 1 && m <= 64, "oracle needs 1 <= m <= 64");
  if (static_cast<double>(n) * std::log(static_cast<double>(m)) > std::log(kOracleLimit) + 1e-9) {
    throw RefusalError("exhaustive oracle refuses m^n > 1e7 (n=" + std::to_string(n) +
                       ", m=" + std::to_string(m) + ")");
  }
  const std::uint64_t full = m >= 64 ? ~0ULL : ((std::uint64_t{1} << m) - 1);

  std::vector<std::size_t> digits(n, 0);
  std::vector<WeightedMass> q(m);
  double best_hi = -numeric::kInf;
  double best_lo = numeric::kInf;
  std::vector<std::size_t> arg_hi, arg_lo;

  for (;;) {
    std::uint64_t seen = 0;
    for (std::size_t d : digits) seen |= std::uint64_t{1} << d;
    if (seen == full) {
      for (auto& c : q) c = {0.0, 1.0};
      for (std::size_t i = 0; i < n; ++i) q[digits[i]].mass += p[i];
      const double h = renyi_entropy_nats(q, alpha);
      if (h > best_hi) {
        best_hi = h;
        arg_hi = digits;
      }
      if (h < best_lo) {
        best_lo = h;
        arg_lo = digits;
      }
    }
    std::size_t pos = 0;
    while (pos < n && ++digits[pos] == m) digits[pos++] = 0;
    if (pos == n) break;
  }
  detail::require(!arg_hi.empty(), "oracle: no surjection exists (m > n)");
  return {base.from_nats(best_hi), Aggregation(std::move(arg_hi), m), base.from_nats(best_lo),
          Aggregation(std::move(arg_lo), m)};
}

}  // namespace renyimaj

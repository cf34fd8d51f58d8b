#pragma once

// Campbell's exponentially weighted code lengths, their scaled cumulant
// generating function, and prefix-code materialisation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "renyimaj/aggregate.hpp"
#include "renyimaj/errors.hpp"
#include "renyimaj/extremal.hpp"
#include "renyimaj/numeric.hpp"
#include "renyimaj/pmf.hpp"
#include "renyimaj/renyi.hpp"
#include "renyimaj/type_classes.hpp"

namespace renyimaj {

inline constexpr double kTypeClassLimit = 1e7;
inline constexpr double kCodebookLimit = 1 << 20;
inline constexpr double kKraftTolerance = 1e-12;

struct TypeClassCode {
  std::vector<int> counts;
  double log_prob;
  double log_count;
  int length;
};

/// Length assignment that is constant on type classes of X^k.
struct CodeSpec {
  int alphabet = 2;  // D
  int block_length = 1;
  double rho = 1.0;
  std::vector<MassGroup> groups;
  std::vector<TypeClassCode> classes;

  double log_kraft() const {
    std::vector<double> terms;
    terms.reserve(classes.size());
    const double ln_d = std::log(static_cast<double>(alphabet));
    for (const auto& c : classes) terms.push_back(c.log_count - c.length * ln_d);
    return numeric::log_sum_exp(terms);
  }
  double kraft_sum() const { return std::exp(log_kraft()); }

  // E[l(X^k)], exact over type classes.
  double expected_length() const {
    double e = 0.0;
    for (const auto& c : classes) e += std::exp(c.log_count + c.log_prob) * c.length;
    return e;
  }

  double sequence_count() const {
    std::vector<double> terms;
    for (const auto& c : classes) terms.push_back(c.log_count);
    return std::exp(numeric::log_sum_exp(terms));
  }

  /// Length of the codeword of one sequence of original atom indices.
  int length_of(std::span<const std::size_t> sequence) const {
    detail::require(static_cast<int>(sequence.size()) == block_length,
                    "length_of: sequence length differs from block length");
    std::vector<int> counts(groups.size(), 0);
    for (std::size_t atom : sequence) {
      bool found = false;
      for (std::size_t g = 0; g < groups.size() && !found; ++g) {
        const auto& a = groups[g].atoms;
        if (std::find(a.begin(), a.end(), atom) != a.end()) {
          ++counts[g];
          found = true;
        }
      }
      detail::require(found, "length_of: atom outside the support");
    }
    for (const auto& c : classes) {
      if (c.counts == counts) return c.length;
    }
    throw DomainError("length_of: no matching type class");
  }
};

/// l(x^k) = ceil(-alpha log_D P(x^k) + log_D Q_k), alpha = 1/(1+rho),
/// Q_k = (sum_x P(x)^alpha)^k. Values within 1e-9 of an integer are snapped
/// before the ceiling; lengths are at least 1.
inline CodeSpec campbell_lengths(const Pmf& p, double rho_c, int k, int D) {
  detail::require(rho_c > 0.0, "cumulant order must be positive");
  detail::require(k >= 1, "block length must be positive");
  detail::require(D >= 2, "code alphabet must have at least two letters");

  CodeSpec spec;
  spec.alphabet = D;
  spec.block_length = k;
  spec.rho = rho_c;
  spec.groups = group_masses(p);
  if (type_class_count(spec.groups.size(), k) > kTypeClassLimit) {
    throw RefusalError("campbell_lengths: more than 1e7 type classes; reduce k or the alphabet");
  }

  const double alpha = 1.0 / (1.0 + rho_c);
  std::vector<double> terms;
  for (const auto& g : spec.groups) {
    terms.push_back(std::log(static_cast<double>(g.multiplicity())) + alpha * std::log(g.mass));
  }
  const double log_q = k * numeric::log_sum_exp(terms);
  const double ln_d = std::log(static_cast<double>(D));

  for_each_type_class(spec.groups, k, [&](const TypeClass& tc) {
    const double raw = (-alpha * tc.log_prob + log_q) / ln_d;
    const int len = std::max(1, static_cast<int>(numeric::ceil_guarded(raw)));
    spec.classes.push_back({tc.counts, tc.log_prob, tc.log_count, len});
  });
  return spec;
}

struct CumulantValue {
  double lambda;  // Lambda_k(rho), D-ary units per source symbol
};

/// Lambda_k(rho) = (1/k) log_D sum P(x^k) D^(rho l(x^k)), by type classes.
inline CumulantValue scaled_cumulant(const CodeSpec& spec, double rho) {
  detail::require(rho > 0.0, "cumulant order must be positive");
  const double ln_d = std::log(static_cast<double>(spec.alphabet));
  std::vector<double> terms;
  terms.reserve(spec.classes.size());
  for (const auto& c : spec.classes) {
    terms.push_back(c.log_count + c.log_prob + rho * c.length * ln_d);
  }
  return {numeric::log_sum_exp(terms) / ln_d / spec.block_length};
}

inline CumulantValue scaled_cumulant(const CodeSpec& spec) { return scaled_cumulant(spec, spec.rho); }

/// Lambda_k(rho) of an explicit per-sequence assignment.
inline double scaled_cumulant(std::span<const double> probs, std::span<const int> lengths,
                              double rho, int D, int k) {
  detail::require(probs.size() == lengths.size(), "probabilities and lengths differ in size");
  const double ln_d = std::log(static_cast<double>(D));
  std::vector<double> terms;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) terms.push_back(std::log(probs[i]) + rho * lengths[i] * ln_d);
  }
  return numeric::log_sum_exp(terms) / ln_d / k;
}

inline double kraft_sum(std::span<const int> lengths, int D) {
  double s = 0.0;
  for (int l : lengths) s += std::pow(static_cast<double>(D), -l);
  return s;
}

struct CampbellBounds {
  double converse;       // H_{1/(1+rho)}(X) / log D
  double achievability;  // converse + 1/k
};

inline CampbellBounds campbell_bounds(const Pmf& p, double rho_c, int D, int k) {
  detail::require(rho_c > 0.0 && D >= 2 && k >= 1, "campbell_bounds: invalid parameters");
  const double c = renyi_entropy(p, Order(1.0 / (1.0 + rho_c)), LogBase::of(D));
  return {c, c + 1.0 / k};
}

struct CumulantGainBounds {
  double lower;
  double upper;
};

/// Bounds on Lambda_k(rho) - Lambda_bar_k(rho) when Y = f*(X) is the
/// Huffman aggregation and both codes follow campbell_lengths.
inline CumulantGainBounds clustering_cumulant_bounds(const Pmf& p, std::size_t m, double rho_c,
                                                     int D, int k) {
  detail::require(rho_c > 0.0 && D >= 2 && k >= 1, "clustering_cumulant_bounds: invalid parameters");
  const Order alpha(1.0 / (1.0 + rho_c));
  const LogBase base = LogBase::of(D);
  const double diff = renyi_entropy(p, alpha, base) - renyi_entropy(tilde_x(p, m), alpha, base);
  const double v = v_of_alpha(alpha, base);
  return {rho_c * diff - rho_c / k, rho_c * (diff + v) + rho_c / k};
}

/// D-ary digit for 0 <= d < 36.
inline char code_digit(int d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10)); }

/// Canonical prefix code for the given lengths: shortest first, each
/// codeword the previous one plus one, left-aligned to its own length.
/// Codewords are returned in the input order.
inline std::vector<std::string> canonical_code(std::span<const int> lengths, int D) {
  detail::require(D >= 2 && D <= 36, "codeword strings support 2 <= D <= 36");
  for (int l : lengths) detail::require(l >= 1, "codeword lengths must be >= 1");
  if (kraft_sum(lengths, D) > 1.0 + kKraftTolerance) {
    throw DomainError("canonical_code: lengths violate the Kraft inequality");
  }
  std::vector<std::size_t> idx(lengths.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return lengths[a] < lengths[b]; });

  std::vector<std::string> out(lengths.size());
  std::vector<int> word;
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const int len = lengths[idx[r]];
    if (r > 0) {
      std::size_t pos = word.size();
      while (pos > 0 && ++word[pos - 1] == D) word[--pos] = 0;
      if (pos == 0) throw DomainError("canonical_code: code space exhausted");
    }
    word.resize(static_cast<std::size_t>(len), 0);
    std::string s;
    s.reserve(word.size());
    for (int d : word) s.push_back(code_digit(d));
    out[idx[r]] = std::move(s);
  }
  return out;
}

inline bool is_prefix_free(std::vector<std::string> words) {
  std::sort(words.begin(), words.end());
  for (std::size_t i = 1; i < words.size(); ++i) {
    const auto& a = words[i - 1];
    const auto& b = words[i];
    if (b.size() >= a.size() && b.compare(0, a.size(), a) == 0) return false;
  }
  return true;
}

struct Codeword {
  std::vector<std::size_t> symbols;  // original atom indices, 0-based
  std::string codeword;
};

/// Materialises the prefix code of a CodeSpec over every positive-probability
/// sequence, in lexicographic order of the symbols. At most 2^20 codewords.
inline std::vector<Codeword> build_prefix_code(const CodeSpec& spec) {
  if (spec.kraft_sum() > 1.0 + kKraftTolerance) {
    throw DomainError("build_prefix_code: lengths violate the Kraft inequality");
  }
  if (spec.sequence_count() > kCodebookLimit + 0.5) {
    throw RefusalError("build_prefix_code: more than 2^20 codewords; query lengths per type class");
  }
  std::vector<std::size_t> atoms;
  for (const auto& g : spec.groups) atoms.insert(atoms.end(), g.atoms.begin(), g.atoms.end());
  std::sort(atoms.begin(), atoms.end());

  const auto k = static_cast<std::size_t>(spec.block_length);
  std::vector<Codeword> book;
  std::vector<int> lengths;
  std::vector<std::size_t> digits(k, 0);
  for (;;) {
    Codeword cw;
    cw.symbols.reserve(k);
    for (std::size_t d : digits) cw.symbols.push_back(atoms[d]);
    lengths.push_back(spec.length_of(cw.symbols));
    book.push_back(std::move(cw));
    std::size_t pos = k;
    while (pos > 0 && ++digits[pos - 1] == atoms.size()) digits[--pos] = 0;
    if (pos == 0) break;
  }
  auto words = canonical_code(lengths, spec.alphabet);
  for (std::size_t i = 0; i < book.size(); ++i) book[i].codeword = std::move(words[i]);
  return book;
}

struct TunstallBound {
  double tight;       // with the finite-n gap
  double loose;       // with the n -> infinity gap
  double gap_finite;  // c_1^(n)(1/p_min), bits
  double gap_limit;   // c_1^(infinity)(1/p_min), bits
};

/// Upper bound on the rate (bits per source symbol) of a Tunstall code with
/// n_cw codewords: ceil(log2 n) H(X) / (log2 n - c_1^(n)(1/p_min)).
inline TunstallBound tunstall_rate_bound(const Pmf& p, std::size_t n_cw) {
  detail::require(p.support_size() == p.size(), "tunstall bound needs a strictly positive pmf");
  detail::require(n_cw >= 2, "tunstall bound needs at least two codewords");
  const double rho = 1.0 / p.p_min();
  const double h = renyi_entropy(p, Order::one(), LogBase::bits());
  const double log_n = std::log2(static_cast<double>(n_cw));
  const double width = std::ceil(log_n - 1e-12);
  const double c_n = gap_finite(n_cw, rho, Order::one(), LogBase::bits()).gap;
  const double c_inf = gap_asymptotic(rho, Order::one(), LogBase::bits());
  if (!(log_n > c_n)) {
    throw DegenerateBoundError("tunstall bound: log2 n does not exceed the entropy gap");
  }
  const double loose = log_n > c_inf ? width * h / (log_n - c_inf) : numeric::kInf;
  return {width * h / (log_n - c_n), loose, c_n, c_inf};
}

}  // namespace renyimaj

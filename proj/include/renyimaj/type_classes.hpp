#pragma once

// Method of types over the distinct mass values of a pmf. A type class is a
// count vector over the distinct values; every length-k sequence in it has
// the same probability.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "renyimaj/pmf.hpp"

namespace renyimaj {

struct MassGroup {
  double mass;
  std::vector<std::size_t> atoms;  // original indices carrying this mass

  std::size_t multiplicity() const noexcept { return atoms.size(); }
};

/// Distinct positive masses of p (exact equality), largest first.
inline std::vector<MassGroup> group_masses(const Pmf& p) {
  std::vector<MassGroup> groups;
  for (std::size_t r = 0; r < p.size(); ++r) {
    const std::size_t atom = p.order()[r];
    const double mass = p[atom];
    if (mass <= 0.0) break;
    if (groups.empty() || groups.back().mass != mass) groups.push_back({mass, {}});
    groups.back().atoms.push_back(atom);
  }
  return groups;
}

struct TypeClass {
  std::vector<int> counts;  // per mass group, summing to k
  double log_prob;          // ln of the common sequence probability
  double log_count;         // ln of the number of sequences in the class
};

/// C(k + d - 1, d - 1), saturating at the largest double.
inline double type_class_count(std::size_t groups, int k) {
  if (groups == 0) return 0.0;
  const double lg = std::lgamma(k + static_cast<double>(groups)) - std::lgamma(k + 1.0) -
                    std::lgamma(static_cast<double>(groups));
  return lg > 700.0 ? std::numeric_limits<double>::max() : std::round(std::exp(lg));
}

/// Calls visit(const TypeClass&) for every composition of k over the groups.
template <class Visit>
void for_each_type_class(const std::vector<MassGroup>& groups, int k, Visit&& visit) {
  const std::size_t d = groups.size();
  if (d == 0) return;
  std::vector<double> log_mass(d), log_mult(d);
  for (std::size_t g = 0; g < d; ++g) {
    log_mass[g] = std::log(groups[g].mass);
    log_mult[g] = std::log(static_cast<double>(groups[g].multiplicity()));
  }
  const double lg_k = std::lgamma(k + 1.0);

  TypeClass tc{std::vector<int>(d, 0), 0.0, 0.0};
  // Odometer over compositions, emitted in reverse-lexicographic order.
  std::vector<int>& c = tc.counts;
  c[0] = k;
  for (;;) {
    double lp = 0.0;
    double lc = lg_k;
    for (std::size_t g = 0; g < d; ++g) {
      if (c[g] == 0) continue;
      lp += c[g] * log_mass[g];
      lc += c[g] * log_mult[g] - std::lgamma(c[g] + 1.0);
    }
    tc.log_prob = lp;
    tc.log_count = lc;
    visit(static_cast<const TypeClass&>(tc));

    // Rightmost non-zero slot before the last one gives one unit to its
    // neighbour, which also collects whatever sat in the last slot.
    std::size_t j = d - 1;
    while (j > 0 && c[j - 1] == 0) --j;
    if (j == 0) return;
    --j;
    const int tail = c[d - 1];
    c[d - 1] = 0;
    --c[j];
    c[j + 1] = tail + 1;
  }
}

}  // namespace renyimaj

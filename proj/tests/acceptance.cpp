// Acceptance checks 1-10. One PASS/FAIL line per criterion; exit status is
// the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "renyimaj/renyimaj.hpp"

using namespace renyimaj;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::vector<double> vec(const Pmf& p) { return {p.masses().begin(), p.masses().end()}; }

Outcome c1_v_of_one() {
  const auto t0 = Clock::now();
  const double v = v_of_alpha(Order::one());
  const double dt = seconds_since(t0);
  const double exact = std::log2(2.0 / (std::exp(1.0) * std::log(2.0)));
  const bool pass = std::abs(v - 0.08607) < 1e-4 && std::abs(v - exact) < 1e-15 && dt < 1e-3;
  return {pass, fmt("v(1)=%.10f bits, |v-0.08607|=%.2e, time=%.2e s", v, std::abs(v - 0.08607), dt)};
}

Outcome c2_order_two() {
  double worst = 0.0;
  for (double rho : {1.1, 2.0, 10.0, 1000.0}) {
    const double want = std::log2((1 + rho) * (1 + rho) / (4 * rho));
    worst = std::max(worst, std::abs(gap_asymptotic(rho, Order(2.0)) - want));
  }
  return {worst <= 1e-10, fmt("max |c_2(rho) - log2((1+rho)^2/(4 rho))| = %.2e", worst)};
}

// The alpha -> 1 part is checked as written: the general formula at
// alpha = 1 +- 1e-4 against the order-one formula, 1e-6. The closed form's
// slope in alpha makes that difference ~1e-5..4e-4 bits for most rho, so this
// part fails for any faithful evaluation. The two-sided average, whose error
// is second order, is printed next to it.
Outcome c3_limits() {
  bool pass = true;
  std::string d;
  double worst_big = 0.0;
  for (double rho : {1.1, 2.0, 3.0, 10.0, 1000.0}) {
    worst_big = std::max(worst_big, std::abs(gap_asymptotic(rho, Order(1e6)) - std::log2(rho)));
  }
  pass &= worst_big < 1e-3;
  double worst_flat = 0.0;
  for (double a : {0.25, 0.5, 1.0, 2.0, 4.0, 1e6}) {
    worst_flat = std::max(worst_flat, gap_asymptotic(1.0 + 1e-9, Order(a)));
  }
  pass &= worst_flat < 1e-6;
  double worst_mid = 0.0, worst_side = 0.0;
  for (double rho : {1.1, 2.0, 10.0, 1000.0}) {
    const double at_one = gap_asymptotic(rho, Order::one());
    const double lo = gap_asymptotic(rho, Order(1 - 1e-4));
    const double hi = gap_asymptotic(rho, Order(1 + 1e-4));
    worst_mid = std::max(worst_mid, std::abs(0.5 * (lo + hi) - at_one));
    worst_side = std::max({worst_side, std::abs(lo - at_one), std::abs(hi - at_one)});
  }
  pass &= worst_side < 1e-6;
  d = fmt("alpha=1e6: %.2e; rho=1+1e-9: %.2e; alpha=1+-1e-4 one-sided: %.2e (two-sided average: %.2e)",
          worst_big, worst_flat, worst_side, worst_mid);
  return {pass, d};
}

Outcome c4_chain() {
  const auto t0 = Clock::now();
  double worst = 0.0;  // largest violation of any link
  for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    for (double rho : {1.5, 2.0, 8.0, 256.0}) {
      const Order o(a);
      const double inf = gap_asymptotic(rho, o);
      double prev = 0.0;
      for (std::size_t n : {2u, 4u, 8u, 16u, 32u}) {
        const double g = gap_finite(n, rho, o).gap;
        const double g2 = gap_finite(2 * n, rho, o).gap;
        worst = std::max({worst, -g, prev - g, g - g2, g2 - inf, inf - std::log2(rho)});
        prev = g;
      }
    }
  }
  const double dt = seconds_since(t0);
  return {worst <= 1e-9 && dt < 10.0, fmt("largest chain violation %.2e, time %.3f s", worst, dt)};
}

Outcome c5_aggregation_range() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1005);
  int bad = 0;
  double worst_min = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 5 + t % 3;
    const std::size_t m = 2 + (t / 3) % 3;
    Pmf p(oracle::random_pmf(rng, n, true));
    const Pmf y = huffman_aggregate(p, m).map.induced(p);
    for (double a : {0.5, 1.0, 2.0, oracle::kInf}) {
      const Order o(a);
      const auto r = entropy_range(p, m, o);
      const auto ex = exhaustive_oracle(p, m, o);
      const double hf = renyi_entropy(y, o);
      if (ex.max_value < r.lower - 1e-12 || ex.max_value > r.upper + 1e-12) ++bad;
      if (hf < r.lower - 1e-12 || hf > r.upper + 1e-12) ++bad;
      worst_min = std::max(worst_min, std::abs(ex.min_value - r.min_value));
    }
  }
  const double dt = seconds_since(t0);
  return {bad == 0 && worst_min <= 1e-10 && dt < 60.0,
          fmt("%g interval violations, max |min - H(Y~)| = %.2e, time %.2f s", bad, worst_min, dt)};
}

Outcome c6_arikan() {
  std::mt19937_64 rng(1006);
  int bad = 0, checks = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 5;
    const int k = 1 + (t / 5) % 3;
    auto v = oracle::random_pmf(rng, n);
    for (double rho : {0.5, 1.0, 2.0}) {
      const auto b = arikan_bounds(Pmf(v), rho, k);
      const double e = std::log2(oracle::guessing_moment(v, rho, k)) / k;
      const double lib = std::log2(exact_guessing_moment(Pmf(v), rho, k)) / k;
      ++checks;
      if (e < b.lower - 1e-10 || e > b.upper + 1e-10 || std::abs(e - lib) > 1e-10) ++bad;
    }
  }
  return {bad == 0, fmt("%g violations in %g checks", bad, checks)};
}

Outcome c7_example1() {
  const auto dir = std::filesystem::temp_directory_path();
  const auto t0 = Clock::now();
  emit_figure({FigureId::guessing_k100, (dir / "acceptance_fig4L.csv").string(), 100});
  emit_figure({FigureId::guessing_k1000, (dir / "acceptance_fig4R.csv").string(), 100});
  const double dt = seconds_since(t0);

  const auto left = make_figure(FigureId::guessing_k100, 100);
  const auto right = make_figure(FigureId::guessing_k1000, 100);
  const double logs = std::log2(1 + 1000 * std::log(128.0)) + std::log2(1 + 1000 * std::log(16.0));
  int bad_bound = 0, bad_order = 0;
  double worst_margin = -1.0;
  for (std::size_t i = 0; i < right.rows.size(); ++i) {
    const double rho = right.rows[i][1];
    const double gap_r = right.rows[i][3] - right.rows[i][2];
    const double gap_l = left.rows[i][3] - left.rows[i][2];
    const double limit = 0.08607 + rho * logs / 1000;
    worst_margin = std::max(worst_margin, gap_r - limit);
    if (!(gap_r < limit)) ++bad_bound;
    if (!(gap_l > gap_r)) ++bad_order;
  }
  return {bad_bound == 0 && bad_order == 0 && dt < 5.0,
          fmt("k=1000 over-limit points %g (max gap - limit = %.4f), k=100 not wider at %g points, csv %.3f s",
              bad_bound, worst_margin, bad_order, dt)};
}

Outcome c8_campbell() {
  std::mt19937_64 rng(1008);
  int bad_kraft = 0, bad_ach = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + t % 4;
    auto v = oracle::random_pmf(rng, n);
    Pmf p(v);
    for (int k = 1; k <= 4; ++k) {
      for (double rho : {0.5, 1.0, 2.0}) {
        for (int D : {2, 3}) {
          const auto spec = campbell_lengths(p, rho, k, D);
          if (spec.kraft_sum() > 1.0 + 1e-12) ++bad_kraft;
          const double lam = scaled_cumulant(spec).lambda;
          const auto b = campbell_bounds(p, rho, D, k);
          if (lam / rho > b.achievability + 1e-12 || lam / rho < b.converse - 1e-12) ++bad_ach;
        }
      }
    }
  }
  int bad_conv = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + t % 3;
    const int k = 1 + t % 3;
    const int D = 2 + t % 2;
    const double rho = 0.5 * (1 << (t % 3));
    auto v = oracle::random_pmf(rng, n);
    auto probs = oracle::product_masses(v, k);
    auto lens = oracle::random_kraft_lengths(rng, probs.size(), D);
    const double lam = scaled_cumulant(probs, lens, rho, D, k);
    if (lam / rho < campbell_bounds(Pmf(v), rho, D, k).converse - 1e-10) ++bad_conv;
  }
  double worst_mean = 0.0;
  for (int t = 0; t < 20; ++t) {
    auto v = oracle::random_pmf(rng, 2 + t % 4);
    const int k = 1 + t % 4;
    const auto spec = campbell_lengths(Pmf(v), 1e-6, k, 2);
    worst_mean = std::max(worst_mean, std::abs(scaled_cumulant(spec).lambda / 1e-6 - spec.expected_length() / k));
  }
  return {bad_kraft == 0 && bad_ach == 0 && bad_conv == 0 && worst_mean < 1e-4,
          fmt("Kraft violations %g, achievability violations %g, converse violations %g, |Lambda/rho - E[l]/k| %.2e",
              bad_kraft, bad_ach, bad_conv, worst_mean)};
}

// The average-length bracket is checked as stated, with no 1/k on the upper
// side. Passing the cumulant upper bound to the rho -> 0 limit gives an extra
// +1/k there; the count under that form is printed as well.
Outcome c9_clustered_codes() {
  std::mt19937_64 rng(1009);
  int bad_cum = 0, bad_lower = 0, bad_upper = 0, bad_upper_k = 0;
  double worst_upper_margin = -1.0;
  const int k = 3, D = 2;
  const int instances = 25;
  for (int t = 0; t < instances; ++t) {
    Pmf p(oracle::random_pmf(rng, 6, true));
    const Pmf y = huffman_aggregate(p, 3).map.induced(p);
    const double diff = scaled_cumulant(campbell_lengths(p, 1.0, k, D)).lambda -
                        scaled_cumulant(campbell_lengths(y, 1.0, k, D)).lambda;
    const auto b = clustering_cumulant_bounds(p, 3, 1.0, D, k);
    if (diff < b.lower - 1e-12 || diff > b.upper + 1e-12) ++bad_cum;

    // mean lengths of the same construction as rho_c -> 0
    const double ex = campbell_lengths(p, 1e-6, k, D).expected_length();
    const double ey = campbell_lengths(y, 1e-6, k, D).expected_length();
    const double h_gap = renyi_entropy(p, Order::one()) - renyi_entropy(tilde_x(p, 3), Order::one());
    const double avg = (ex - ey) / k;
    const double upper = h_gap + 0.08607;
    worst_upper_margin = std::max(worst_upper_margin, avg - upper);
    if (avg < h_gap - 1.0 / k - 1e-12) ++bad_lower;
    if (avg > upper + 1e-12) ++bad_upper;
    if (avg > upper + 1.0 / k + 1e-12) ++bad_upper_k;
  }
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "%d instances: cumulant-difference violations %d; mean-length lower violations %d, upper "
                "violations %d (max excess %.4f bits); with +1/k on the upper side: %d",
                instances, bad_cum, bad_lower, bad_upper, worst_upper_margin, bad_upper_k);
  return {bad_cum == 0 && bad_lower == 0 && bad_upper == 0, buf};
}

Outcome c10_properties() {
  std::mt19937_64 rng(1010);
  int schur = 0, ident = 0, mono = 0, add = 0, prefix = 0;
  const std::vector<double> alphas{0.25, 0.5, 1.0, 2.0, 7.0};
  for (int t = 0; t < 1000; ++t) {
    auto q = oracle::random_pmf(rng, 3 + t % 8);
    auto p = oracle::t_transform(q, rng);
    for (int r = 0; r < t % 3; ++r) p = oracle::t_transform(p, rng);
    if (!majorizes(Pmf(q), Pmf(p))) ++schur;
    for (double a : alphas) {
      if (renyi_entropy(Pmf(p), Order(a)) < renyi_entropy(Pmf(q), Order(a)) - 1e-12) ++schur;
    }
  }
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 10;
    Pmf p(oracle::random_pmf(rng, n));
    double prev_h = oracle::kInf, prev_d = -1.0;
    Pmf q(oracle::random_pmf(rng, n));
    for (double a : {0.1, 0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 7.0, oracle::kInf}) {
      const double h = renyi_entropy(p, Order(a));
      if (std::abs(renyi_divergence(p, uniform(n), Order(a)) - (std::log2(double(n)) - h)) > 1e-10) ++ident;
      const double d = renyi_divergence(p, q, Order(a));
      if (h > prev_h + 1e-12 || d < prev_d - 1e-12) ++mono;
      prev_h = h;
      prev_d = d;
    }
    Pmf r(oracle::random_pmf(rng, 2 + t % 4));
    for (double a : alphas) {
      if (std::abs(renyi_entropy(product(p, r), Order(a)) - renyi_entropy(p, Order(a)) -
                   renyi_entropy(r, Order(a))) > 1e-10) {
        ++add;
      }
    }
  }
  int books = 0;
  for (int t = 0; t < 60; ++t) {
    Pmf p(oracle::random_pmf(rng, 2 + t % 4));
    const auto spec = campbell_lengths(p, 0.5 * (1 + t % 4), 1 + t % 4, 2 + t % 3);
    std::vector<std::string> words;
    for (const auto& cw : build_prefix_code(spec)) words.push_back(cw.codeword);
    if (!is_prefix_free(words)) ++prefix;
    ++books;
  }
  const bool pass = schur + ident + mono + add + prefix == 0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "violations: schur %d, uniform-gap identity %d, order monotonicity %d, additivity %d, "
                "prefix-free %d (of %d codebooks)",
                schur, ident, mono, add, prefix, books);
  return {pass, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"v(1) equals 0.08607 bits", c1_v_of_one},
      {"order-2 closed form", c2_order_two},
      {"limits in alpha and rho", c3_limits},
      {"monotone gap chain", c4_chain},
      {"aggregation entropy range", c5_aggregation_range},
      {"guessing moment sandwich", c6_arikan},
      {"truncated geometric guessing bounds", c7_example1},
      {"cumulant code construction", c8_campbell},
      {"clustered cumulant difference", c9_clustered_codes},
      {"property suite", c10_properties},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  return failures;
}

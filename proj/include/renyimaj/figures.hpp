#pragma once

// Curve data for the entropy-gap and guessing-bound plots, on fixed grids so
// every run produces identical CSV output.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "renyimaj/errors.hpp"
#include "renyimaj/extremal.hpp"
#include "renyimaj/guess.hpp"
#include "renyimaj/io.hpp"
#include "renyimaj/parallel.hpp"
#include "renyimaj/pmf.hpp"
#include "renyimaj/renyi.hpp"

namespace renyimaj {

enum class FigureId { gap_vs_rho, gap_vs_alpha, shannon_gap_vs_rho, guessing_k100, guessing_k1000 };

inline FigureId parse_figure_id(std::string_view id) {
  if (id == "1") return FigureId::gap_vs_rho;
  if (id == "2") return FigureId::gap_vs_alpha;
  if (id == "3") return FigureId::shannon_gap_vs_rho;
  if (id == "4L" || id == "4l") return FigureId::guessing_k100;
  if (id == "4R" || id == "4r") return FigureId::guessing_k1000;
  throw DomainError("unknown figure id '" + std::string(id) + "' (expected 1, 2, 3, 4L or 4R)");
}

struct FigureRequest {
  FigureId id;
  std::string output;
  std::size_t resolution = 101;
};

inline constexpr double kInfiniteN = std::numeric_limits<double>::infinity();

namespace figures {

// rho = 2^(10 t), t on a uniform grid over [0,1]; hits rho = 2 exactly.
inline std::vector<double> power_of_two_grid(std::size_t resolution) {
  std::vector<double> out;
  for (std::size_t i = 0; i < resolution; ++i) {
    out.push_back(std::exp2(10.0 * static_cast<double>(i) / static_cast<double>(resolution - 1)));
  }
  return out;
}

// (hi/res) * i for i = 1..res; with hi = 10 and res a multiple of 10 this
// contains 1 exactly.
inline std::vector<double> positive_grid(double hi, std::size_t resolution) {
  std::vector<double> out;
  for (std::size_t i = 1; i <= resolution; ++i) {
    out.push_back(hi * static_cast<double>(i) / static_cast<double>(resolution));
  }
  return out;
}

/// c_alpha^(inf)(rho) against rho for several orders, bits.
inline io::Table gap_vs_rho(std::size_t resolution) {
  io::Table t{{"rho", "alpha", "c_inf"}, {}};
  const std::array<Order, 6> alphas{Order(0.25), Order(0.5), Order::one(), Order(2.0), Order(4.0),
                                    Order::infinity()};
  for (const auto& a : alphas) {
    for (double rho : power_of_two_grid(resolution)) {
      t.rows.push_back({rho, a.value(), gap_asymptotic(rho, a)});
    }
  }
  return t;
}

/// c_alpha^(n)(rho) against alpha for rho in {2, 256} and n = 2, 4, ..., 1024, inf.
inline io::Table gap_vs_alpha(std::size_t resolution, unsigned threads) {
  const std::array<double, 2> rhos{2.0, 256.0};
  std::vector<double> ns;
  for (double n = 2; n <= 1024; n *= 2) ns.push_back(n);
  ns.push_back(kInfiniteN);
  const auto alphas = positive_grid(10.0, resolution);

  struct Cell {
    double rho, n, alpha;
  };
  std::vector<Cell> cells;
  for (double rho : rhos) {
    for (double n : ns) {
      for (double a : alphas) cells.push_back({rho, n, a});
    }
  }
  io::Table t{{"rho", "alpha", "n", "c"}, std::vector<std::vector<double>>(cells.size())};
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const auto& c = cells[i];
    const Order a(c.alpha);
    const double gap = std::isinf(c.n) ? gap_asymptotic(c.rho, a)
                                       : gap_finite(static_cast<std::size_t>(c.n), c.rho, a).gap;
    t.rows[i] = {c.rho, c.alpha, c.n, gap};
  });
  return t;
}

/// c_1^(n)(rho) for n in {8, 32, 128, 512} next to c_1^(inf)(rho), rho in [1, 1e5].
inline io::Table shannon_gap_vs_rho(std::size_t resolution, unsigned threads) {
  const std::array<double, 5> ns{8, 32, 128, 512, kInfiniteN};
  const auto rhos = numeric::log_grid(1.0, 1e5, resolution);
  io::Table t{{"rho", "n", "c1"}, std::vector<std::vector<double>>(ns.size() * rhos.size())};
  parallel_for(t.rows.size(), threads, [&](std::size_t i) {
    const double n = ns[i / rhos.size()];
    const double rho = rhos[i % rhos.size()];
    const double gap = std::isinf(n) ? gap_asymptotic(rho, Order::one())
                                     : gap_finite(static_cast<std::size_t>(n), rho, Order::one()).gap;
    t.rows[i] = {rho, n, gap};
  });
  return t;
}

inline Pmf example1_source() { return geometric(24.0 / 25.0, 128); }
inline constexpr std::size_t kExample1Cells = 16;

/// Guessing-gain bounds for the truncated geometric source, bits.
inline io::Table guessing_bounds(int k, std::size_t resolution) {
  const Pmf p = example1_source();
  io::Table t{{"k", "rho_g", "lower_bits", "upper_bits"}, {}};
  for (double rho : positive_grid(10.0, resolution)) {
    const auto r = clustering_gain_bounds(p, kExample1Cells, rho, k);
    t.rows.push_back({static_cast<double>(k), rho, r.lower, r.upper});
  }
  return t;
}

}  // namespace figures

inline io::Table make_figure(FigureId id, std::size_t resolution, unsigned threads = 1) {
  detail::require(resolution >= 2, "figure resolution must be at least 2");
  switch (id) {
    case FigureId::gap_vs_rho:
      return figures::gap_vs_rho(resolution);
    case FigureId::gap_vs_alpha:
      return figures::gap_vs_alpha(resolution, threads);
    case FigureId::shannon_gap_vs_rho:
      return figures::shannon_gap_vs_rho(resolution, threads);
    case FigureId::guessing_k100:
      return figures::guessing_bounds(100, resolution);
    case FigureId::guessing_k1000:
      return figures::guessing_bounds(1000, resolution);
  }
  throw DomainError("unknown figure");
}

inline void emit_figure(const FigureRequest& req, unsigned threads = 1) {
  io::write_csv_file(req.output, make_figure(req.id, req.resolution, threads));
}

struct Example1Curve {
  int k;
  std::vector<GuessBoundReport> points;
  double max_gap;  // max over the grid of upper - lower, bits
};

/// Guessing bounds for geometric(24/25, 128) clustered into 16 cells, at
/// k = 100 and k = 1000, rho_g on (0, 10].
inline std::vector<Example1Curve> run_example1(std::size_t resolution = 100) {
  const Pmf p = figures::example1_source();
  std::vector<Example1Curve> out;
  for (int k : {100, 1000}) {
    Example1Curve c{k, {}, 0.0};
    for (double rho : figures::positive_grid(10.0, resolution)) {
      c.points.push_back(clustering_gain_bounds(p, figures::kExample1Cells, rho, k));
      c.max_gap = std::max(c.max_gap, c.points.back().upper - c.points.back().lower);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace renyimaj

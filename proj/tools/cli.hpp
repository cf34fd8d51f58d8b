#pragma once

// Command-line front end. run() takes explicit streams so the tests can
// drive it in-process.

#include <cmath>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "renyimaj/renyimaj.hpp"

namespace renyimaj::cli {

enum ExitCode { ok = 0, usage = 2, domain = 3, refused = 4, degenerate = 5, io_failure = 6, internal = 7 };

struct Globals {
  std::string base = "2";
  bool json = false;
  unsigned threads = 1;

  LogBase log_base() const {
    if (base == "e" || base == "nats") return LogBase::nats();
    if (base == "bits") return LogBase::bits();
    return LogBase::of(io::parse_double(base));
  }
};

namespace detail {

using nlohmann::json;

inline void emit_table(std::ostream& out, const Globals& g, const io::Table& t, const std::string& csv) {
  if (!csv.empty()) io::write_csv_file(csv, t);
  if (g.json) {
    out << io::table_to_json(t).dump(2) << '\n';
  } else if (csv.empty()) {
    io::write_csv(out, t);
  }
}

inline void emit_pairs(std::ostream& out, const Globals& g,
                       const std::vector<std::pair<std::string, double>>& kv) {
  if (g.json) {
    json doc = json::object();
    for (const auto& [k, v] : kv) doc[k] = std::isfinite(v) ? json(v) : json(io::format_double(v));
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : kv) out << k << " " << io::format_double(v) << '\n';
}

inline std::vector<double> sweep_or_single(const std::string& sweep, const std::string& single,
                                           const char* what) {
  if (!sweep.empty()) return io::parse_range(sweep).values();
  if (single.empty()) throw CLI::ValidationError(std::string("need --") + what + " or a sweep");
  return {io::parse_double(single)};
}

constexpr double kLargeN = 1e5;

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using detail::json;
  CLI::App app{"Rényi entropy bounds for clustered discrete sources"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Globals g;
  app.add_option("--base", g.base, "log base: a number > 1, 'e'/'nats' or 'bits'");
  app.add_flag("--json", g.json, "print results as JSON");
  app.add_option("--threads", g.threads, "worker threads for grid sweeps")->check(CLI::PositiveNumber);

  // entropy
  std::string pmf_spec, alpha_text, sweep_text, csv_path;
  auto* entropy = app.add_subcommand("entropy", "Rényi entropy of a pmf");
  entropy->add_option("--pmf", pmf_spec, "pmf spec")->required();
  entropy->add_option("--alpha", alpha_text, "order (number or inf)");
  entropy->add_option("--sweep", sweep_text, "order sweep lo:hi:steps");
  entropy->add_option("--csv", csv_path, "write CSV here");

  // cgap
  std::string n_text, rho_text, sweep_rho, sweep_alpha;
  auto* cgap = app.add_subcommand("cgap", "maximal entropy gap under a mass-ratio bound");
  cgap->add_option("--n", n_text, "alphabet size or inf")->required();
  cgap->add_option("--rho", rho_text, "mass ratio");
  cgap->add_option("--alpha", alpha_text, "order");
  cgap->add_option("--sweep-rho", sweep_rho, "lo:hi:steps");
  cgap->add_option("--sweep-alpha", sweep_alpha, "lo:hi:steps");
  cgap->add_option("--csv", csv_path, "write CSV here");

  // aggregate
  std::size_t m = 0;
  std::string map_path;
  auto* aggregate = app.add_subcommand("aggregate", "Huffman aggregation and its entropy range");
  aggregate->add_option("--pmf", pmf_spec, "pmf spec, sorted non-increasing")->required();
  aggregate->add_option("--m", m, "number of cells")->required();
  auto* alpha_opt = aggregate->add_option("--alpha", alpha_text, "order");
  aggregate->add_option("--alpha-sweep", sweep_alpha, "lo:hi:steps")->excludes(alpha_opt);
  aggregate->add_option("--emit-map", map_path, "write the map as JSON");

  // guess-bounds
  int k = 1;
  std::string rho_sweep;
  auto* guess = app.add_subcommand("guess-bounds", "bounds on the guessing-moment gain of clustering");
  guess->add_option("--pmf", pmf_spec, "pmf spec, sorted non-increasing")->required();
  guess->add_option("--m", m, "number of cells")->required();
  guess->add_option("--k", k, "block length")->required()->check(CLI::PositiveNumber);
  guess->add_option("--rho-sweep", rho_sweep, "moment orders lo:hi:steps")->required();
  guess->add_option("--csv", csv_path, "write CSV here");

  // campbell
  int D = 2;
  std::string code_path;
  std::size_t cells = 0;
  auto* campbell = app.add_subcommand("campbell", "Campbell code lengths and cumulants");
  campbell->add_option("--pmf", pmf_spec, "pmf spec")->required();
  campbell->add_option("--rho", rho_text, "cumulant order")->required();
  campbell->add_option("--k", k, "block length")->required()->check(CLI::PositiveNumber);
  campbell->add_option("--D", D, "code alphabet size")->required();
  campbell->add_option("--m", cells, "also code the Huffman aggregation into m cells");
  campbell->add_option("--emit-code", code_path, "write the prefix code as JSON");
  campbell->add_option("--csv", csv_path, "write CSV here");

  // tunstall-bound
  std::size_t codewords = 0;
  auto* tunstall = app.add_subcommand("tunstall-bound", "rate bound for Tunstall codes");
  tunstall->add_option("--pmf", pmf_spec, "pmf spec, strictly positive")->required();
  tunstall->add_option("--codewords", codewords, "number of codewords")->required();

  // figure
  std::string figure_id, figure_out;
  std::size_t resolution = 101;
  auto* figure = app.add_subcommand("figure", "curve data as CSV");
  figure->add_option("--id", figure_id, "1, 2, 3, 4L or 4R")->required();
  figure->add_option("--out", figure_out, "output CSV")->required();
  figure->add_option("--resolution", resolution, "grid points per curve");

  // example1
  std::size_t ex_resolution = 100;
  auto* example1 = app.add_subcommand("example1", "guessing bounds for the truncated geometric source");
  example1->add_option("--resolution", ex_resolution, "rho_g grid points on (0,10]");

  auto fail = [&](const char* category, const std::string& msg, int code) {
    if (g.json) {
      err << json{{"error", {{"category", category}, {"message", msg}}}}.dump() << '\n';
    } else {
      err << "error[" << category << "]: " << msg << '\n';
    }
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), usage);
  }

  try {
    const LogBase base = g.log_base();

    if (*entropy) {
      const Pmf p = io::parse_pmf(pmf_spec);
      if (sweep_text.empty()) {
        if (alpha_text.empty()) throw CLI::ValidationError("entropy needs --alpha or --sweep");
        const double h = renyi_entropy(p, io::parse_order(alpha_text), base);
        if (g.json) {
          out << json{{"alpha", alpha_text}, {"entropy", h}}.dump(2) << '\n';
        } else {
          out << io::format_double(h) << '\n';
        }
      } else {
        io::Table t{{"alpha", "H_alpha"}, {}};
        for (double a : io::parse_range(sweep_text).values()) {
          t.rows.push_back({a, renyi_entropy(p, Order(a), base)});
        }
        detail::emit_table(out, g, t, csv_path);
      }
    } else if (*cgap) {
      const bool infinite = n_text == "inf";
      const std::size_t n = infinite ? 0 : io::parse_count(n_text);
      if (!infinite && static_cast<double>(n) > detail::kLargeN) {
        err << "warning: n > 1e5 makes the finite-n search slow; --n inf gives the limit\n";
      }
      const auto rhos = detail::sweep_or_single(sweep_rho, rho_text, "rho");
      const auto alphas = detail::sweep_or_single(sweep_alpha, alpha_text, "alpha");
      std::vector<std::pair<double, double>> cells_ra;
      for (double a : alphas) {
        for (double r : rhos) cells_ra.push_back({a, r});
      }
      io::Table t{{"alpha", "rho", "n", "gap", "beta_star"},
                  std::vector<std::vector<double>>(cells_ra.size())};
      parallel_for(cells_ra.size(), g.threads, [&](std::size_t i) {
        const auto [a, r] = cells_ra[i];
        if (infinite) {
          t.rows[i] = {a, r, numeric::kInf, gap_asymptotic(r, Order(a), base), std::nan("")};
        } else {
          const auto prof = gap_finite(n, r, Order(a), base);
          t.rows[i] = {a, r, static_cast<double>(n), prof.gap, prof.beta_star};
        }
      });
      detail::emit_table(out, g, t, csv_path);
    } else if (*aggregate) {
      const Pmf p = io::parse_pmf(pmf_spec);
      const auto h = huffman_aggregate(p, m);
      const Pmf y = h.map.induced(p);
      std::vector<double> alphas;
      if (!sweep_alpha.empty()) {
        alphas = io::parse_range(sweep_alpha).values();
      } else {
        alphas = {alpha_text.empty() ? 1.0 : io::parse_double(alpha_text)};
      }
      io::Table t{{"alpha", "H_huffman", "lower", "upper", "min_value"}, {}};
      for (double a : alphas) {
        const Order o(a);
        const auto r = entropy_range(p, m, o, base);
        t.rows.push_back({a, renyi_entropy(y, o, base), r.lower, r.upper, r.min_value});
      }
      if (!map_path.empty()) {
        std::vector<std::size_t> one_based;
        for (std::size_t j : h.map.table()) one_based.push_back(j + 1);
        io::write_json_file(map_path, json{{"f", one_based}});
      }
      detail::emit_table(out, g, t, "");
    } else if (*guess) {
      const Pmf p = io::parse_pmf(pmf_spec);
      io::Table t{{"rho_g", "lower_bits", "upper_bits"}, {}};
      for (double r : io::parse_range(rho_sweep).values()) {
        const auto b = clustering_gain_bounds(p, m, r, k, LogBase::bits());
        t.rows.push_back({r, b.lower, b.upper});
      }
      detail::emit_table(out, g, t, csv_path);
    } else if (*campbell) {
      const Pmf p = io::parse_pmf(pmf_spec);
      const double rho = io::parse_double(rho_text);
      io::Table t{{"cells", "lambda", "lambda_over_rho", "converse", "achievability", "kraft_sum",
                   "mean_length_per_symbol"},
                  {}};
      auto row = [&](const Pmf& src, const CodeSpec& spec) {
        const double lambda = scaled_cumulant(spec).lambda;
        const auto b = campbell_bounds(src, rho, D, k);
        t.rows.push_back({static_cast<double>(src.size()), lambda, lambda / rho, b.converse,
                          b.achievability, spec.kraft_sum(), spec.expected_length() / k});
      };
      const CodeSpec spec = campbell_lengths(p, rho, k, D);
      row(p, spec);
      std::optional<CumulantGainBounds> gain;
      if (cells > 0) {
        const Pmf y = huffman_aggregate(p, cells).map.induced(p);
        row(y, campbell_lengths(y, rho, k, D));
        gain = clustering_cumulant_bounds(p, cells, rho, D, k);
      }
      if (!code_path.empty()) {
        auto doc = json::array();
        for (const auto& cw : build_prefix_code(spec)) {
          std::vector<std::size_t> one_based;
          for (std::size_t s : cw.symbols) one_based.push_back(s + 1);
          doc.push_back({{"symbols", one_based}, {"codeword", cw.codeword}});
        }
        io::write_json_file(code_path, doc);
      }
      if (!csv_path.empty()) io::write_csv_file(csv_path, t);
      if (g.json) {
        json doc{{"codes", io::table_to_json(t)}};
        if (gain) doc["difference_bounds"] = {{"lower", gain->lower}, {"upper", gain->upper}};
        out << doc.dump(2) << '\n';
      } else {
        io::write_csv(out, t);
        if (gain) {
          out << "difference_lower " << io::format_double(gain->lower) << '\n'
              << "difference_upper " << io::format_double(gain->upper) << '\n';
        }
      }
    } else if (*tunstall) {
      const Pmf p = io::parse_pmf(pmf_spec);
      const auto b = tunstall_rate_bound(p, codewords);
      detail::emit_pairs(out, g,
                         {{"rate_bound", b.tight},
                          {"rate_bound_limit_gap", b.loose},
                          {"gap_finite_bits", b.gap_finite},
                          {"gap_limit_bits", b.gap_limit}});
    } else if (*figure) {
      emit_figure({parse_figure_id(figure_id), figure_out, resolution}, g.threads);
      if (g.json) out << json{{"written", figure_out}}.dump() << '\n';
    } else if (*example1) {
      const auto curves = run_example1(ex_resolution);
      if (g.json) {
        json doc = json::array();
        for (const auto& c : curves) {
          json pts = json::array();
          for (const auto& r : c.points) pts.push_back({{"rho_g", r.rho_g}, {"lower", r.lower}, {"upper", r.upper}});
          doc.push_back({{"k", c.k}, {"max_gap_bits", c.max_gap}, {"points", pts}});
        }
        out << doc.dump(2) << '\n';
      } else {
        out << "geometric(24/25,128) clustered into 16 cells, bits per symbol\n";
        for (const auto& c : curves) {
          out << "k=" << c.k << "  max gap over rho_g grid: " << io::format_double(c.max_gap) << '\n';
          out << "rho_g,lower_bits,upper_bits\n";
          for (const auto& r : c.points) {
            out << io::format_double(r.rho_g) << ',' << io::format_double(r.lower) << ','
                << io::format_double(r.upper) << '\n';
          }
        }
      }
    }
  } catch (const CLI::ValidationError& e) {
    return fail("usage", e.what(), usage);
  } catch (const RefusalError& e) {
    return fail("refused", e.what(), refused);
  } catch (const DegenerateBoundError& e) {
    return fail("degenerate", e.what(), degenerate);
  } catch (const IoError& e) {
    return fail("io", e.what(), io_failure);
  } catch (const DomainError& e) {
    return fail("domain", e.what(), domain);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), internal);
  }
  return ok;
}

}  // namespace renyimaj::cli

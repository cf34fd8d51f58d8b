#pragma once

// Text formats: pmf specs, orders, sweep ranges and CSV tables. All number
// parsing and printing goes through from_chars/to_chars, which ignore the
// C locale.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "renyimaj/errors.hpp"
#include "renyimaj/numeric.hpp"
#include "renyimaj/pmf.hpp"
#include "renyimaj/renyi.hpp"

namespace renyimaj::io {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "infinity" || text == "+inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DomainError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

inline std::size_t parse_count(std::string_view text) {
  text = trim(text);
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DomainError("not a non-negative integer: '" + std::string(text) + "'");
  }
  return value;
}

inline Order parse_order(std::string_view text) { return Order(parse_double(text)); }

inline std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto stop = text.find_first_of(",; \t\r\n", start);
    if (stop == std::string_view::npos) stop = text.size();
    const auto item = trim(text.substr(start, stop - start));
    if (!item.empty()) out.push_back(parse_double(item));
    start = stop + 1;
  }
  return out;
}

// "name(arg, arg)" -> {name, args}; empty name when the text has no call form.
inline std::pair<std::string, std::vector<std::string>> split_call(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') return {};
  std::vector<std::string> args;
  auto inner = text.substr(open + 1, text.size() - open - 2);
  std::size_t start = 0;
  while (start <= inner.size()) {
    auto stop = inner.find(',', start);
    if (stop == std::string_view::npos) stop = inner.size();
    args.emplace_back(trim(inner.substr(start, stop - start)));
    start = stop + 1;
  }
  return {std::string(trim(text.substr(0, open))), args};
}

inline Pmf pmf_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("masses") || !doc["masses"].is_array()) {
    throw DomainError("pmf JSON must look like {\"masses\": [...]}");
  }
  std::vector<double> masses;
  for (const auto& v : doc["masses"]) {
    if (!v.is_number()) throw DomainError("pmf JSON masses must be numbers");
    masses.push_back(v.get<double>());
  }
  return Pmf(std::move(masses));
}

inline nlohmann::json pmf_to_json(const Pmf& p) {
  return nlohmann::json{{"masses", std::vector<double>(p.masses().begin(), p.masses().end())}};
}

/// Accepts "uniform(n)", "geometric(a,n)", an inline list "0.5,0.25,0.25",
/// or a path to a file holding either {"masses": [...]} or a plain list.
inline Pmf parse_pmf(std::string_view spec) {
  const auto [name, args] = split_call(spec);
  if (name == "uniform") {
    if (args.size() != 1) throw DomainError("uniform(n) takes one argument");
    return uniform(parse_count(args[0]));
  }
  if (name == "geometric") {
    if (args.size() != 2) throw DomainError("geometric(a,n) takes two arguments");
    return geometric(parse_double(args[0]), parse_count(args[1]));
  }
  if (!name.empty()) throw DomainError("unknown pmf family '" + name + "'");

  const std::filesystem::path path{std::string(trim(spec))};
  std::error_code ec;
  if (std::filesystem::is_regular_file(path, ec)) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (trim(text).starts_with("{")) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(text);
      } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("pmf file is not valid JSON: ") + e.what());
      }
      return pmf_from_json(doc);
    }
    return Pmf(parse_list(text));
  }
  return Pmf(parse_list(spec));
}

struct Range {
  double lo;
  double hi;
  std::size_t steps;

  std::vector<double> values() const { return numeric::linspace(lo, hi, steps); }
};

/// "lo:hi:steps", steps >= 2.
inline Range parse_range(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos) throw DomainError("range must look like lo:hi:steps");
  Range r{parse_double(text.substr(0, a)), parse_double(text.substr(a + 1, b - a - 1)),
          parse_count(text.substr(b + 1))};
  if (r.steps < 2) throw DomainError("range needs at least 2 steps");
  return r;
}

/// Shortest round-trip text with 17 significant digits; "inf"/"nan" for
/// non-finite values.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

inline void write_csv_file(const std::string& path, const Table& t) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_csv(out, t);
}

inline void write_json_file(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << doc.dump(2) << '\n';
}

inline nlohmann::json table_to_json(const Table& t) {
  auto rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (std::isfinite(row[i])) {
        r[t.header[i]] = row[i];
      } else {
        r[t.header[i]] = format_double(row[i]);
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace renyimaj::io

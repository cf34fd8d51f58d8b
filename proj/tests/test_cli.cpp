#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace {
struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "renyimaj");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = renyimaj::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("renyimaj_cli_" + name)).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}
}  // namespace

TEST(Cli, EntropySingleValue) {
  auto r = run({"entropy", "--pmf", "0.5,0.25,0.25", "--alpha", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.out), std::log2(8.0 / 3.0), 1e-15);
  auto nats = run({"--base", "e", "entropy", "--pmf", "uniform(4)", "--alpha", "inf"});
  EXPECT_NEAR(std::stod(nats.out), std::log(4.0), 1e-15);
}

TEST(Cli, EntropySweepCsv) {
  auto r = run({"entropy", "--pmf", "uniform(8)", "--sweep", "0.5:2:4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 14), "alpha,H_alpha\n");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST(Cli, CgapFiniteAndInfinite) {
  const auto csv = temp_path("cgap.csv");
  auto r = run({"cgap", "--n", "inf", "--rho", "2", "--alpha", "1", "--csv", csv});
  EXPECT_EQ(r.code, 0);
  const auto text = read_file(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "alpha,rho,n,gap,beta_star");
  EXPECT_NE(text.find("0.0860713"), std::string::npos);
  auto j = run({"--json", "cgap", "--n", "8", "--rho", "2", "--sweep-alpha", "0.5:2:3", "--threads", "2"});
  ASSERT_EQ(j.code, 0);
  auto doc = nlohmann::json::parse(j.out);
  ASSERT_EQ(doc.size(), 3u);
  EXPECT_EQ(doc[0]["n"], 8.0);
  EXPECT_EQ(doc[1]["alpha"], 1.25);
  EXPECT_LT(doc[0]["gap"].get<double>(), doc[1]["gap"].get<double>());
  EXPECT_LT(doc[1]["gap"].get<double>(), doc[2]["gap"].get<double>());
  EXPECT_LE(doc[1]["gap"].get<double>(), renyimaj::gap_asymptotic(2.0, renyimaj::Order(1.25)) + 1e-12);
}

TEST(Cli, CgapWarnsForHugeN) {
  auto r = run({"cgap", "--n", "200000", "--rho", "1", "--alpha", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, AggregateEmitsOneBasedMap) {
  const auto path = temp_path("map.json");
  auto r = run({"aggregate", "--pmf", "0.4,0.3,0.2,0.1", "--m", "3", "--alpha", "1", "--emit-map", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = nlohmann::json::parse(read_file(path));
  EXPECT_EQ(doc["f"], (std::vector<int>{1, 2, 3, 3}));
  auto sweep = run({"aggregate", "--pmf", "geometric(0.9,12)", "--m", "4", "--alpha-sweep", "0.5:4:8"});
  EXPECT_EQ(sweep.code, 0);
  EXPECT_EQ(std::count(sweep.out.begin(), sweep.out.end(), '\n'), 9);
}

TEST(Cli, AggregateRejectsUnsortedInput) {
  auto r = run({"aggregate", "--pmf", "0.1,0.4,0.5", "--m", "2"});
  EXPECT_EQ(r.code, renyimaj::cli::domain);
  EXPECT_NE(r.err.find("error[domain]"), std::string::npos);
}

TEST(Cli, GuessBounds) {
  auto r = run({"guess-bounds", "--pmf", "geometric(0.96,128)", "--m", "16", "--k", "1000", "--rho-sweep",
                "0.5:10:5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "rho_g,lower_bits,upper_bits");
}

TEST(Cli, CampbellWithCodeAndClustering) {
  const auto code = temp_path("code.json");
  const auto csv = temp_path("campbell.csv");
  auto r = run({"--json", "campbell", "--pmf", "0.3,0.25,0.2,0.15,0.1", "--rho", "1", "--k", "2", "--D", "2",
                "--m", "3", "--emit-code", code, "--csv", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["codes"].size(), 2u);
  EXPECT_LT(doc["difference_bounds"]["lower"].get<double>(), doc["difference_bounds"]["upper"].get<double>());
  auto book = nlohmann::json::parse(read_file(code));
  EXPECT_EQ(book.size(), 25u);
  EXPECT_EQ(book[0]["symbols"], (std::vector<int>{1, 1}));
  EXPECT_TRUE(book[0]["codeword"].is_string());
}

TEST(Cli, CampbellRefusal) {
  auto r = run({"--json", "campbell", "--pmf", "geometric(0.9,60)", "--rho", "1", "--k", "12", "--D", "2"});
  EXPECT_EQ(r.code, renyimaj::cli::refused);
  auto doc = nlohmann::json::parse(r.err);
  EXPECT_EQ(doc["error"]["category"], "refused");
}

TEST(Cli, Tunstall) {
  auto r = run({"tunstall-bound", "--pmf", "0.5,0.5", "--codewords", "16"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("rate_bound "), std::string::npos);
  auto bad = run({"tunstall-bound", "--pmf", "0.5,0.5,0", "--codewords", "16"});
  EXPECT_EQ(bad.code, renyimaj::cli::domain);
}

TEST(Cli, FigureAndExample1) {
  const auto path = temp_path("fig1.csv");
  auto r = run({"figure", "--id", "1", "--out", path, "--resolution", "11"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_file(path).substr(0, 15), "rho,alpha,c_inf");
  auto bad = run({"figure", "--id", "7", "--out", path});
  EXPECT_EQ(bad.code, renyimaj::cli::domain);
  auto io = run({"figure", "--id", "1", "--out", "/nonexistent_dir/f.csv"});
  EXPECT_EQ(io.code, renyimaj::cli::io_failure);
  auto ex = run({"example1", "--resolution", "10"});
  EXPECT_EQ(ex.code, 0);
  EXPECT_NE(ex.out.find("k=1000"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, renyimaj::cli::usage);
  EXPECT_EQ(run({"entropy"}).code, renyimaj::cli::usage);
  EXPECT_EQ(run({"entropy", "--pmf", "uniform(3)"}).code, renyimaj::cli::usage);
  EXPECT_EQ(run({"--base", "1", "entropy", "--pmf", "uniform(3)", "--alpha", "1"}).code, renyimaj::cli::domain);
  EXPECT_EQ(run({"entropy", "--pmf", "uniform(3)", "--alpha", "1,5"}).code, renyimaj::cli::domain);
  EXPECT_EQ(run({"--help"}).code, 0);
}

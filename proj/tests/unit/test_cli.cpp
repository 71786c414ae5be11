#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "evopoisson/cli.hpp"
#include "evopoisson/errors.hpp"
#include "evopoisson/safe_set.hpp"

using namespace evopoisson;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "evopoisson");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("evopoisson_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

double value_after(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + " = ");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size() + 3));
}

}  // namespace

TEST_CASE("eq on the default model") {
  const Result r = run_cli({"eq"});
  CHECK(r.code == 0);
  CHECK(std::abs(value_after(r.out, "protection_rate") - 0.13) <= 0.03);
  CHECK(r.out.find("kind = INTERIOR_MIXED") != std::string::npos);
  CHECK(r.out.find("residual = ") != std::string::npos);

  const Result dominant = run_cli({"--set", "C=5", "eq"});
  CHECK(dominant.code == 0);
  CHECK(value_after(dominant.out, "p_star") == 1.0);

  const Result exclusive = run_cli({"--convention", "exclusive", "eq"});
  CHECK(exclusive.out.find("convention = exclusive") != std::string::npos);
  CHECK(exclusive.out.find("safe_set_size = 57") != std::string::npos);
}

TEST_CASE("eq writes a CSV row when asked") {
  const fs::path dir = scratch("eq");
  const Result r = run_cli({"--out", (dir / "eq.csv").string(), "eq"});
  CHECK(r.code == 0);
  const auto rows = read_csv(dir / "eq.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "p_star");
  fs::remove_all(dir);
}

TEST_CASE("configuration errors exit with 2") {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << "{\"lambda\": 10,";
  const Result bad = run_cli({"--config", (dir / "bad.json").string(), "eq"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("malformed model JSON") != std::string::npos);

  std::ofstream(dir / "good.json") << R"({"lambda": 20, "beta": 5, "K": 5, "C": 4,
    "types": [{"r": 0.1, "delta": 100}, {"r": 0.9, "delta": 25}]})";
  const Result good = run_cli({"--config", (dir / "good.json").string(), "eq"});
  CHECK(good.code == 0);
  CHECK(std::abs(value_after(good.out, "p_star") - 0.44) <= 0.03);

  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"bogus"}).code == 2);
  CHECK(run_cli({"--convention", "sideways", "eq"}).code == 2);
  CHECK(run_cli({"--set", "lambda", "eq"}).code == 2);
  CHECK(run_cli({"--set", "mu=3", "eq"}).code == 2);
  CHECK(run_cli({"--set", "lambda=-3", "eq"}).code == 2);
  CHECK(run_cli({"--format", "png", "sweep", "--x", "C=1:2:3"}).code == 2);
  CHECK(run_cli({"figure", "7"}).code == 2);
  CHECK(run_cli({"spsa", "--schedule", "sqrt"}).code == 2);
  CHECK(run_cli({"spsa", "--mode", "solo"}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("help exits cleanly") {
  const Result r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("figure") != std::string::npos);
}

TEST_CASE("sweeps") {
  const Result one = run_cli({"--set", "lambda=30", "--set", "tau1=0.1", "sweep", "--x", "r=0:1:11"});
  REQUIRE(one.code == 0);
  std::istringstream in(one.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "r,p_star,protection_rate,revenue,kind");
  double prev = 2.0;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    const auto third = line.find(',', second + 1);
    const double protection = std::stod(line.substr(second + 1, third - second - 1));
    CHECK(protection <= prev);
    prev = protection;
    ++rows;
  }
  CHECK(rows == 11);

  const Result two = run_cli({"sweep", "--x", "lambda=10:20:2", "--y", "C=1:3:3"});
  REQUIRE(two.code == 0);
  CHECK(two.out.rfind("lambda,C,p_star", 0) == 0);
  CHECK(two.out.find("\n10,1,") < two.out.find("\n10,2,"));
  CHECK(two.out.find("\n10,3,") < two.out.find("\n20,1,"));

  CHECK(run_cli({"sweep", "--x", "C=1:2:0"}).code == 2);
  CHECK(run_cli({"sweep", "--x", "C=2:1:3"}).code == 2);
  CHECK(run_cli({"sweep", "--x", "C=1:2"}).code == 2);
  CHECK(run_cli({"sweep"}).code == 2);
}

TEST_CASE("sweep axis parsing is exact") {
  const cli::SweepAxis a = cli::parse_sweep_axis("tau1=0.05:0.1:6");
  CHECK(a.name == "tau1");
  REQUIRE(a.values.size() == 6);
  CHECK(a.values[1] == Fraction::make(3, 50));
  CHECK(a.values.back() == Fraction::make(1, 10));
  CHECK(cli::parse_sweep_axis("C=2:2:1").values.size() == 1);
  CHECK_THROWS_AS(cli::parse_sweep_axis("=1:2:3"), ConfigError);
  CHECK_THROWS_AS(cli::parse_sweep_axis("C=1:x:3"), ConfigError);
  CHECK_THROWS_AS(cli::parse_sweep_axis("C=1:2:3x"), ConfigError);
}

TEST_CASE("named parameters") {
  const PopulationModel base = cli::figure_model(6);
  CHECK(*base.taus()[1].fraction() == Fraction::make(50, 51));

  const PopulationModel beta = cli::set_parameter(base, "beta", Fraction::make(10, 1));
  CHECK(*beta.taus()[1].fraction() == Fraction::make(50, 51));
  CHECK(beta.beta().value() == 10.0);

  const PopulationModel tau = cli::set_parameter(base, "tau2", Fraction::make(1, 5));
  CHECK(*tau.taus()[1].fraction() == Fraction::make(1, 5));
  const PopulationModel delta = cli::set_parameter(base, "delta1", Fraction::make(25, 1));
  CHECK(*delta.taus()[0].fraction() == Fraction::make(1, 5));

  const PopulationModel r = cli::set_parameter(base, "r", Fraction::make(1, 4));
  CHECK(r.type_dist()[0] == 0.25);
  CHECK(r.type_dist()[1] == 0.75);

  const PopulationModel c = cli::set_parameter(base, "C", Fraction::make(7, 1));
  CHECK(c.protection_cost() == 7.0);
  CHECK(c.convention() == base.convention());

  CHECK_THROWS_AS(cli::set_parameter(base, "tau3", Fraction::make(1, 2)), ConfigError);
  CHECK_THROWS_AS(cli::set_parameter(base, "tau0", Fraction::make(1, 2)), ConfigError);
  CHECK_THROWS_AS(cli::set_parameter(base, "tau1", Fraction::make(0, 1)), ConfigError);
  CHECK_THROWS_AS(cli::set_parameter(base, "r", Fraction::make(3, 2)), ConfigError);
  CHECK_THROWS_AS(cli::set_parameter(base, "gamma", Fraction::make(1, 2)), ConfigError);
  CHECK_THROWS_AS(cli::figure_model(1), ConfigError);
}

TEST_CASE("figure files") {
  const fs::path dir = scratch("figures");
  REQUIRE(run_cli({"--out", dir.string(), "figure", "2"}).code == 0);
  for (int lambda : {2, 10, 20, 30}) {
    const auto rows = read_csv(dir / ("fig2_lambda_" + std::to_string(lambda) + ".csv"));
    REQUIRE(rows.size() == 22);
    CHECK(rows[0] == std::vector<std::string>{"lambda", "r", "protection_rate"});
    CHECK(rows[1][0] == std::to_string(lambda));
  }
  const auto fig2 = read_csv(dir / "fig2_lambda_10.csv");
  CHECK(std::abs(std::stod(fig2[3][2]) - 0.13) <= 0.03);  // r = 0.1

  REQUIRE(run_cli({"--out", dir.string(), "figure", "3"}).code == 0);
  CHECK(fs::exists(dir / "fig3_tau1_0.05.csv"));
  CHECK(fs::exists(dir / "fig3_tau1_0.1.csv"));

  REQUIRE(run_cli({"--out", dir.string(), "figure", "4", "--lambdas", "20"}).code == 0);
  const auto a = read_csv(dir / "fig4_lambda_20_p0_0.3.csv");
  const auto b = read_csv(dir / "fig4_lambda_20_p0_0.7.csv");
  CHECK(a[0] == std::vector<std::string>{"t_or_n", "p"});
  CHECK(std::abs(std::stod(a.back()[1]) - std::stod(b.back()[1])) <= 1e-4);
  CHECK(std::abs(std::stod(a.back()[1]) - 0.44) <= 0.03);

  REQUIRE(run_cli({"--out", dir.string(), "figure", "5", "--points", "51"}).code == 0);
  const auto rev = read_csv(dir / "fig5_revenue.csv");
  CHECK(rev.size() == 52);
  CHECK(rev[0] == std::vector<std::string>{"C", "revenue", "p_star"});

  REQUIRE(run_cli({"--out", dir.string(), "figure", "6"}).code == 0);
  for (const char* s : {"inv_n_log_n", "inv_n", "inv_n_sq"}) {
    const auto trace = read_csv(dir / (std::string("fig6_") + s + ".csv"));
    CHECK(trace[0] == std::vector<std::string>{"n", "C_n", "R_hat", "Delta_n"});
    CHECK(trace.size() == 301);
  }

  REQUIRE(run_cli({"--out", dir.string(), "figure", "6", "--mode", "coupled", "--n-outer", "100"}).code == 0);
  CHECK(read_csv(dir / "fig6_inv_n.csv")[0].back() == "p_population");

  REQUIRE(run_cli({"--out", dir.string(), "--format", "svg", "figure", "5", "--points", "11"}).code == 0);
  CHECK(slurp(dir / "fig5_revenue.svg").rfind("<svg", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("figure 6 output is reproducible byte for byte") {
  const fs::path a = scratch("fig6a");
  const fs::path b = scratch("fig6b");
  REQUIRE(run_cli({"--seed", "9", "--out", a.string(), "figure", "6"}).code == 0);
  REQUIRE(run_cli({"--seed", "9", "--out", b.string(), "figure", "6"}).code == 0);
  for (const char* s : {"fig6_inv_n_log_n.csv", "fig6_inv_n.csv", "fig6_inv_n_sq.csv"}) {
    CHECK(slurp(a / s) == slurp(b / s));
  }
  const fs::path c = scratch("fig6c");
  REQUIRE(run_cli({"--seed", "10", "--out", c.string(), "figure", "6"}).code == 0);
  CHECK(slurp(a / "fig6_inv_n_log_n.csv") != slurp(c / "fig6_inv_n_log_n.csv"));
  for (const auto& d : {a, b, c}) fs::remove_all(d);
}

TEST_CASE("I/O failures exit with 3") {
  const fs::path dir = scratch("io");
  fs::create_directories(dir);
  std::ofstream(dir / "blocker") << "x";
  CHECK(run_cli({"--out", (dir / "blocker").string(), "figure", "5", "--points", "5"}).code == 3);
  CHECK(run_cli({"--out", (dir / "blocker" / "eq.csv").string(), "eq"}).code == 3);
  fs::remove_all(dir);
}

TEST_CASE("numerical and resource failures exit with 4") {
  ::setenv("EVOPOISSON_SAFESET_CAP", "3", 1);
  const Result r = run_cli({"eq"});
  ::unsetenv("EVOPOISSON_SAFESET_CAP");
  CHECK(r.code == 4);
  CHECK(r.err.find("resource limit") != std::string::npos);
}

TEST_CASE("replicator, revenue and spsa subcommands") {
  const Result rep = run_cli({"replicator", "--p0", "0.3"});
  CHECK(rep.code == 0);
  CHECK(rep.out.rfind("t_or_n,p\n0,0.3\n", 0) == 0);
  const Result disc = run_cli({"replicator", "--p0", "0.5", "--discrete", "inv_n_sq"});
  CHECK(disc.code == 0);
  CHECK(disc.err.find("warning") != std::string::npos);
  CHECK(run_cli({"replicator", "--dt", "-1"}).code == 2);

  const Result one = run_cli({"revenue", "--price", "7"});
  CHECK(one.code == 0);
  CHECK(one.out.rfind("C,revenue,p_star\n7,", 0) == 0);
  const Result best = run_cli({"revenue", "--points", "3", "--optimize", "--out",
                               (fs::temp_directory_path() / "evopoisson_rev.csv").string()});
  CHECK(best.code == 0);
  CHECK(std::abs(value_after(best.out, "C_star") - 7.85) <= 0.01);
  fs::remove(fs::temp_directory_path() / "evopoisson_rev.csv");

  const Result spsa = run_cli({"spsa", "--schedule", "inv_n", "--n-outer", "20"});
  CHECK(spsa.code == 0);
  CHECK(spsa.err.find("note") != std::string::npos);
  CHECK(spsa.out.rfind("n,C_n,R_hat,Delta_n\n1,5,", 0) == 0);
}

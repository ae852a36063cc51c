#include <doctest.h>
#include <json.hpp>

#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "platonic/cli.hpp"
#include "platonic/mode_matrix.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "platonic");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return platonic::cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("platonic_cli_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::complex<double> value_of(const json& j) { return {j["re"].get<double>(), j["im"].get<double>()}; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("greens subcommand") {
  TempDir tmp;
  REQUIRE(run({"greens", "--alpha0", "0", "--beta", "2", "--x", "0", "--y", "0.5", "--out", tmp / "g.json"}) == 0);
  const auto j = json::parse(slurp(tmp / "g.json"));
  const auto g = value_of(j["value"]);
  CHECK(std::isfinite(g.real()));
  CHECK(std::abs(g - std::complex<double>(-0.037422199775865765154, 0.016884447058379366169)) < 1e-12);
  CHECK(fs::exists(platonic::cli::echo_path(tmp / "g.json")));

  SUBCASE("coarse and fine truncations agree within the reported estimate") {
    REQUIRE(run({"greens", "--alpha0", "0", "--beta", "2", "--y", "0.5", "--n", "100", "--out", tmp / "a.json"}) == 0);
    REQUIRE(run({"greens", "--alpha0", "0", "--beta", "2", "--y", "0.5", "--n", "1000", "--out", tmp / "b.json"}) == 0);
    const auto a = json::parse(slurp(tmp / "a.json"));
    const auto b = json::parse(slurp(tmp / "b.json"));
    CHECK(a["terms"] == 100);
    CHECK(std::abs(value_of(a["value"]) - value_of(b["value"])) <= a["convergence_estimate"].get<double>());
  }
  SUBCASE("on the light line the exit code is the domain code") {
    CHECK(run({"greens", "--alpha0", "0", "--beta", "6.283185307179586", "--out", tmp / "x.json"}) == 2);
  }
  SUBCASE("usage errors") {
    CHECK(run({"greens", "--beta", "-1"}) == 2);
    CHECK(run({"greens", "--alpha0", "0", "--theta", "10", "--beta", "2"}) == 2);
    CHECK(run({"no-such-command"}) == 2);
  }
}

TEST_CASE("matrix subcommand") {
  TempDir tmp;
  REQUIRE(run({"matrix", "--alpha0", "1.808735", "--beta", "3.61747", "--eta", "1", "--xi", "0.252", "--out",
               tmp / "m.json"}) == 0);
  const auto j = json::parse(slurp(tmp / "m.json"));
  CHECK(std::abs(value_of(j["M12"]) - std::complex<double>(-0.0025882860263221534569, -0.0049554702073812346212)) <
        1e-14);
  CHECK(j.contains("coincidence"));
}

TEST_CASE("dispersion-grid subcommand") {
  TempDir tmp;
  REQUIRE(run({"dispersion-grid", "--alpha0-lo", "1.7", "--alpha0-hi", "1.7", "--alpha0-steps", "1", "--beta-lo",
               "3.6", "--beta-hi", "3.6", "--beta-steps", "1", "--no-timestamp", "--out", tmp / "g.csv"}) == 0);
  const auto rows = csv_rows(slurp(tmp / "g.csv"));
  REQUIRE(rows.size() == 2);
  const auto r = platonic::dispersion_residual(
      platonic::assemble({1.7, 3.6, 1.0}, {1.0, 0.0, 1.0}, platonic::TruncationPolicy{}));
  CHECK(std::stod(rows[1][2]) == r.log10_abs_odd);
  CHECK(std::stod(rows[1][3]) == r.log10_abs_even);
}

TEST_CASE("spectrum subcommand") {
  TempDir tmp;
  SUBCASE("an empty stack transmits everything") {
    REQUIRE(run({"spectrum", "--theta", "30", "--beta-lo", "1", "--beta-hi", "5", "--points", "9", "--stack",
                 "empty", "--no-timestamp", "--out", tmp / "e.csv"}) == 0);
    const auto rows = csv_rows(slurp(tmp / "e.csv"));
    REQUIRE(rows.size() == 10);
    CHECK(rows[0][3] == "T");
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][3]) == 1.0);
  }
  SUBCASE("identical configuration gives byte-identical output") {
    const std::vector<std::string> args = {"spectrum", "--alpha0", "2.1", "--beta-lo", "3.4", "--beta-hi", "3.7",
                                           "--points", "41", "--stack", "triplet", "--eta", "1", "--no-timestamp",
                                           "--threads", "3"};
    auto a = args;
    a.insert(a.end(), {"--out", tmp / "a.csv"});
    auto b = args;
    b.insert(b.end(), {"--out", tmp / "b.csv"});
    b[b.size() - 3] = "1";  // thread count must not matter either
    REQUIRE(run(a) == 0);
    REQUIRE(run(b) == 0);
    CHECK(slurp(tmp / "a.csv") == slurp(tmp / "b.csv"));
  }
  SUBCASE("the config echo reproduces the run") {
    REQUIRE(run({"spectrum", "--theta", "60", "--beta-lo", "2.9", "--beta-hi", "3.0", "--points", "21", "--stack",
                 "triplet", "--eta", "2.13196", "--xi", "0.2476", "--no-timestamp", "--out", tmp / "s.csv"}) == 0);
    const auto first = slurp(tmp / "s.csv");
    const auto echo = platonic::cli::echo_path(tmp / "s.csv");
    REQUIRE(fs::exists(echo));
    const auto echoed = slurp(echo);
    CHECK(echoed.find("[spectrum]") != std::string::npos);
    fs::rename(echo, tmp / "in.toml");
    REQUIRE(run({"--config", tmp / "in.toml", "spectrum"}) == 0);
    CHECK(slurp(tmp / "s.csv") == first);
    CHECK(slurp(echo) == echoed);
  }
  SUBCASE("timestamp line is present by default") {
    REQUIRE(run({"spectrum", "--theta", "30", "--beta-lo", "1", "--beta-hi", "2", "--points", "2", "--stack",
                 "single", "--out", tmp / "t.csv"}) == 0);
    CHECK(slurp(tmp / "t.csv").rfind("# generated ", 0) == 0);
  }
}

TEST_CASE("steer subcommand") {
  TempDir tmp;
  REQUIRE(run({"steer", "--theta", "0", "--no-q", "--format", "json", "--out", tmp / "s.json"}) == 0);
  const auto j = json::parse(slurp(tmp / "s.json"));
  REQUIRE(j.size() == 1);
  CHECK(j[0]["edit_supported"] == false);
  CHECK(j[0]["xi_edit"].is_null());
  CHECK(std::abs(j[0]["beta_g"].get<double>() - 4.4560117890731575) < 1e-8);
  CHECK(j[0]["eta_star"].get<double>() > 0.0);
  CHECK(j[0]["status"] == "ok");
}

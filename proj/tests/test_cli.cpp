#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "floquet_ssh/io.hpp"

namespace fs = std::filesystem;
using namespace fssh;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("floquet_ssh_cli_" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run cli(const std::string& args) {
  const fs::path log = scratch() / "stdout.txt";
  const std::string cmd = std::string("cd ") + scratch().string() + " && " + FSSH_CLI_PATH + " " +
                          args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  Run r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(log);
  return r;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("spectrum with the static preset finds the edge pair") {
  const auto r = cli("spectrum --preset fig1-static --phi 0.3 -o " + path("static.csv"));
  REQUIRE(r.status == 0);
  CHECK(r.out.find("phase unbroken") != std::string::npos);
  CHECK(r.out.find("zero modes 2") != std::string::npos);
  const auto rows = parse_sweep_csv(slurp(path("static.csv")));
  CHECK(rows.size() == 40);
  int zero = 0;
  for (const auto& row : rows) zero += std::abs(row.re_eps) < 1e-3 && row.edge_weight > 0.5;
  CHECK(zero >= 2);
  CHECK(cli("--from-csv " + path("static.csv")).status == 0);
}

TEST_CASE("two-site chain") {
  const auto r = cli("spectrum --n-sites 2 --tunneling 1 --lambda 0 --gamma 0 -o " + path("two.csv"));
  REQUIRE(r.status == 0);
  const auto rows = parse_sweep_csv(slurp(path("two.csv")));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].re_eps == doctest::Approx(-1.0));
  CHECK(rows[1].re_eps == doctest::Approx(1.0));
}

TEST_CASE("usage and configuration errors exit with status 2 before writing") {
  const auto out = path("never.csv");
  CHECK(cli("spectrum --kappa 0.1 --kappa-omega 0.05 -o " + out).status == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK(cli("spectrum --n-sites 1 -o " + out).status == 2);
  CHECK(cli("spectrum --preset nope -o " + out).status == 2);
  CHECK(cli("spectrum --phi 0.3x -o " + out).status == 2);
  CHECK(cli("spectrum --n-sites 5 --impurity-site 3 --gamma 0.1 -o " + out).status == 2);
  CHECK(cli("spectrum --config " + path("missing.json") + " -o " + out).status == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK(cli("--unknown-flag").status == 2);
}

TEST_CASE("solver failures exit with status 1") {
  const auto r = cli("spectrum --n-sites 40 --kappa 1 --omega 0.5 --method extended "
                     "--n-floquet 200 --dim-cap 100 -o " + path("cap.csv"));
  CHECK(r.status == 1);
  CHECK(r.out.find("dimension_cap") != std::string::npos);
}

TEST_CASE("config file values are overridden by flags") {
  {
    std::ofstream cfg(path("cfg.json"));
    cfg << R"({"n_sites": 12, "gamma": 0.05, "phi": "0.25pi", "method": "static"})";
  }
  const auto r = cli("spectrum --config " + path("cfg.json") + " --n-sites 14 -o " + path("cfg.csv"));
  REQUIRE(r.status == 0);
  const auto rows = parse_sweep_csv(slurp(path("cfg.csv")));
  CHECK(rows.size() == 14);
  CHECK(rows[0].phi == doctest::Approx(0.25 * M_PI));
  {
    std::ofstream cfg(path("bad.json"));
    cfg << R"({"n_sitez": 12})";
  }
  CHECK(cli("spectrum --config " + path("bad.json") + " -o " + path("bad.csv")).status == 2);
}

TEST_CASE("a one-point Phi sweep reproduces the spectrum command") {
  REQUIRE(cli("spectrum --preset fig1-static --phi 1.0 -o " + path("one.csv")).status == 0);
  REQUIRE(cli("sweep-phi --preset fig1-static --phi-grid 1.0:1.0:1 -o " + path("sweep1.csv"))
              .status == 0);
  CHECK(slurp(path("one.csv")) == slurp(path("sweep1.csv")));
}

TEST_CASE("Phi sweep writes CSV and SVG that round trip") {
  const auto r = cli("sweep-phi --preset fig1-static --phi-grid 0:2pi:21 --plot -o " +
                     path("sweep.csv"));
  REQUIRE(r.status == 0);
  const auto csv = slurp(path("sweep.csv"));
  CHECK(parse_sweep_csv(csv).size() == 21 * 40);
  CHECK(cli("--from-csv " + path("sweep.csv")).status == 0);
  CHECK(slurp(path("sweep.svg")).find("<polyline") != std::string::npos);

  std::string tampered = csv;
  tampered.replace(tampered.find("static"), 6, "statik");
  std::ofstream(path("tampered.csv"), std::ios::binary) << tampered;
  CHECK(cli("--from-csv " + path("tampered.csv")).status == 2);
}

TEST_CASE("JSON output") {
  REQUIRE(cli("spectrum --preset fig1-static --format json -o " + path("s.json")).status == 0);
  const auto j = nlohmann::json::parse(slurp(path("s.json")));
  CHECK(j.size() == 40);
  CHECK(j[0].contains("re_eps"));
}

TEST_CASE("phase diagram row count") {
  const auto r = cli("phase-diagram --n-sites 8 --gamma 0:0.4:3 --omega 2pi:8pi:4 "
                     "--kappa-omega 0.05 --n-steps 256 --plot -o " + path("pd.csv"));
  REQUIRE(r.status == 0);
  CHECK(parse_phase_csv(slurp(path("pd.csv"))).size() == 12);
  CHECK(cli("--from-csv " + path("pd.csv")).status == 0);
  CHECK(fs::exists(path("pd.svg")));
}

TEST_CASE("threshold at the edge impurity") {
  const auto r = cli("pt-threshold --preset fig1-static --impurity-site 1 --phi 0.3");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("gamma_pt 0\n") != std::string::npos);
  CHECK(r.out.find("flag broken_at_zero") != std::string::npos);
}

TEST_CASE("effective comparison at high frequency") {
  const auto r = cli("effective-compare --preset fig1-highfreq --output " + path("eff.json"));
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(slurp(path("eff.json")));
  CHECK(j["max_deviation"].get<double>() < 5e-3);
  CHECK(j["floquet"].size() == 40);
}

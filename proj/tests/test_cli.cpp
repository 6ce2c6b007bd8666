#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "vpcs/cli_config.hpp"
#include "vpcs/commands.hpp"
#include "vpcs/constants.hpp"

using namespace vpcs;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / "vpcs_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct RunResult {
  int exit_code;
  std::string out, err;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const auto out = work_dir() / "stdout.txt";
  const auto err = work_dir() / "stderr.txt";
  const std::string cmd = (env.empty() ? "" : env + " ") +
                          std::string(VPCS_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int rc = std::system(cmd.c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  return {WEXITSTATUS(rc), slurp(out), slurp(err)};
}

std::string slurp_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("config round-trips to identical canonical JSON") {
  RunConfig c;
  c.command = "shift";
  c.model_kind = "uniform_sphere";
  c.radius_fm = 3.1;
  c.z = 82.0;
  c.lepton = "muon";
  c.state = {2, 0, true};
  c.state2 = {2, 1, true};
  c.pv_masses = {1.0, 50.0, 75.0};
  c.grid_rmin = 1e-3;
  c.grid_points = 450;
  c.format = "json";
  c.sweep_masses = {5.0, 9.0};
  const std::string once = to_canonical_json(c);
  const std::string twice = to_canonical_json(parse_config(once));
  CHECK(once == twice);
  // and a defaulted config too
  RunConfig d;
  d.command = "verify";
  CHECK(to_canonical_json(d) == to_canonical_json(parse_config(to_canonical_json(d))));
}

TEST_CASE("config validation rejects broken combinations") {
  RunConfig c;
  c.command = "noop";
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.command = "uehling";
  c.model_kind = "blob";
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.model_kind = "uniform_sphere"; // missing radius
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.model_kind = "point";
  c.grid_rmin = -1.0;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.grid_rmin = 1e-4;

  c.command = "pv-sweep";
  c.sweep_masses = {};
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.sweep_masses = {10.0, 30.0};

  c.command = "compare-ms";
  c.model_kind = "gaussian";
  c.rms_fm = 1.0;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.model_kind = "point";

  c.command = "shift";
  c.state = {2, 2, true}; // l >= n
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.state = {2, 0, true};
  validate_config(c); // no throw
}

TEST_CASE("model parameters convert from fm") {
  RunConfig c;
  c.model_kind = "uniform_sphere";
  c.radius_fm = kComptonFm; // exactly one Compton wavelength
  c.z = 1.0;
  auto m = model_from_config(c);
  CHECK(m.kind() == NuclearKind::uniform_sphere);
  CHECK(m.param1() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cli: uehling table generation is deterministic") {
  const auto csv1 = work_dir() / "u1.csv";
  const auto csv2 = work_dir() / "u2.csv";
  auto r1 = run_cli("uehling --model point --Z 1 --grid 0.001,10,50 "
                    "--grid-unit natural --out " + csv1.string());
  auto r2 = run_cli("uehling --model point --Z 1 --grid 0.001,10,50 "
                    "--grid-unit natural --out " + csv2.string());
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  const std::string body = slurp_file(csv1);
  CHECK(body == slurp_file(csv2));
  CHECK(body.substr(0, 4) == "r,V\n");
  // 50 rows plus header
  CHECK(std::count(body.begin(), body.end(), '\n') == 51);
  // every potential value is negative
  std::istringstream lines(body);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    CHECK(std::stod(line.substr(comma + 1)) < 0.0);
  }
}

TEST_CASE("cli: Z = 0 gives the all-zero table") {
  auto r = run_cli("uehling --model point --Z 0 --grid 0.1,10,10 "
                   "--grid-unit natural");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    CHECK(std::stod(line.substr(comma + 1)) == 0.0);
  }
}

TEST_CASE("cli: verify passes and reports residual numbers") {
  auto r = run_cli("verify --pv 10,20");
  CHECK(r.exit_code == 0);
  auto rep = nlohmann::json::parse(r.out);
  CHECK(rep["all_pass"].get<bool>());
  CHECK(rep["checks"].size() >= 10);
  for (const auto& c : rep["checks"]) {
    CHECK(c.contains("residual"));
    CHECK(c["residual"].is_number());
    CHECK(c["pass"].get<bool>());
  }
}

TEST_CASE("cli: injected C2 sign error is caught by verify") {
  auto r = run_cli("verify --pv 10,20 --inject-c2-sign-error");
  CHECK(r.exit_code == 1);
  auto rep = nlohmann::json::parse(r.out);
  CHECK_FALSE(rep["all_pass"].get<bool>());
  bool sum_rule_failed = false;
  for (const auto& c : rep["checks"]) {
    if (c["name"].get<std::string>().find("sum-rule") != std::string::npos &&
        !c["pass"].get<bool>())
      sum_rule_failed = true;
  }
  CHECK(sum_rule_failed);
}

TEST_CASE("cli: muonic shift report lands on the known splitting") {
  auto r = run_cli("shift --model point --Z 1 --lepton muon --state 2,0 "
                   "--state2 2,1");
  CHECK(r.exit_code == 0);
  auto rep = nlohmann::json::parse(r.out);
  const double mev =
      rep["difference_state2_minus_state"]["natural"].get<double>() *
      kElectronMassEV * 1e3;
  CHECK(std::abs(mev - 205.0) <= 0.01 * 205.0);
  CHECK(rep["state"]["uehling_shift"]["unit"] == "meV");
}

TEST_CASE("cli: pv-sweep slope is -2") {
  const auto csv = work_dir() / "sweep.csv";
  auto r = run_cli("pv-sweep --sweep-masses 10,30,100 --Z 1 --out " +
                   csv.string());
  CHECK(r.exit_code == 0);
  auto rep = nlohmann::json::parse(r.out);
  CHECK(std::abs(rep["loglog_slope"].get<double>() + 2.0) <= 0.1);
  const std::string body = slurp_file(csv);
  CHECK(body.substr(0, 18) == "m_aux,deviation\n1.");
  // deviation strictly decreasing in M
  std::istringstream lines(body);
  std::string line;
  std::getline(lines, line);
  double prev = 1e300;
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    const double d = std::stod(line.substr(comma + 1));
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("cli: compare-ms agrees across formalisms, rejects finite size") {
  auto r = run_cli("compare-ms --pv 100,200 --Z 1");
  CHECK(r.exit_code == 0);
  auto rep = nlohmann::json::parse(r.out);
  CHECK(rep["max_rel_discrepancy_uehling"].get<double>() <= 1e-10);
  CHECK(rep["log_coefficient_agreement"].get<double>() <= 1e-10);

  auto bad = run_cli("compare-ms --model gaussian --rms 1.0 --Z 1");
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("E_CONFIG") == 0);
}

TEST_CASE("cli: config file with flag overrides") {
  RunConfig c;
  c.command = "uehling";
  c.model_kind = "point";
  c.z = 2.0;
  c.grid_rmin = 0.1;
  c.grid_rmax = 1.0;
  c.grid_points = 5;
  c.grid_unit = "natural";
  const auto cfg_path = work_dir() / "cfg.json";
  std::ofstream(cfg_path) << to_canonical_json(c);

  auto r = run_cli("--config " + cfg_path.string());
  CHECK(r.exit_code == 0);
  // flag overrides Z = 0 -> zero table
  auto r0 = run_cli("--config " + cfg_path.string() + " --Z 0");
  CHECK(r0.exit_code == 0);
  CHECK(r0.out.find("0.0000000000000000e+00") != std::string::npos);
}

TEST_CASE("cli: failure paths produce code plus single-line message") {
  auto nostate = run_cli("shift --model point --Z 1");
  CHECK(nostate.exit_code == 2);
  CHECK(nostate.err.find("E_CONFIG") == 0);
  CHECK(std::count(nostate.err.begin(), nostate.err.end(), '\n') == 1);

  auto nocmd = run_cli("--Z 1");
  CHECK(nocmd.exit_code == 2);

  auto badflag = run_cli("uehling --grid 1,2");
  CHECK(badflag.exit_code == 2);
}

TEST_CASE("cli: finite-nucleus table and json format with units") {
  auto r = run_cli("uehling --model uniform_sphere --R 3.0 --Z 10 "
                   "--grid 0.005,5,25 --grid-unit natural --format json");
  CHECK(r.exit_code == 0);
  auto rep = nlohmann::json::parse(r.out);
  CHECK(rep["units"]["r"].is_string());
  CHECK(rep["units"]["V"].is_string());
  CHECK(rep["interpolation"] == "cubic_log_log");
  CHECK(rep["r"].size() == 25);
  for (const auto& v : rep["V"]) CHECK(v.get<double>() < 0.0);
}

TEST_CASE("cli: output is identical across thread counts") {
  const auto one = work_dir() / "t1.csv";
  const auto many = work_dir() / "t8.csv";
  auto r1 = run_cli("uehling --model point --Z 1 --grid 0.01,5,40 "
                    "--grid-unit natural --out " + one.string(),
                    "VPCS_THREADS=1");
  auto r2 = run_cli("uehling --model point --Z 1 --grid 0.01,5,40 "
                    "--grid-unit natural --out " + many.string(),
                    "VPCS_THREADS=8");
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(slurp_file(one) == slurp_file(many));
}

TEST_CASE("cli: shift report carries the state summary fields") {
  auto r = run_cli("shift --model point --Z 1 --lepton electron --state 1,0");
  CHECK(r.exit_code == 0);
  auto rep = nlohmann::json::parse(r.out);
  CHECK(rep["state"]["mean_r"].is_number());
  CHECK(rep["state"]["density_at_origin"].get<double>() > 0.0);
  // <r> for the ground state is 1.5 Bohr radii
  CHECK(std::abs(rep["state"]["mean_r"].get<double>() -
                 1.5 * 137.035999) < 1e-4 * 137.035999);
}

TEST_CASE("in-process run_command matches the binary behavior") {
  RunConfig c;
  c.command = "verify";
  c.pv_masses = {1.0, 10.0, 20.0};
  std::ostringstream out, err;
  CHECK(run_command(c, out, err) == 0);
  auto rep = nlohmann::json::parse(out.str());
  CHECK(rep["all_pass"].get<bool>());
}

// vpcs: bound-state vacuum-polarization (Uehling) potentials, level shifts
// and regularization-identity verification for spherically symmetric nuclei.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vpcs/cli_config.hpp"
#include "vpcs/commands.hpp"

namespace {

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"vacuum-polarization potentials and level shifts"};
  app.require_subcommand(0, 1);
  app.fallthrough(); // global flags may follow the subcommand

  std::string config_path, model, lepton, state, state2, pvs, grid, grid_unit,
      format, outp, sweep;
  double z = -1.0, radius_fm = -1.0, rms_fm = -1.0, fermi_c = -1.0,
         fermi_a = -1.0;
  bool dirac = false, inject = false;

  app.add_option("--config", config_path, "JSON config file (flags override)");
  app.add_option("--model", model, "point|uniform_sphere|gaussian|fermi2");
  app.add_option("--R", radius_fm, "uniform sphere radius in fm");
  app.add_option("--rms", rms_fm, "gaussian rms radius in fm");
  app.add_option("--c", fermi_c, "fermi2 half-density radius in fm");
  app.add_option("--a", fermi_a, "fermi2 diffuseness in fm");
  app.add_option("--Z", z, "nuclear charge number");
  app.add_option("--lepton", lepton, "electron|muon");
  app.add_option("--state", state, "n,l (or n,kappa with --dirac)");
  app.add_option("--state2", state2, "second state for differences");
  app.add_flag("--dirac", dirac, "interpret states as (n, kappa)");
  app.add_option("--pv", pvs, "auxiliary masses m1,m2 in loop-mass units");
  app.add_option("--grid", grid, "rmin,rmax,N");
  app.add_option("--grid-unit", grid_unit, "bohr|natural|fm");
  app.add_option("--format", format, "csv|json");
  app.add_option("--out", outp, "output path (default stdout)");
  app.add_option("--sweep-masses", sweep, "pv-sweep mass scales m,a,b,...");
  auto* hidden = app.add_flag("--inject-c2-sign-error", inject,
                              "test mode: break the C2 sign in verify");
  hidden->group(""); // hidden from help

  for (const char* name :
       {"uehling", "shift", "verify", "pv-sweep", "compare-ms"})
    app.add_subcommand(name, "");

  CLI11_PARSE(app, argc, argv);

  vpcs::RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) {
        std::cerr << "E_CONFIG cannot read config file " << config_path << "\n";
        return 2;
      }
      std::stringstream buf;
      buf << f.rdbuf();
      cfg = vpcs::parse_config(buf.str());
    }
    if (!app.get_subcommands().empty())
      cfg.command = app.get_subcommands().front()->get_name();

    if (!model.empty()) cfg.model_kind = model;
    if (z >= 0.0) cfg.z = z;
    if (radius_fm >= 0.0) cfg.radius_fm = radius_fm;
    if (rms_fm >= 0.0) cfg.rms_fm = rms_fm;
    if (fermi_c >= 0.0) cfg.fermi_c_fm = fermi_c;
    if (fermi_a >= 0.0) cfg.fermi_a_fm = fermi_a;
    if (!lepton.empty()) cfg.lepton = lepton;
    if (dirac) cfg.dirac = true;
    if (inject) cfg.inject_c2_sign_error = true;
    if (!state.empty()) {
      auto v = parse_csv_doubles(state);
      if (v.size() != 2) {
        std::cerr << "E_CONFIG --state expects n,l\n";
        return 2;
      }
      cfg.state = {static_cast<int>(v[0]), static_cast<int>(v[1]), true};
    }
    if (!state2.empty()) {
      auto v = parse_csv_doubles(state2);
      if (v.size() != 2) {
        std::cerr << "E_CONFIG --state2 expects n,l\n";
        return 2;
      }
      cfg.state2 = {static_cast<int>(v[0]), static_cast<int>(v[1]), true};
    }
    if (!pvs.empty()) {
      auto v = parse_csv_doubles(pvs);
      if (v.size() == 2)
        cfg.pv_masses = {1.0, v[0], v[1]};
      else if (v.size() == 3)
        cfg.pv_masses = v;
      else {
        std::cerr << "E_CONFIG --pv expects m1,m2 (loop mass fixed at 1)\n";
        return 2;
      }
    }
    if (!grid.empty()) {
      auto v = parse_csv_doubles(grid);
      if (v.size() != 3) {
        std::cerr << "E_CONFIG --grid expects rmin,rmax,N\n";
        return 2;
      }
      cfg.grid_rmin = v[0];
      cfg.grid_rmax = v[1];
      cfg.grid_points = static_cast<int>(v[2]);
    }
    if (!grid_unit.empty()) cfg.grid_unit = grid_unit;
    if (!format.empty()) cfg.format = format;
    if (!outp.empty()) cfg.out_path = outp;
    if (!sweep.empty()) cfg.sweep_masses = parse_csv_doubles(sweep);
  } catch (const std::exception& e) {
    std::cerr << "E_CONFIG " << e.what() << "\n";
    return 2;
  }

  if (cfg.command.empty()) {
    std::cerr << "E_CONFIG no command given "
                 "(uehling|shift|verify|pv-sweep|compare-ms)\n";
    return 2;
  }
  return vpcs::run_command(cfg, std::cout, std::cerr);
}

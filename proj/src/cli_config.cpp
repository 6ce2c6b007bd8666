#include "vpcs/cli_config.hpp"

#include <set>

#include <json.hpp>

#include "vpcs/constants.hpp"

namespace vpcs {

using ordered_json = nlohmann::ordered_json;

RunConfig parse_config(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  RunConfig c;
  try {
    c.command = j.value("command", c.command);
    if (j.contains("model")) {
      const auto& m = j["model"];
      c.model_kind = m.value("kind", c.model_kind);
      c.radius_fm = m.value("R_fm", c.radius_fm);
      c.rms_fm = m.value("rms_fm", c.rms_fm);
      c.fermi_c_fm = m.value("c_fm", c.fermi_c_fm);
      c.fermi_a_fm = m.value("a_fm", c.fermi_a_fm);
    }
    c.z = j.value("Z", c.z);
    c.lepton = j.value("lepton", c.lepton);
    c.dirac = j.value("dirac", c.dirac);
    if (j.contains("state")) {
      c.state.n = j["state"].value("n", 2);
      c.state.lk = j["state"].value(c.dirac ? "kappa" : "l", 0);
      c.state.set = true;
    }
    if (j.contains("state2")) {
      c.state2.n = j["state2"].value("n", 2);
      c.state2.lk = j["state2"].value(c.dirac ? "kappa" : "l", 0);
      c.state2.set = true;
    }
    if (j.contains("pv")) c.pv_masses = j["pv"].get<std::vector<double>>();
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      c.grid_rmin = g.value("r_min", c.grid_rmin);
      c.grid_rmax = g.value("r_max", c.grid_rmax);
      c.grid_points = g.value("points", c.grid_points);
      c.grid_unit = g.value("unit", c.grid_unit);
    }
    c.format = j.value("format", c.format);
    c.out_path = j.value("out", c.out_path);
    if (j.contains("sweep_masses"))
      c.sweep_masses = j["sweep_masses"].get<std::vector<double>>();
    c.tolerance = j.value("tolerance", c.tolerance);
    c.inject_c2_sign_error =
        j.value("inject_c2_sign_error", c.inject_c2_sign_error);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: bad field: ") + e.what());
  }
  return c;
}

std::string to_canonical_json(const RunConfig& c) {
  ordered_json j;
  j["command"] = c.command;
  j["model"] = {{"kind", c.model_kind},
                {"R_fm", c.radius_fm},
                {"rms_fm", c.rms_fm},
                {"c_fm", c.fermi_c_fm},
                {"a_fm", c.fermi_a_fm}};
  j["Z"] = c.z;
  j["lepton"] = c.lepton;
  j["dirac"] = c.dirac;
  if (c.state.set)
    j["state"] = {{"n", c.state.n}, {c.dirac ? "kappa" : "l", c.state.lk}};
  if (c.state2.set)
    j["state2"] = {{"n", c.state2.n}, {c.dirac ? "kappa" : "l", c.state2.lk}};
  j["pv"] = c.pv_masses;
  j["grid"] = {{"r_min", c.grid_rmin},
               {"r_max", c.grid_rmax},
               {"points", c.grid_points},
               {"unit", c.grid_unit}};
  j["format"] = c.format;
  j["out"] = c.out_path;
  j["sweep_masses"] = c.sweep_masses;
  j["tolerance"] = c.tolerance;
  j["inject_c2_sign_error"] = c.inject_c2_sign_error;
  return j.dump(2) + "\n";
}

void validate_config(const RunConfig& c) {
  static const std::set<std::string> commands = {"uehling", "shift", "verify",
                                                 "pv-sweep", "compare-ms"};
  if (!commands.count(c.command))
    throw ConfigError("config: unknown command '" + c.command +
                      "' (expected uehling|shift|verify|pv-sweep|compare-ms)");
  static const std::set<std::string> kinds = {"point", "uniform_sphere",
                                              "gaussian", "fermi2"};
  if (!kinds.count(c.model_kind))
    throw ConfigError("config: unknown model kind '" + c.model_kind + "'");
  if (c.model_kind == "uniform_sphere" && !(c.radius_fm > 0.0))
    throw ConfigError("config: uniform_sphere requires R_fm > 0 (flag --R)");
  if (c.model_kind == "gaussian" && !(c.rms_fm > 0.0))
    throw ConfigError("config: gaussian requires rms_fm > 0 (flag --rms)");
  if (c.model_kind == "fermi2" && (!(c.fermi_c_fm > 0.0) || !(c.fermi_a_fm > 0.0)))
    throw ConfigError("config: fermi2 requires c_fm > 0 and a_fm > 0");
  if (!(c.z >= 0.0))
    throw ConfigError("config: Z must be nonnegative");
  if (c.lepton != "electron" && c.lepton != "muon")
    throw ConfigError("config: lepton must be electron or muon");
  if (!c.pv_masses.empty() && c.pv_masses.size() != 3)
    throw ConfigError("config: pv must hold exactly three masses [m0, m1, m2]");
  if (!c.pv_masses.empty() &&
      !(c.pv_masses[0] < c.pv_masses[1] && c.pv_masses[1] < c.pv_masses[2]))
    throw ConfigError("config: pv masses must be strictly increasing");
  if (!(c.grid_rmin > 0.0) || !(c.grid_rmax > c.grid_rmin))
    throw ConfigError("config: grid needs 0 < r_min < r_max");
  if (c.grid_points < 2 || c.grid_points > 2'000'000)
    throw ConfigError("config: grid points out of range");
  if (c.grid_unit != "bohr" && c.grid_unit != "natural" && c.grid_unit != "fm")
    throw ConfigError("config: grid unit must be bohr, natural or fm");
  if (c.format != "csv" && c.format != "json")
    throw ConfigError("config: format must be csv or json");
  if (c.command == "pv-sweep") {
    if (c.sweep_masses.size() < 2)
      throw ConfigError(
          "config: pv-sweep needs at least two auxiliary mass scales "
          "(flag --sweep-masses m1,m2,...)");
    for (double mass : c.sweep_masses)
      if (!(mass > 1.0))
        throw ConfigError("config: sweep masses must exceed the loop mass 1");
  }
  if (c.command == "compare-ms" && c.model_kind != "point")
    throw ConfigError(
        "config: compare-ms supports only the point model "
        "(the momentum-space path is point-charge only)");
  if (c.command == "shift" && !c.state.set)
    throw ConfigError("config: shift needs a state (flag --state n,l)");
  if (c.command == "shift") {
    auto check_state = [&](const StateSpec& s) {
      if (!s.set) return;
      if (s.n < 1) throw ConfigError("config: state n must be >= 1");
      if (c.dirac) {
        if (s.lk == 0 || std::abs(s.lk) > s.n || s.lk == s.n)
          throw ConfigError("config: invalid (n, kappa) state");
      } else {
        if (s.lk < 0 || s.lk >= s.n)
          throw ConfigError("config: state needs 0 <= l < n");
      }
    };
    check_state(c.state);
    check_state(c.state2);
  }
}

NuclearModel model_from_config(const RunConfig& c) {
  if (c.model_kind == "point") return NuclearModel::point(c.z);
  if (c.model_kind == "uniform_sphere")
    return NuclearModel::uniform_sphere(c.z, fm_to_natural(c.radius_fm));
  if (c.model_kind == "gaussian")
    return NuclearModel::gaussian(c.z, fm_to_natural(c.rms_fm));
  if (c.model_kind == "fermi2")
    return NuclearModel::fermi2(c.z, fm_to_natural(c.fermi_c_fm),
                                fm_to_natural(c.fermi_a_fm));
  throw ConfigError("config: unknown model kind '" + c.model_kind + "'");
}

} // namespace vpcs

#pragma once

#include <string>
#include <vector>

#include "vpcs/nuclear_model.hpp"

// Run configuration for the command-line tool: JSON config file plus flag
// overrides (flags win).  The parsed form round-trips to canonical JSON.

namespace vpcs {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct StateSpec {
  int n = 2;
  int lk = 0;   // l (nonrelativistic) or kappa (when dirac is set)
  bool set = false;
};

struct RunConfig {
  std::string command; // uehling | shift | verify | pv-sweep | compare-ms

  std::string model_kind = "point"; // point|uniform_sphere|gaussian|fermi2
  double z = 1.0;
  double radius_fm = 0.0;  // uniform_sphere
  double rms_fm = 0.0;     // gaussian
  double fermi_c_fm = 0.0; // fermi2 half-density radius
  double fermi_a_fm = 0.0; // fermi2 diffuseness

  std::string lepton = "muon"; // electron | muon
  bool dirac = false;          // state specs hold kappa instead of l
  StateSpec state;
  StateSpec state2;

  std::vector<double> pv_masses = {1.0, 100.0, 200.0}; // m0, m1, m2

  double grid_rmin = 1e-4;
  double grid_rmax = 50.0;
  int grid_points = 600;
  std::string grid_unit = "bohr"; // bohr | natural | fm

  std::string format = "csv"; // csv | json
  std::string out_path;       // empty: stdout

  std::vector<double> sweep_masses = {10.0, 30.0, 100.0};

  double tolerance = 0.0; // 0: per-check defaults

  bool inject_c2_sign_error = false; // verify falsifiability hook
};

// JSON round-trip.  parse_config(to_canonical_json(c)) == c field by field.
RunConfig parse_config(const std::string& json_text);
std::string to_canonical_json(const RunConfig& cfg);

// Validation shared by every front end; throws ConfigError with an
// actionable message.
void validate_config(const RunConfig& cfg);

// Instantiate the nuclear model (lengths converted from fm).
NuclearModel model_from_config(const RunConfig& cfg);

} // namespace vpcs

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "vpcs/nuclear_model.hpp"
#include "vpcs/potential_table.hpp"

// Hydrogenic bound states: nonrelativistic analytic, relativistic
// point-Coulomb analytic, and a shooting solver for the radial Dirac
// equations with an extended nuclear charge.  Lepton masses are in loop-mass
// (electron) units; lengths in loop Compton wavelengths.

namespace vpcs {

enum class Species { electron, muon };

struct BoundState {
  Species species = Species::electron;
  double lepton_mass = 1.0;
  bool reduced_mass = false; // nonrelativistic densities only
  bool relativistic = false;
  int n = 1;
  int kappa = 0; // 0 for nonrelativistic states
  int l = 0;
  double zalpha = 0.0;
  // Binding energy for nonrelativistic states; total energy (rest mass
  // included) for Dirac states.
  double energy = 0.0;
  double effective_mass = 1.0; // mass entering the density
  double bohr_radius = 0.0;    // 1/(effective_mass * zalpha)
  // Nonrelativistic |phi_n(0)|^2 for s states, 0 otherwise; this is the
  // quantity entering the heavy-mass (delta-potential) estimate.
  double density_at_origin = 0.0;

  // normalized: int_0^inf radial_density(r) dr = 1
  std::function<double(double)> radial_density;
  // Radial amplitudes r*f1 and r*f2 of the Dirac spinor (f2 empty/zero for
  // nonrelativistic states); used by the vector-term projection.
  std::function<double(double)> g_component;
  std::function<double(double)> f_component;
};

class CoverageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Analytic nonrelativistic Coulomb state (associated Laguerre radial
// functions); reduced-mass correction applied against a proton when asked.
BoundState nr_hydrogenic(int n, int l, double zalpha, double lepton_mass,
                         bool reduced_mass_correction, Species species);

// Analytic point-Coulomb Dirac state.
BoundState dirac_point(int n, int kappa, double zalpha, double lepton_mass,
                       Species species = Species::electron);

// Shooting/matching solution of the coupled radial Dirac equations on a log
// grid for an arbitrary nuclear model; matches dirac_point for a point
// nucleus.  Z alpha comes from the model charge.
BoundState radial_solve(const NuclearModel& model, int n, int kappa,
                        double lepton_mass, Species species = Species::electron);

// Expectation value int radial_density(r) V(r) dr of a tabulated potential.
// Throws CoverageError when more than 1e-8 of the density lies beyond the
// table (the tabulated log-log extrapolation handles the residual tails).
double level_shift(const BoundState& state, const PotentialTable& potential);

// Heavy-mass (delta-potential) estimate -(4 Z alpha^2/15) |phi(0)|^2 C/m^2;
// zero for states vanishing at the origin.
double delta_approx_shift(const BoundState& state, double coefficient,
                          double mass);

// Multiplet-summed radial projection phi^dag (alpha . xhat) phi evaluated at
// 20 sample radii via the closed-form spin-angular sums; returns the largest
// magnitude (identically zero up to roundoff).
double vector_term_projection(const BoundState& state);

// Multiplet angular density sum_mu |chi_kappa^mu|^2 = (2j+1)/4pi via the
// Legendre-recurrence route (exposed for the vanishing test).
double multiplet_angular_sum(int kappa);

// Numerical spherical quadrature of int dOmega2 xhat2 / |x2 - x1| for
// collinear x1 = x1 zhat; returns the z component (the only survivor).
// Closed form: (4 pi/3) x_< / x_>^2.
double solid_angle_xhat_integral(double x2, double x1, int n_theta = 200,
                                 int n_phi = 64);

} // namespace vpcs

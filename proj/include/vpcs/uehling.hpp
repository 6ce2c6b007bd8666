#pragma once

#include <vector>

#include "vpcs/nuclear_model.hpp"
#include "vpcs/pauli_villars.hpp"
#include "vpcs/potential_table.hpp"
#include "vpcs/quadrature.hpp"

// Coordinate-space one-potential vacuum polarization: the finite-auxiliary-
// mass potential, the charge-renormalization log, and the renormalized
// Uehling potential for point and extended nuclei.

namespace vpcs {

// -(1/3) sum_i C_i ln m_i^2 (closed form).
double renormalization_log(const PauliVillarsSet& pv);

// Same quantity from the u-integral int_0^inf du sum C_i (u^2/c^3 - u^4/3c^5);
// keeping the sum inside the integral is essential.
double renormalization_log_quadrature(const PauliVillarsSet& pv,
                                      double rel_tol = 1e-11);

// Evaluating each mass term with the rescaling u -> m_i u makes every term
// mass independent, so the regulated sum collapses to zero instead of the
// log; kept as a regression guard.
double renormalization_log_wrong_order(const PauliVillarsSet& pv);

// Renormalized Uehling potential of a point charge, t-form:
// -(Z alpha^2 / 3 pi) int_1^inf sqrt(t^2-1)(2/t^2+1/t^4) e^{-2 t m r} / r.
double uehling_point(double r, double m_loop = 1.0, double z = 1.0,
                     double rel_tol = 1e-12);

// The same potential from the u-form integrand (independent path):
// -(Z alpha^2 / pi) int_0^inf du u^2 (3m^2+2u^2)/(3 c^5) e^{-2 c r} / r.
double uehling_u_form(double r, double m_loop = 1.0, double z = 1.0,
                      double rel_tol = 1e-12);

// Uehling potential folded with an extended charge distribution (finite at
// r = 0).  Charge number is taken from the model.
double uehling_finite(const NuclearModel& model, double r, double m_loop = 1.0,
                      double rel_tol = 1e-10);

// Finite-auxiliary-mass one-potential vacuum-polarization potential,
// regulated sum kept inside the u-integral.
double vp21_potential_finite_mass(const NuclearModel& model, double r,
                                  const PauliVillarsSet& pv,
                                  double rel_tol = 1e-10);

// Solid-angle integral int dOmega' e^{-2cD}/D over directions of r' at fixed
// radii, D = |x - r'|; closed form (pi/(c x r'))[e^{-2c|x-r'|}-e^{-2c(x+r')}]
// used by every 3D -> 1D reduction here (verified against brute-force 2D
// quadrature in the tests).
double yukawa_shell_kernel(double c, double x, double rp);

struct IdentityPair {
  double lhs;
  double rhs;
};

// int d^3w [V(w)-V(x)] e^{-2c|x-w|}/|x-w|  vs  (pi Z alpha/c^2) int d^3r rho
// e^{-2c|x-r|}/|x-r|, both by independent radial reductions.
IdentityPair potential_difference_kernel_identity(const NuclearModel& model,
                                                  double x, double c);

// int d^3x2 (1/|x2-x1|) e^{-2c|x2-r|}/|x2-r|  vs  closed form
// (pi/(c^2 d))(1 - e^{-2 c d}), d = |x1 - r_src| (collinear geometry).
IdentityPair coulomb_smear_identity(double x1, double r_src, double c);

struct FalloffCheck {
  double fitted_exponent;           // regulated: -5 expected
  std::vector<double> u;            // probe points in [10 m2, 100 m2]
  std::vector<double> magnitude;    // |regulated integrand|
};

// Falloff of the regulated rho-folded 1/d^2 integrand at large u.
FalloffCheck large_u_falloff_check(const NuclearModel& model, double x,
                                   const PauliVillarsSet& pv);

// Same probe for a single unregulated mass; the fitted exponent is -1,
// which is why regularization is required.
double unregulated_falloff_exponent(const NuclearModel& model, double x,
                                    double mass);

struct VpDecomposition {
  double renorm_log_coefficient; // -(1/3) sum C_i ln m_i^2
  PotentialTable uehling_part;   // full potential minus the renorm term
};

// Split the finite-mass potential per V = (Z alpha^2/pi) * coeff * (rho*1/r)
// + remainder, tabulated on the given radii.
VpDecomposition vp_decompose(const NuclearModel& model,
                             const PauliVillarsSet& pv,
                             const std::vector<double>& radii);

// Tabulate the renormalized Uehling potential on the given radii
// (parallelized over radii; deterministic ordering).
PotentialTable build_uehling_table(const NuclearModel& model,
                                   const std::vector<double>& radii,
                                   double m_loop = 1.0);

std::vector<double> log_grid(double r_min, double r_max, int points);

} // namespace vpcs

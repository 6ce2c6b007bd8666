#pragma once

#include <stdexcept>
#include <string>

// Spherically symmetric nuclear charge densities normalized to unit total
// charge, and their electrostatic potentials V(r) = -Z*alpha * (rho * 1/r).
// Lengths are in loop-Compton-wavelength units (see constants.hpp).

namespace vpcs {

enum class NuclearKind { point, uniform_sphere, gaussian, fermi2 };

class NuclearModel {
public:
  static NuclearModel point(double z);
  static NuclearModel uniform_sphere(double z, double radius);
  // Gaussian parameterized by its rms radius.
  static NuclearModel gaussian(double z, double r_rms);
  // Two-parameter Fermi distribution rho0 / (1 + exp((r-c)/a)); the
  // normalization constant is computed numerically once and cached.
  static NuclearModel fermi2(double z, double c, double a);

  NuclearKind kind() const { return kind_; }
  double z() const { return z_; }

  // Normalized charge density. Unsupported for the point model (a delta
  // distribution, handled symbolically by callers).
  double density(double r) const;

  // V(r) = -(Z alpha / r) int_0^r 4 pi s^2 rho ds - Z alpha int_r^inf 4 pi s rho ds.
  double potential(double r) const;

  // int d^3r' rho(r') / |x - r'|  (equals -potential/(Z alpha); kept separate
  // so it stays meaningful for Z-independent identities).
  double coulomb_convolution(double r) const;

  // Radius beyond which the remaining charge is negligible at double
  // precision; 0 for the point model.
  double extent() const;

  // 4 pi int r^2 rho dr by quadrature (1 for the point model by definition).
  double normalization_check() const;

  double param1() const { return p1_; }
  double param2() const { return p2_; }

private:
  NuclearModel(NuclearKind kind, double z, double p1, double p2);

  NuclearKind kind_;
  double z_;
  double p1_ = 0.0; // R, r_rms, or c
  double p2_ = 0.0; // fermi2 diffuseness a
  double fermi_norm_ = 0.0;
};

// Generic radial-reduction evaluation of the potential by quadrature; the
// closed-form branches in NuclearModel::potential are checked against this.
double potential_radial_reduction(const NuclearModel& model, double r);

} // namespace vpcs

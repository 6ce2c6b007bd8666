#pragma once

#include <functional>

#include "vpcs/pauli_villars.hpp"
#include "vpcs/rational.hpp"

// Momentum-space evaluation of the one-potential vacuum-polarization trace
// density and potential for a point nucleus, used to cross-validate the
// coordinate-space results and the renormalization-log bookkeeping.

namespace vpcs {

// Feynman-parameter integral int_0^1 dy y(1-y)/[r^2 + k^2 y(1-y) + m^2]^2,
// direct y-quadrature.
double feynman_y_integral(double r2, double k2, double mass,
                          double rel_tol = 1e-12);

// Same integral after y = (t - sqrt(t^2-1))/2t and integration by parts:
// 1/(6(r^2+m^2)^2) - int_1^inf dt sqrt(t^2-1)/12 (2/t^4+1/t^6)
//   k^2/(r^2 + k^2/4t^2 + m^2)^3.
double feynman_y_integral_tform(double r2, double k2, double mass,
                                double rel_tol = 1e-12);

// int_0^inf dr r^3 sum_i C_i (y-integral): closed route
// -(1/12) sum C_i ln m_i^2 + (1/3) int dt sqrt(t^2-1)(2+1/t^2)
//   sum C_i m_i^2/(k^2+4 t^2 m_i^2).
double regulated_ry_integral(double k2, const PauliVillarsSet& pv,
                             double rel_tol = 1e-12);

// Same quantity by brute-force (r, y) double quadrature of the regulated
// sum (slower; the cross-check path).
double regulated_ry_integral_direct(double k2, const PauliVillarsSet& pv,
                                    double rel_tol = 1e-8);

// |int_0^inf dr d/dr [ r^4 sum_i C_i int_0^1 dy /(r^2+k^2 y(1-y)+m_i^2) ]|:
// the gauge-noninvariant piece, a total derivative whose regulated boundary
// values vanish.
double gauge_term_vanishing(double k2, const PauliVillarsSet& pv);

// Both sides of the partial-fraction identity behind the gauge-term
// cancellation, in exact rational arithmetic: sum C_i/(R^2+m_i^2) equals
// [C0 m1^2 m2^2 + C1 m0^2 m2^2 + C2 m0^2 m1^2] / prod (R^2+m_i^2).
struct RationalIdentity {
  Rational lhs;
  Rational rhs;
};
RationalIdentity sum_identity_exact(const Rational& r2, const Rational& m02,
                                    const Rational& m12, const Rational& m22);

// Momentum-space trace density: smooth part plus a delta term handled
// symbolically through its coefficient.
struct TraceDensity {
  double delta_coefficient; // (Z alpha/3pi) sum C_i ln m_i^2, times delta(x2)
  std::function<double(double)> smooth;
};
TraceDensity make_trace_density(const PauliVillarsSet& pv, double zalpha);

// Smooth part at radius x2 > 0:
// -(Z alpha/3pi^2) int dt sqrt(t^2-1)(2+1/t^2) sum C_i m_i^2 e^{-2 t m_i x2}/x2.
double ms_trace_density_smooth(double x2, const PauliVillarsSet& pv,
                               double zalpha, double rel_tol = 1e-12);

// Coordinate-space point-charge density for the dual-path check:
// (Z alpha/pi^2) int du sum C_i [-u^2(3 m_i^2+2u^2)/(3 c_i^3)] e^{-2 c_i x}/x.
double coordinate_trace_density(double x, const PauliVillarsSet& pv,
                                double zalpha, double rel_tol = 1e-12);

// 4 pi int r^2 smooth(r) dr; zero by the sum rules (the delta term carries
// the whole integrated charge).
double ms_trace_smooth_integral(const PauliVillarsSet& pv, double zalpha);

// Momentum-space potential for a point nucleus.  renormalized=true drops the
// charge-renormalization log and takes the large-auxiliary-mass limit (only
// the loop-mass exponential survives); renormalized=false keeps every term
// and matches the coordinate-space finite-mass potential.  Evaluated by
// convolving the trace density, not by the coordinate-space kernel.
double ms_potential(double r, const PauliVillarsSet& pv, bool renormalized,
                    double z = 1.0, double rel_tol = 1e-11);

// The two bookkeeping routes to the integrated log coefficient
// (Z alpha/3pi) sum C_i ln m_i^2: closed momentum-space form vs the
// coordinate-space u-quadrature.
double log_coefficient_momentum_route(const PauliVillarsSet& pv, double zalpha);
double log_coefficient_coordinate_route(const PauliVillarsSet& pv, double zalpha,
                                        double rel_tol = 1e-12);

struct PitfallRecord {
  double wrong_order; // per-mass rescaling u -> m_i u: terms go mass blind
  double right_order; // (Z alpha/3pi) sum C_i ln m_i^2
};
PitfallRecord variable_change_pitfall(const PauliVillarsSet& pv,
                                      double zalpha = 1.0);

} // namespace vpcs

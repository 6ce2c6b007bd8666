#include "vpcs/pauli_villars.hpp"

#include <cmath>

namespace vpcs {

namespace {
constexpr double kPi = 3.14159265358979323846;

// sum C_i c_i evaluated without cancellation at large |u|: with both sum
// rules, c_i = u + m_i^2/(2u) + phi(m_i) leaves only
// phi(m) = -m^4 / (2u (c+u)^2), so the sum is O(m^4/u^3) termwise.
double sum_c_c_stable(double u, const PauliVillarsSet& pv) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double m = pv.mass(i);
    const double c = std::hypot(m, u);
    const double cu = c + u;
    s += pv.coeff(i) * (-m * m * m * m / (2.0 * u * cu * cu));
  }
  return s;
}

double sum_c_c_direct(double u, const PauliVillarsSet& pv) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += pv.coeff(i) * std::hypot(pv.mass(i), u);
  return s;
}
} // namespace

PauliVillarsSet make_pv_set(double m0, double m1, double m2) {
  if (!(m0 > 0.0) || !(m1 > 0.0) || !(m2 > 0.0))
    throw std::domain_error("make_pv_set: masses must be positive");
  if (!(m0 < m1 && m1 < m2))
    throw std::domain_error("make_pv_set: need 0 < m0 < m1 < m2");
  // factored difference avoids cancellation for near-degenerate masses
  const double d21 = (m2 - m1) * (m2 + m1);
  if (!(d21 > 1e-12 * m2 * m2))
    throw std::domain_error("make_pv_set: degenerate auxiliary masses (m1 ~ m2)");
  PauliVillarsSet pv;
  pv.m0 = m0;
  pv.m1 = m1;
  pv.m2 = m2;
  pv.c1 = (m0 - m2) * (m0 + m2) / d21;
  pv.c2 = -1.0 - pv.c1; // enforces the first sum rule exactly
  return pv;
}

double free_trace(double dx, double u, double mass) {
  if (!(dx > 0.0)) throw std::domain_error("free_trace: dx must be > 0");
  const double c = std::hypot(mass, u);
  return u * std::exp(-c * dx) / (kPi * dx);
}

double regulated_equal_coordinate_trace(double u, const PauliVillarsSet& pv) {
  if (u == 0.0) return 0.0;
  const double au = std::abs(u);
  const double s =
      (au > pv.m2) ? sum_c_c_stable(au, pv) : sum_c_c_direct(au, pv);
  return u / kPi * s;
}

double regulated_trace_d1(double u, const PauliVillarsSet& pv) {
  // (1/pi) sum C_i (m_i^2 + 2u^2)/c_i = (|u|/pi) sum C_i f(x_i), x = (m/u)^2,
  // f(x) = (2+x)/sqrt(1+x).  The sum rules kill f(0) and f'(0) = 0, so the
  // subtracted form f(x) - 2 = x^2/(sqrt(1+x)(2+x+2 sqrt(1+x))) is exact and
  // free of the O(1) cancellation at large |u|.
  const double au = std::abs(u);
  double s = 0.0;
  if (au == 0.0) {
    for (int i = 0; i < 3; ++i) s += pv.coeff(i) * pv.mass(i);
    return s / kPi;
  }
  for (int i = 0; i < 3; ++i) {
    const double x = (pv.mass(i) / au) * (pv.mass(i) / au);
    const double a = std::sqrt(1.0 + x);
    s += pv.coeff(i) * x * x / (a * (2.0 + x + 2.0 * a));
  }
  return au * s / kPi;
}

double regulated_trace_d2(double u, const PauliVillarsSet& pv) {
  // (1/pi) sum C_i u (2u^2 + 3 m_i^2)/c_i^3 = (sign(u)/pi) sum C_i g(x_i),
  // g(x) = (2+3x)/(1+x)^{3/2}; with g(0), g'(0) = 0 removed by the sum rules:
  // g(x) - 2 = -(3x^2 + 4x^3)/((1+x)^{3/2}(2+3x+2(1+x)^{3/2})).
  if (u == 0.0) return 0.0;
  const double au = std::abs(u);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double x = (pv.mass(i) / au) * (pv.mass(i) / au);
    const double a = std::sqrt(1.0 + x);
    const double a3 = (1.0 + x) * a;
    s += pv.coeff(i) * (-(3.0 + 4.0 * x) * x * x) /
         (a3 * (2.0 + 3.0 * x + 2.0 * a3));
  }
  return (u > 0.0 ? 1.0 : -1.0) * s / kPi;
}

double regulated_trace_d3(double u, const PauliVillarsSet& pv) {
  // (3/pi) sum C_i m_i^4 / c_i^5, even in u
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double m = pv.mass(i);
    const double c = std::hypot(m, u);
    const double c2 = c * c;
    s += pv.coeff(i) * m * m * m * m / (c2 * c2 * c);
  }
  return 3.0 * s / kPi;
}

double regulated_log_sum_integrand(double u, const PauliVillarsSet& pv) {
  // per mass: u^2/c^3 - u^4/(3c^5) = h(x)/(3u), h(x) = (3x+2)/(1+x)^{5/2},
  // x = (m/u)^2.  The sum rules kill h(0) = 2 and h'(0) = -2, so for small x
  // the subtracted form
  //   h(x) - (2 - 2x) = x^2 (5 + 20x + 20x^2 - 4x^3 - 12x^4 - 4x^5)
  //                     / ((1+x)^{5/2} (3x+2 + (2-2x)(1+x)^{5/2}))
  // is used; it is exact (difference of squares) and cancellation free.
  if (u == 0.0) return 0.0;
  double s = 0.0;
  if (u >= 2.0 * pv.m2) {
    for (int i = 0; i < 3; ++i) {
      const double x = (pv.mass(i) / u) * (pv.mass(i) / u);
      const double p = std::pow(1.0 + x, 2.5);
      const double numer =
          x * x *
          (5.0 + x * (20.0 + x * (20.0 + x * (-4.0 + x * (-12.0 - 4.0 * x)))));
      s += pv.coeff(i) * numer / (p * (3.0 * x + 2.0 + (2.0 - 2.0 * x) * p));
    }
    return s / (3.0 * u);
  }
  for (int i = 0; i < 3; ++i) {
    const double m = pv.mass(i);
    const double c = std::hypot(m, u);
    const double c2 = c * c;
    s += pv.coeff(i) * u * u * (3.0 * m * m + 2.0 * u * u) / (3.0 * c2 * c2 * c);
  }
  return s;
}

double zero_potential_vanishing(const PauliVillarsSet& pv) {
  const double U = 1000.0 * pv.m2;
  // symmetric truncation: the odd tail beyond U contributes nothing
  QuadratureOptions opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-14 * pv.m2 * pv.m2;
  auto sym = integrate_adaptive(
      [&](double u) {
        return regulated_equal_coordinate_trace(u, pv) +
               regulated_equal_coordinate_trace(-u, pv);
      },
      0.0, U, opts);
  return std::abs(sym.value);
}

double unregulated_trace_integral_attempt(double mass) {
  if (!(mass > 0.0))
    throw std::domain_error("unregulated_trace_integral_attempt: mass must be > 0");
  auto r = integrate_semi_infinite(
      [mass](double u) { return u * std::hypot(mass, u) / kPi; }, mass, 1e-10,
      200'000);
  return r.value; // unreachable: the integrand grows without bound
}

double two_potential_vanishing(const PauliVillarsSet& pv) {
  // truncation radius large enough that the d1 boundary values, which decay
  // like sum C m^4/(4 pi U^3), sit below the reporting floor even for
  // near-degenerate sets with large coefficients
  const double U =
      std::max(1000.0 * pv.m2,
               std::cbrt(std::abs(pv.sum_coeff_m4()) / (4.0 * kPi) * 1e12));
  QuadratureOptions opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-13 * std::max(1.0, std::abs(regulated_trace_d1(0.0, pv)));
  auto sym = integrate_adaptive(
      [&](double u) {
        return regulated_trace_d2(u, pv) + regulated_trace_d2(-u, pv);
      },
      0.0, U, opts);
  const double boundary = std::abs(pv.sum_coeff_m4()) / (4.0 * kPi * U * U * U);
  return std::abs(sym.value) + boundary;
}

QuadratureResult two_potential_half_line(const PauliVillarsSet& pv) {
  QuadratureOptions opts;
  opts.rel_tol = 1e-12;
  return integrate_semi_infinite(
      [&](double u) { return regulated_trace_d2(u, pv); }, pv.m2, opts);
}

LightByLightCheck three_potential_lightbylight(const PauliVillarsSet& pv) {
  LightByLightCheck out;
  QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  opts.abs_tol = 1e-13; // the regulated integral vanishes identically
  auto reg = integrate_semi_infinite(
      [&](double u) { return regulated_trace_d3(u, pv); }, pv.m2, opts);
  out.regulated = 2.0 * reg.value; // even integrand

  const double m = pv.m0;
  auto per = integrate_semi_infinite(
      [m](double u) {
        const double c = std::hypot(m, u);
        const double c2 = c * c;
        return 3.0 * m * m * m * m / (kPi * c2 * c2 * c);
      },
      m, 1e-12);
  out.per_mass = 2.0 * per.value;
  return out;
}

} // namespace vpcs

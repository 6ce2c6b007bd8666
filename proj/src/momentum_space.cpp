#include "vpcs/momentum_space.hpp"

#include <algorithm>
#include <cmath>

#include "vpcs/constants.hpp"
#include "vpcs/quadrature.hpp"

namespace vpcs {

namespace {
constexpr double kPi = 3.14159265358979323846;

double y_denominator(double r2, double k2, double m2, double y) {
  return r2 + k2 * y * (1.0 - y) + m2;
}
} // namespace

double feynman_y_integral(double r2, double k2, double mass, double rel_tol) {
  if (r2 < 0.0 || k2 < 0.0 || !(mass > 0.0))
    throw std::domain_error("feynman_y_integral: bad arguments");
  const double m2 = mass * mass;
  auto f = [&](double y) {
    const double d = y_denominator(r2, k2, m2, y);
    return y * (1.0 - y) / (d * d);
  };
  return integrate_radial(f, 0.0, 1.0, rel_tol).value;
}

double feynman_y_integral_tform(double r2, double k2, double mass,
                                double rel_tol) {
  if (r2 < 0.0 || k2 < 0.0 || !(mass > 0.0))
    throw std::domain_error("feynman_y_integral_tform: bad arguments");
  const double m2 = mass * mass;
  const double lead = 1.0 / (6.0 * (r2 + m2) * (r2 + m2));
  if (k2 == 0.0) return lead;
  // t = cosh(theta); weight sqrt(t^2-1)(2/t^4+1/t^6) -> tanh^2 (2/ch^2+1/ch^4)
  auto g = [&](double theta) {
    const double ch = std::cosh(theta);
    const double th = std::tanh(theta);
    const double inv2 = 1.0 / (ch * ch);
    const double w = th * th * inv2 * (2.0 + inv2);
    const double d = r2 + k2 * 0.25 * inv2 + m2;
    return w * k2 / (d * d * d);
  };
  const double tail = integrate_semi_infinite(g, 1.0, rel_tol).value / 12.0;
  return lead - tail;
}

double regulated_ry_integral(double k2, const PauliVillarsSet& pv,
                             double rel_tol) {
  if (k2 < 0.0) throw std::domain_error("regulated_ry_integral: k2 must be >= 0");
  const double logpart = -pv.sum_coeff_log_m2() / 12.0;
  // With ich2 = 1/cosh^2, the mass sum subtracts its theta -> inf limit
  // exactly: sum C_i m_i^2/(k^2 ich2 + 4 m_i^2)
  //        = -(k^2 ich2/4) sum C_i/(k^2 ich2 + 4 m_i^2),
  // which decays with theta instead of leaving a roundoff floor.
  auto g = [&](double theta) {
    const double th = std::tanh(theta);
    const double ch = std::cosh(theta);
    const double ich2 = 1.0 / (ch * ch);
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double mi2 = pv.mass(i) * pv.mass(i);
      s += pv.coeff(i) / (k2 * ich2 + 4.0 * mi2);
    }
    // sinh^2 (2 + 1/ch^2) = th^2 ch^2 (2 + ich2); the ch^2 is folded into
    // the subtracted sum above
    return th * th * (2.0 + ich2) * (-0.25 * k2 * ich2) * s;
  };
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  opts.abs_tol = rel_tol * std::max(1.0, std::abs(logpart));
  const double tpart =
      (k2 == 0.0) ? 0.0 : integrate_semi_infinite(g, 1.0, opts).value / 3.0;
  return logpart + tpart;
}

double regulated_ry_integral_direct(double k2, const PauliVillarsSet& pv,
                                    double rel_tol) {
  if (k2 < 0.0)
    throw std::domain_error("regulated_ry_integral_direct: k2 must be >= 0");
  const double inner_tol = 0.02 * rel_tol;
  // sum C_i/(D+m_i^2)^2 = N (sum_j 1/(D+m_j^2)) / prod_i (D+m_i^2): the
  // derivative of the partial-fraction identity, cancellation free
  const double m02 = pv.m0 * pv.m0, m12 = pv.m1 * pv.m1, m22 = pv.m2 * pv.m2;
  const double numer = m12 * m22 + pv.c1 * m02 * m22 + pv.c2 * m02 * m12;
  auto outer = [&](double r) {
    if (r == 0.0 || r > 1e100) return 0.0; // integrand ~ 1/r^5 out here
    auto inner = [&](double y) {
      const double D = r * r + k2 * y * (1.0 - y);
      const double d0 = D + m02, d1 = D + m12, d2 = D + m22;
      const double s =
          numer * (1.0 / d0 + 1.0 / d1 + 1.0 / d2) / (d0 * d1 * d2);
      return y * (1.0 - y) * s;
    };
    return r * r * r * integrate_radial(inner, 0.0, 1.0, inner_tol).value;
  };
  return integrate_semi_infinite(outer, pv.m2, rel_tol, 4'000'000).value;
}

double gauge_term_vanishing(double k2, const PauliVillarsSet& pv) {
  if (k2 < 0.0) throw std::domain_error("gauge_term_vanishing: k2 must be >= 0");
  // sum_i C_i /(R^2 + m_i^2) collapsed through the partial-fraction identity
  // to N / prod_i (R^2 + m_i^2); this is what makes the bracket fall off
  // fast enough, and it evaluates without cancellation at any r.
  const double m02 = pv.m0 * pv.m0, m12 = pv.m1 * pv.m1, m22 = pv.m2 * pv.m2;
  const double numer = m12 * m22 + pv.c1 * m02 * m22 + pv.c2 * m02 * m12;
  auto bracket = [&](double r2, double y) {
    const double R2 = r2 + k2 * y * (1.0 - y);
    return numer / ((R2 + m02) * (R2 + m12) * (R2 + m22));
  };
  auto bracket_dr = [&](double r, double y) {
    const double R2 = r * r + k2 * y * (1.0 - y);
    const double d0 = R2 + m02, d1 = R2 + m12, d2 = R2 + m22;
    const double prod = d0 * d1 * d2;
    return -numer * 2.0 * r * (1.0 / d0 + 1.0 / d1 + 1.0 / d2) / prod;
  };
  auto y_avg = [&](auto&& f) {
    if (k2 == 0.0) return f(0.0);
    return integrate_radial([&](double y) { return f(y); }, 0.0, 1.0, 1e-11)
        .value;
  };
  auto phi = [&](double r) {
    return r * r * r * r * y_avg([&](double y) { return bracket(r * r, y); });
  };
  auto dphi = [&](double r) {
    const double r3 = r * r * r;
    return 4.0 * r3 * y_avg([&](double y) { return bracket(r * r, y); }) +
           r3 * r * y_avg([&](double y) { return bracket_dr(r, y); });
  };
  // the residual is reported relative to the bracket's peak so the
  // threshold stays meaningful across mass scales
  double peak = 0.0;
  for (int k = 0; k <= 30; ++k) {
    const double r = 0.1 * pv.m0 * std::pow(10.0 * pv.m2 / (0.1 * pv.m0), k / 30.0);
    peak = std::max(peak, std::abs(phi(r)));
  }
  QuadratureOptions opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-12 * std::max(1.0, peak);
  opts.max_evaluations = 4'000'000;
  auto q = integrate_semi_infinite(dphi, pv.m2, opts);
  return std::abs(q.value) / std::max(1.0, peak);
}

RationalIdentity sum_identity_exact(const Rational& r2, const Rational& m02,
                                    const Rational& m12, const Rational& m22) {
  const Rational d21 = m22 - m12;
  if (d21.is_zero())
    throw std::domain_error("sum_identity_exact: degenerate masses");
  const Rational c0(1);
  const Rational c1 = (m02 - m22) / d21;
  const Rational c2 = (m12 - m02) / d21;
  const Rational lhs =
      c0 / (r2 + m02) + c1 / (r2 + m12) + c2 / (r2 + m22);
  const Rational numer = c0 * m12 * m22 + c1 * m02 * m22 + c2 * m02 * m12;
  const Rational rhs = numer / ((r2 + m02) * (r2 + m12) * (r2 + m22));
  return {lhs, rhs};
}

namespace {

// Regular part of Ktilde(y) = int_1^inf sqrt(t^2-1)(2+1/t^2) e^{-2ty} dt:
// the 1/(2y^2) pole is split off so that the sum-rule cancellation between
// masses can be performed exactly.  With t = cosh(theta) the subtracted
// integrand collapses to (e^{-2 theta} - 1/cosh^2) e^{-2 y cosh}, and the
// compensating lower piece has the closed form [e^{-2y}(2y+1) - 1]/(2y^2).
double ktilde_regular(double y, double rel_tol) {
  auto g = [y](double theta) {
    const double ch = std::cosh(theta);
    const double ich2 = 1.0 / (ch * ch);
    const double bracket = std::exp(-2.0 * theta) - ich2;
    if (bracket == 0.0) return 0.0;
    const double arg = 2.0 * ch * y;
    return (arg < 745.0) ? bracket * std::exp(-arg) : 0.0;
  };
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  opts.abs_tol = 0.01 * rel_tol;
  const double q1 = integrate_semi_infinite(g, 1.0, opts).value;
  const long double yl = y;
  const long double numer =
      std::expm1(-2.0L * yl) * (1.0L + 2.0L * yl) + 2.0L * yl;
  return q1 + static_cast<double>(numer / (2.0L * yl * yl));
}

} // namespace

double ms_trace_density_smooth(double x2, const PauliVillarsSet& pv,
                               double zalpha, double rel_tol) {
  if (!(x2 > 0.0))
    throw std::domain_error(
        "ms_trace_density_smooth: x2 must be > 0 (the delta term is symbolic)");

  if (pv.m0 * x2 < 1.0) {
    // pole-subtracted route: the 1/(2 (m_i x)^2) parts of Ktilde cancel
    // exactly through the coefficient sum rule, so only the regular parts
    // are summed; this stays accurate arbitrarily close to the origin
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double m = pv.mass(i);
      s += pv.coeff(i) * m * m * ktilde_regular(m * x2, 0.3 * rel_tol);
    }
    return -zalpha / (3.0 * kPi * kPi) * s / x2;
  }

  // exponential range: the mass terms decay at well-separated rates and the
  // plain regulated sum is benign
  auto g = [&](double theta) {
    const double ch = std::cosh(theta);
    const double a = 2.0 * ch * x2;
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double m = pv.mass(i);
      const double arg = a * m;
      if (arg < 745.0) s += pv.coeff(i) * m * m * std::exp(-arg);
    }
    if (s == 0.0) return 0.0;
    const double sh = std::sinh(theta);
    return sh * sh * (2.0 + 1.0 / (ch * ch)) * s;
  };
  const double scale = std::max(0.5, std::log1p(1.0 / (2.0 * pv.m0 * x2)));
  const double integral = integrate_semi_infinite(g, scale, rel_tol).value;
  return -zalpha / (3.0 * kPi * kPi) * integral / x2;
}

TraceDensity make_trace_density(const PauliVillarsSet& pv, double zalpha) {
  TraceDensity td;
  td.delta_coefficient = zalpha / (3.0 * kPi) * pv.sum_coeff_log_m2();
  td.smooth = [pv, zalpha](double x2) {
    return ms_trace_density_smooth(x2, pv, zalpha);
  };
  return td;
}

double coordinate_trace_density(double x, const PauliVillarsSet& pv,
                                double zalpha, double rel_tol) {
  if (!(x > 0.0))
    throw std::domain_error("coordinate_trace_density: x must be > 0");
  auto f = [&](double u) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double m = pv.mass(i);
      const double c = std::hypot(m, u);
      const double c2 = c * c;
      const double arg = 2.0 * c * x;
      if (arg < 745.0)
        s += pv.coeff(i) *
             (-u * u * (3.0 * m * m + 2.0 * u * u) / (3.0 * c2 * c)) *
             std::exp(-arg);
    }
    return s;
  };
  const double scale = std::max(pv.m2, 0.5 / x);
  const double integral = integrate_semi_infinite(f, scale, rel_tol).value;
  return zalpha / (kPi * kPi) * integral / x;
}

double ms_trace_smooth_integral(const PauliVillarsSet& pv, double zalpha) {
  // 4 pi int x^2 smooth dx, evaluated in the derivation's order: the radial
  // integral at fixed t (computed by quadrature, closed value 1/(4 t^2 m^2))
  // comes first, after which the coefficient sum rule kills the t-integrand
  // pointwise.  The iterated integral in the opposite order (pointwise
  // density first) converges to a different value entirely; the order of
  // summation and integration is what this module is about.
  auto g = [&](double theta) {
    const double ch = std::cosh(theta);
    const double sh = std::sinh(theta);
    // the exact t-integrand is identically zero; past the working range the
    // quadrature would only probe the noise floor of the inner integrals
    if (!(ch < 1e26)) return 0.0;
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double m = pv.mass(i);
      const double xint =
          integrate_semi_infinite(
              [&](double x) { return x * std::exp(-2.0 * ch * m * x); },
              1.0 / (2.0 * ch * m), 1e-12)
              .value;
      s += pv.coeff(i) * m * m * xint;
    }
    return sh * sh * (2.0 + 1.0 / (ch * ch)) * s;
  };
  QuadratureOptions opts;
  opts.rel_tol = 1e-9;
  opts.abs_tol = 1e-9;
  opts.max_evaluations = 8'000'000;
  const double tint = integrate_semi_infinite(g, 1.0, opts).value;
  return -zalpha / (3.0 * kPi * kPi) * 4.0 * kPi * tint;
}

double ms_potential(double r, const PauliVillarsSet& pv, bool renormalized,
                    double z, double rel_tol) {
  if (!(r > 0.0)) throw std::domain_error("ms_potential: r must be > 0");
  const double zalpha = z * kAlpha;

  if (renormalized) {
    // Large-auxiliary-mass limit: only the loop-mass exponential survives.
    // Evaluated through the substitution t = 1 + v^2 (removing the endpoint
    // square root analytically), a path independent of the cosh-based
    // t-kernel used on the coordinate-space side.
    const double m = pv.m0;
    auto g = [m, r](double v) {
      const double t = 1.0 + v * v;
      const double t2 = t * t;
      const double root = v * std::sqrt(2.0 + v * v); // sqrt(t^2 - 1)
      const double w = (2.0 * t2 + 1.0) / (t2 * t2);
      const double arg = 2.0 * t * m * r;
      if (arg > 745.0) return 0.0;
      return 2.0 * v * root * w * std::exp(-arg);
    };
    const double scale = std::max(0.3, 1.0 / std::sqrt(2.0 * m * r));
    const double integral = integrate_semi_infinite(g, scale, rel_tol).value;
    return -zalpha * kAlpha / (3.0 * kPi) * integral / r;
  }

  // Finite-mass potential: fold the pointwise regulated trace density with
  // 1/|x2 - x1|.  This joint integral is absolutely convergent, so the
  // radial-first evaluation already carries the full charge-renormalization
  // log; the delta term of the t-ordered bookkeeping must NOT be added on
  // top (doing so double counts it -- the log terms "evolve differently"
  // between the orderings but the potential is unambiguous).
  auto conv = [&](double x2) {
    return 4.0 * kPi * x2 * x2 *
           ms_trace_density_smooth(x2, pv, zalpha, 0.05 * rel_tol) /
           std::max(x2, r);
  };
  const double lo = 1e-5 / pv.m2;
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  opts.max_evaluations = 4'000'000;
  auto shifted = [&](double v) { return conv(lo + v); };
  const double folded =
      integrate_semi_infinite(shifted, std::max(r, 0.5 / pv.m0), opts).value;
  return -kAlpha * folded;
}

double log_coefficient_momentum_route(const PauliVillarsSet& pv, double zalpha) {
  return zalpha / (3.0 * kPi) * pv.sum_coeff_log_m2();
}

double log_coefficient_coordinate_route(const PauliVillarsSet& pv, double zalpha,
                                        double rel_tol) {
  // integrated coordinate-space density: (Z alpha/pi) int du
  // sum C_i (-u^2/c^3 + u^4/3c^5) = (Z alpha/3pi) sum C_i ln m_i^2
  auto f = [&](double u) { return -regulated_log_sum_integrand(u, pv); };
  const double integral = integrate_semi_infinite(f, pv.m2, rel_tol).value;
  return zalpha / kPi * integral;
}

PitfallRecord variable_change_pitfall(const PauliVillarsSet& pv, double zalpha) {
  PitfallRecord rec;
  // wrong order: u -> m_i u makes each term the identical mass-independent
  // integral; with a common truncation the coefficient sum multiplies it away
  const double cutoff = 1e4;
  QuadratureOptions opts;
  opts.rel_tol = 1e-12;
  const double common =
      integrate_adaptive(
          [](double v) {
            const double c = std::hypot(1.0, v);
            const double c2 = c * c;
            return -v * v * (3.0 + 2.0 * v * v) / (3.0 * c2 * c2 * c);
          },
          0.0, cutoff, opts)
          .value;
  double wrong = 0.0;
  for (int i = 0; i < 3; ++i) wrong += pv.coeff(i) * common;
  rec.wrong_order = zalpha / kPi * wrong;
  rec.right_order = log_coefficient_coordinate_route(pv, zalpha);
  return rec;
}

} // namespace vpcs

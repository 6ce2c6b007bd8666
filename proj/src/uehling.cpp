#include "vpcs/uehling.hpp"

#include <cmath>

#include "vpcs/constants.hpp"
#include "vpcs/parallel.hpp"

namespace vpcs {

namespace {

constexpr double kPi = 3.14159265358979323846;

// u^2/c^3 - u^4/(3 c^5) rewritten cancellation-free as
// u^2 (3 m^2 + 2 u^2) / (3 c^5).
double log_sum_weight(double u, double m) {
  const double c = std::hypot(m, u);
  const double c2 = c * c;
  return u * u * (3.0 * m * m + 2.0 * u * u) / (3.0 * c2 * c2 * c);
}

// e^{-2 c |x - r'|} - e^{-2 c (x + r')}, stable for all argument sizes.
double exp_shell_difference(double c2m, double x, double rp) {
  const double lo = std::min(x, rp);
  const double hi = std::max(x, rp);
  const double dr = hi - lo;
  if (dr == 0.0) return -std::expm1(-c2m * (x + rp));
  const double inner = c2m * lo;
  if (inner < 1.0) return 2.0 * std::exp(-c2m * hi) * std::sinh(inner);
  return std::exp(-c2m * dr) - std::exp(-c2m * (x + rp));
}

} // namespace

// int dOmega' e^{-2cD}/D over directions of r', D = |x - r'|:
// (pi/(c x r')) [e^{-2c|x-r'|} - e^{-2c(x+r')}].  Checked against brute-force
// 2D quadrature in the tests before use.
double yukawa_shell_kernel(double c, double x, double rp) {
  return kPi / (c * x * rp) * exp_shell_difference(2.0 * c, x, rp);
}

double renormalization_log(const PauliVillarsSet& pv) {
  return -pv.sum_coeff_log_m2() / 3.0;
}

double renormalization_log_quadrature(const PauliVillarsSet& pv, double rel_tol) {
  auto f = [&pv](double u) { return regulated_log_sum_integrand(u, pv); };
  return integrate_semi_infinite(f, pv.m2, rel_tol).value;
}

double renormalization_log_wrong_order(const PauliVillarsSet& pv) {
  // After u -> m_i u every term is the same mass-independent integral; any
  // common truncation therefore multiplies the vanishing coefficient sum.
  const double cutoff = 1e4;
  QuadratureOptions opts;
  opts.rel_tol = 1e-12;
  auto term = integrate_adaptive(
      [](double v) { return log_sum_weight(v, 1.0); }, 0.0, cutoff, opts);
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) sum += pv.coeff(i) * term.value;
  return sum;
}

double uehling_point(double r, double m_loop, double z, double rel_tol) {
  if (!(r > 0.0)) throw std::domain_error("uehling_point: r must be > 0");
  if (!(m_loop > 0.0)) throw std::domain_error("uehling_point: m_loop must be > 0");
  if (z == 0.0) return 0.0;
  auto k = integrate_t_kernel(r, m_loop, TKernelWeight::combined, rel_tol);
  return -z * kAlpha * kAlpha / (3.0 * kPi) * k.value / r;
}

double uehling_u_form(double r, double m_loop, double z, double rel_tol) {
  if (!(r > 0.0)) throw std::domain_error("uehling_u_form: r must be > 0");
  if (!(m_loop > 0.0)) throw std::domain_error("uehling_u_form: m_loop must be > 0");
  if (z == 0.0) return 0.0;
  const double m = m_loop;
  auto f = [m, r](double u) {
    return log_sum_weight(u, m) * std::exp(-2.0 * std::hypot(m, u) * r);
  };
  const double scale = std::max(m, 0.5 / r);
  auto q = integrate_semi_infinite(f, scale, rel_tol);
  return -z * kAlpha * kAlpha / kPi * q.value / r;
}

double uehling_finite(const NuclearModel& model, double r, double m_loop,
                      double rel_tol) {
  if (r < 0.0) throw std::domain_error("uehling_finite: r must be >= 0");
  if (model.kind() == NuclearKind::point)
    return uehling_point(r, m_loop, model.z(), rel_tol);
  if (model.z() == 0.0) return 0.0;
  const double m = m_loop;
  const double ext = model.extent();
  const double pref = -model.z() * kAlpha * kAlpha / (3.0 * kPi);
  const double inner_tol = std::max(0.02 * rel_tol, 1e-13);

  if (r == 0.0) {
    auto f = [&](double rp) {
      const double k =
          integrate_t_kernel(rp, m, TKernelWeight::combined, inner_tol).value;
      return 4.0 * kPi * rp * model.density(rp) * k;
    };
    return pref * integrate_radial(f, 0.0, ext, rel_tol).value;
  }

  // shell kernel: Q(r, r') = int dtheta tanh^2 (2/ch + 1/ch^3) *
  //   [e^{-2 m ch |r-r'|} - e^{-2 m ch (r+r')}]; the 1/ch weights bound the
  //   prefactor by ~4 e^{-theta}, so a unit decay scale always works.
  auto shell = [&](double rp) {
    auto g = [&](double theta) {
      const double ch = std::cosh(theta);
      const double th = std::tanh(theta);
      const double w = th * th * (2.0 / ch + 1.0 / (ch * ch * ch));
      return w * exp_shell_difference(2.0 * m * ch, r, rp);
    };
    return integrate_semi_infinite(g, 1.0, inner_tol).value;
  };
  auto f = [&](double rp) { return rp * model.density(rp) * shell(rp); };
  double integral = 0.0;
  if (r > 0.0 && r < ext) {
    // split at the kernel kink r' = r
    integral = integrate_radial(f, 0.0, r, rel_tol).value +
               integrate_radial(f, r, ext, rel_tol).value;
  } else {
    integral = integrate_radial(f, 0.0, ext, rel_tol).value;
  }
  return pref * (kPi / (m * r)) * integral;
}

double vp21_potential_finite_mass(const NuclearModel& model, double r,
                                  const PauliVillarsSet& pv, double rel_tol) {
  if (!(r > 0.0))
    throw std::domain_error("vp21_potential_finite_mass: r must be > 0");
  if (model.z() == 0.0) return 0.0;
  const double za2 = model.z() * kAlpha * kAlpha;

  if (model.kind() == NuclearKind::point) {
    // regulated sum first, then one u-integral (the order is essential);
    // writing (1 - e^{-2cr}) = 1 - e^{-2cr} termwise keeps the flat part in
    // the cancellation-free log-sum form
    auto f = [&](double u) {
      double expo = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double c = std::hypot(pv.mass(i), u);
        const double arg = 2.0 * c * r;
        if (arg < 745.0)
          expo += pv.coeff(i) * log_sum_weight(u, pv.mass(i)) * std::exp(-arg);
      }
      return regulated_log_sum_integrand(u, pv) - expo;
    };
    const double scale = std::max({pv.m2, 0.5 / r, 1.0});
    auto q = integrate_semi_infinite(f, scale, rel_tol);
    return za2 / kPi * q.value / r;
  }

  // Extended nucleus: the Coulomb-convolution piece integrates in closed
  // form to the renormalization log; the Yukawa-folded remainder keeps every
  // mass term explicit.
  const double ext = model.extent();
  const double coul = model.coulomb_convolution(r);
  auto yukawa_fold = [&](double u) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double c = std::hypot(pv.mass(i), u);
      auto f = [&](double rp) {
        return rp * model.density(rp) * exp_shell_difference(2.0 * c, r, rp);
      };
      double rad;
      if (r < ext)
        rad = integrate_radial(f, 0.0, r, 0.05 * rel_tol).value +
              integrate_radial(f, r, ext, 0.05 * rel_tol).value;
      else
        rad = integrate_radial(f, 0.0, ext, 0.05 * rel_tol).value;
      s += pv.coeff(i) * log_sum_weight(u, pv.mass(i)) * (kPi / (c * r)) * rad;
    }
    return s;
  };
  const double scale = std::max({pv.m2, 0.5 / r, 1.0});
  auto q = integrate_semi_infinite(yukawa_fold, scale, rel_tol, 4'000'000);
  return za2 / kPi * (renormalization_log(pv) * coul - q.value);
}

IdentityPair potential_difference_kernel_identity(const NuclearModel& model,
                                                  double x, double c) {
  if (!(x > 0.0))
    throw std::domain_error("potential_difference_kernel_identity: x must be > 0");
  if (!(c > 0.0))
    throw std::domain_error("potential_difference_kernel_identity: c must be > 0");
  const double vx = model.potential(x);
  auto lhs_f = [&](double w) {
    if (w == 0.0) return 0.0;
    return w * (model.potential(w) - vx) * exp_shell_difference(2.0 * c, x, w);
  };
  // the split point sits past the sign-changing structure at w = x so no
  // cancellation straddles segment boundaries
  const double lhs =
      kPi / (c * x) *
      integrate_semi_infinite(lhs_f, x + 5.0 / c + 1.0, 1e-8).value;

  double rhs;
  const double za = model.z() * kAlpha;
  if (model.kind() == NuclearKind::point) {
    rhs = kPi * za / (c * c) * std::exp(-2.0 * c * x) / x;
  } else {
    auto rho_fold = [&](double rp) {
      return rp * model.density(rp) * exp_shell_difference(2.0 * c, x, rp);
    };
    const double ext = model.extent();
    double rad;
    if (x < ext)
      rad = integrate_radial(rho_fold, 0.0, x, 1e-11).value +
            integrate_radial(rho_fold, x, ext, 1e-11).value;
    else
      rad = integrate_radial(rho_fold, 0.0, ext, 1e-11).value;
    rhs = kPi * za / (c * c) * (kPi / (c * x)) * rad;
  }
  return {lhs, rhs};
}

IdentityPair coulomb_smear_identity(double x1, double r_src, double c) {
  if (!(c > 0.0)) throw std::domain_error("coulomb_smear_identity: c must be > 0");
  const double d = std::abs(x1 - r_src);
  if (d == 0.0)
    throw std::domain_error("coulomb_smear_identity: coincident points");
  const double inner =
      integrate_radial([c](double y) { return y * std::exp(-2.0 * c * y); }, 0.0,
                       d, 1e-12)
          .value;
  const double outer =
      integrate_semi_infinite(
          [c, d](double v) { return std::exp(-2.0 * c * (d + v)); }, 0.5 / c,
          1e-12)
          .value;
  const double lhs = 4.0 * kPi * (inner / d + outer);
  const double rhs = kPi / (c * c * d) * (-std::expm1(-2.0 * c * d));
  return {lhs, rhs};
}

namespace {

double e1(double zarg) {
  if (zarg > 700.0) return 0.0;
  // floor: the adaptive rule can push nodes within ulps of the integrable
  // log singularity; the flooring error lives on a width-1e-300 set
  if (zarg < 1e-300) zarg = 1e-300;
  return -std::expint(-zarg);
}

// sum_i C_i int d^3w rho(w) e^{-2 c_i |x-w|} / |x-w|^2 via the solid-angle
// reduction to exponential integrals.  Each mass term is separately finite
// (the paper's justification for summing after integration), so the masses
// are integrated one at a time and summed afterwards; inside a single term
// there is no cancellation and the quadrature converges tightly.
double folded_inverse_square(const NuclearModel& model, double x, double u,
                             const PauliVillarsSet* pv, double single_mass) {
  auto one_mass = [&](double mass) {
    const double ci = std::hypot(mass, u);
    auto kernel = [&](double rp) {
      return rp * model.density(rp) *
             (e1(2.0 * ci * std::abs(x - rp)) - e1(2.0 * ci * (x + rp)));
    };
    const double halfwidth = 20.0 / ci;
    const double lo = std::max(0.0, x - halfwidth);
    const double hi = std::min(model.extent(), x + halfwidth);
    if (!(lo < x && x < hi)) return 0.0;
    return integrate_radial(kernel, lo, x, 1e-12).value +
           integrate_radial(kernel, x, hi, 1e-12).value;
  };
  double rad = 0.0;
  if (pv) {
    for (int i = 0; i < 3; ++i) rad += pv->coeff(i) * one_mass(pv->mass(i));
  } else {
    rad = one_mass(single_mass);
  }
  return 2.0 * kPi / x * rad;
}

double fit_loglog_slope(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  const size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double lx = std::log(xs[i]);
    const double ly = std::log(std::abs(ys[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

FalloffCheck large_u_falloff_check(const NuclearModel& model, double x,
                                   const PauliVillarsSet& pv) {
  if (model.kind() == NuclearKind::point)
    throw std::domain_error("large_u_falloff_check: needs a smooth model");
  FalloffCheck out;
  const int npts = 8;
  for (int k = 0; k < npts; ++k) {
    const double u =
        10.0 * pv.m2 * std::pow(10.0, k / double(npts - 1)); // up to 100 m2
    out.u.push_back(u);
    out.magnitude.push_back(folded_inverse_square(model, x, u, &pv, 0.0));
  }
  out.fitted_exponent = fit_loglog_slope(out.u, out.magnitude);
  return out;
}

double unregulated_falloff_exponent(const NuclearModel& model, double x,
                                    double mass) {
  std::vector<double> us, vals;
  for (int k = 0; k < 8; ++k) {
    const double u = 10.0 * mass * std::pow(10.0, k / 7.0);
    us.push_back(u);
    vals.push_back(folded_inverse_square(model, x, u, nullptr, mass));
  }
  return fit_loglog_slope(us, vals);
}

VpDecomposition vp_decompose(const NuclearModel& model, const PauliVillarsSet& pv,
                             const std::vector<double>& radii) {
  const double coeff = renormalization_log(pv);
  std::vector<double> vals(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) {
    const double r = radii[i];
    const double full = vp21_potential_finite_mass(model, r, pv);
    const double renorm_term = model.z() * kAlpha * kAlpha / kPi * coeff *
                               model.coulomb_convolution(r);
    vals[i] = full - renorm_term;
  });
  return {coeff, PotentialTable(radii, std::move(vals))};
}

PotentialTable build_uehling_table(const NuclearModel& model,
                                   const std::vector<double>& radii,
                                   double m_loop) {
  std::vector<double> vals(radii.size());
  if (model.z() == 0.0) {
    return PotentialTable(radii, std::move(vals));
  }
  // extended charges go through nested quadratures; a slightly looser
  // target keeps the table build fast while staying far below the
  // finite-size physics tolerances
  const double tol = (model.kind() == NuclearKind::point) ? 1e-11 : 3e-10;
  parallel_for(radii.size(), [&](std::size_t i) {
    vals[i] = uehling_finite(model, radii[i], m_loop, tol);
    // far past the exponential range the value underflows; keep the table
    // strictly negative so the log-log interpolation stays defined
    if (vals[i] > -1e-300) vals[i] = -1e-300;
  });
  return PotentialTable(radii, std::move(vals));
}

std::vector<double> log_grid(double r_min, double r_max, int points) {
  if (!(r_min > 0.0) || !(r_max > r_min) || points < 2)
    throw std::domain_error("log_grid: need 0 < r_min < r_max and points >= 2");
  std::vector<double> g(points);
  const double step = std::log(r_max / r_min) / (points - 1);
  for (int i = 0; i < points; ++i) g[i] = r_min * std::exp(i * step);
  g.back() = r_max;
  return g;
}

} // namespace vpcs

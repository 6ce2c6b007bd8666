#pragma once

#include <functional>
#include <stdexcept>
#include <string>

// Adaptive numerical integration for the three recurring integral shapes:
// semi-infinite integrals with exponential or algebraic (>= 1/u^3) tails,
// the t-kernel on [1,inf) with an endpoint square-root singularity, and
// finite-interval integrals.

namespace vpcs {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0; // upper-bound estimate
  long evaluations = 0;
};

// Thrown on non-convergence (budget exhausted) or non-finite integrand
// values; carries the best estimate obtained so far.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, QuadratureResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadratureResult& best_estimate() const { return best_; }

private:
  QuadratureResult best_;
};

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  long max_evaluations = 1'000'000;
};

using Integrand = std::function<double(double)>;

// Core adaptive Gauss-Kronrod 7/15 rule on a finite interval.
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const QuadratureOptions& opts = {});

// integral_0^inf f(u) du.  decay_scale marks where the integrand starts to
// die off; the range splits there into a finite adaptive panel, an
// exponential-weighted transformed segment, and an algebraic far tail.
QuadratureResult integrate_semi_infinite(const Integrand& f, double decay_scale,
                                         double rel_tol = 1e-10,
                                         long max_evaluations = 1'000'000);

// Variant with full tolerance control (abs_tol matters for integrals whose
// value vanishes by cancellation between regions).
QuadratureResult integrate_semi_infinite(const Integrand& f, double decay_scale,
                                         const QuadratureOptions& opts);

enum class TKernelWeight { u2_form, u4_form, combined };

// integral_1^inf sqrt(t^2-1) w(t) exp(-2 t mass x) dt with
// w = 2/t^2 (u2_form), 1/t^4 (u4_form) or their sum (combined).
// The endpoint singularity is removed by the substitution t = cosh(theta).
// Depends on x and mass only through the product mass*x.
// x = 0 is accepted only for u4_form; the other weights decay as 1/t there.
QuadratureResult integrate_t_kernel(double x, double mass, TKernelWeight weight,
                                    double rel_tol = 1e-10);

// integral_a^b f(r) dr on a finite interval, a < b.
QuadratureResult integrate_radial(const Integrand& f, double a, double b,
                                  double rel_tol = 1e-10);

} // namespace vpcs

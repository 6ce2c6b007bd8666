#include "vpcs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace vpcs {

namespace {

// Gauss-Kronrod 7/15 pair (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
  double resabs; // integral of |f|, for roundoff floors
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Integrand& f, double a, double b, long& evaluations) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(mid - half * kXgk[i]);
    fv[14 - i] = f(mid + half * kXgk[i]);
  }
  fv[7] = f(mid);
  evaluations += 15;

  double kronrod = kWgk[7] * fv[7];
  double gauss = kWg[3] * fv[7];
  double resabs = kWgk[7] * std::abs(fv[7]);
  for (int i = 0; i < 7; ++i) {
    const double pairsum = fv[i] + fv[14 - i];
    kronrod += kWgk[i] * pairsum;
    resabs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    if (i % 2 == 1) gauss += kWg[i / 2] * pairsum;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kronrod * half;
  p.error = std::abs(kronrod - gauss) * std::abs(half);
  p.resabs = resabs * std::abs(half);
  if (!std::isfinite(p.value))
    throw QuadratureError("non-finite integrand value in [" + std::to_string(a) +
                              ", " + std::to_string(b) + "]",
                          {p.value, std::numeric_limits<double>::infinity(),
                           evaluations});
  return p;
}

struct SegmentResult {
  QuadratureResult res;
  double resabs = 0.0;
};

SegmentResult adaptive_core(const Integrand& f, double a, double b,
                            const QuadratureOptions& opts) {
  long evals = 0;
  std::priority_queue<Panel> heap;
  heap.push(gk15(f, a, b, evals));

  double total = heap.top().value;
  double err = heap.top().error;
  double l1 = heap.top().resabs;
  const double eps = std::numeric_limits<double>::epsilon();

  auto converged = [&]() {
    const double target = std::max({opts.abs_tol, opts.rel_tol * std::abs(total),
                                    100.0 * eps * l1});
    return err <= target;
  };

  while (!converged()) {
    if (evals + 30 > opts.max_evaluations)
      throw QuadratureError("quadrature did not converge within evaluation budget",
                            {total, err, evals});
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw QuadratureError("quadrature stalled on an unresolvable panel",
                            {total, err, evals});
    Panel left = gk15(f, worst.a, mid, evals);
    Panel right = gk15(f, mid, worst.b, evals);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    l1 += left.resabs + right.resabs - worst.resabs;
    heap.push(left);
    heap.push(right);
  }
  return {{total, std::max(err, 2.0 * eps * l1), evals}, l1};
}

// The three maps making up a semi-infinite integral: a finite head panel,
// an exponential-weighted transformed segment, and an algebraic far tail
// u = c/t that still converges for integrands decaying only as 1/u^3.
std::vector<std::pair<Integrand, std::pair<double, double>>>
semi_infinite_segments(const Integrand& f, double s) {
  const double span = 60.0 * s;
  const double vmin = std::exp(-60.0);
  const double c = s + span;
  std::vector<std::pair<Integrand, std::pair<double, double>>> segs;
  segs.push_back({f, {0.0, s}});
  segs.push_back({[&f, s](double v) { return f(s - s * std::log(v)) * s / v; },
                  {vmin, 1.0}});
  segs.push_back({[&f, c](double t) { return f(c / t) * c / (t * t); },
                  {0.0, 1.0}});
  return segs;
}

} // namespace

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const QuadratureOptions& opts) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::domain_error("integrate_adaptive: need finite a < b");
  return adaptive_core(f, a, b, opts).res;
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double decay_scale,
                                         double rel_tol, long max_evaluations) {
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  opts.max_evaluations = max_evaluations;
  return integrate_semi_infinite(f, decay_scale, opts);
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double decay_scale,
                                         const QuadratureOptions& opts) {
  if (!(decay_scale > 0.0) || !std::isfinite(decay_scale))
    throw std::domain_error("integrate_semi_infinite: decay_scale must be > 0");
  if (!(opts.rel_tol > 0.0) && !(opts.abs_tol > 0.0))
    throw std::domain_error("integrate_semi_infinite: need a positive tolerance");

  auto segs = semi_infinite_segments(f, decay_scale);

  auto run = [&](const QuadratureOptions& segopts) {
    QuadratureResult sum;
    double resabs = 0.0;
    for (auto& [g, ab] : segs) {
      QuadratureOptions so = segopts;
      // segments that are negligible against what has accumulated do not
      // need their own relative accuracy
      so.abs_tol = std::max(segopts.abs_tol,
                            0.25 * opts.rel_tol * std::abs(sum.value));
      SegmentResult sr = adaptive_core(g, ab.first, ab.second, so);
      sum.value += sr.res.value;
      sum.abs_error_estimate += sr.res.abs_error_estimate;
      sum.evaluations += sr.res.evaluations;
      resabs += sr.resabs;
    }
    return std::make_pair(sum, resabs);
  };

  QuadratureOptions segopts = opts;
  segopts.rel_tol = 0.5 * opts.rel_tol;
  segopts.abs_tol = 0.25 * opts.abs_tol;
  segopts.max_evaluations = opts.max_evaluations / 3;

  QuadratureResult best;
  const double eps = std::numeric_limits<double>::epsilon();
  try {
    auto [sum, resabs] = run(segopts);
    best = sum;
    const double target = std::max({opts.abs_tol, opts.rel_tol * std::abs(sum.value),
                                    300.0 * eps * resabs});
    if (sum.abs_error_estimate <= target) return sum;
    // Segments can individually converge in relative terms yet cancel in the
    // sum; retry with an absolute target tied to the first-pass magnitude.
    segopts.abs_tol = 0.25 * std::max(opts.abs_tol,
                                      opts.rel_tol * std::abs(sum.value));
    if (segopts.abs_tol > 0.0) {
      auto [sum2, resabs2] = run(segopts);
      best = sum2;
      sum2.evaluations += sum.evaluations;
      const double target2 =
          std::max({opts.abs_tol, opts.rel_tol * std::abs(sum2.value),
                    300.0 * eps * resabs2});
      if (sum2.abs_error_estimate <= target2) return sum2;
    }
  } catch (const QuadratureError& e) {
    QuadratureResult carry = e.best_estimate();
    carry.value += best.value;
    carry.abs_error_estimate += best.abs_error_estimate;
    carry.evaluations += best.evaluations;
    throw QuadratureError(std::string("semi-infinite integral: ") + e.what(),
                          carry);
  }
  throw QuadratureError("semi-infinite integral: requested tolerance not met",
                        best);
}

QuadratureResult integrate_t_kernel(double x, double mass, TKernelWeight weight,
                                    double rel_tol) {
  if (x < 0.0) throw std::domain_error("integrate_t_kernel: x must be >= 0");
  if (!(mass > 0.0)) throw std::domain_error("integrate_t_kernel: mass must be > 0");
  const double y = mass * x; // the kernel depends only on this product
  if (y == 0.0 && weight != TKernelWeight::u4_form)
    throw std::domain_error(
        "integrate_t_kernel: x = 0 only integrable for the 1/t^4 weight");

  // t = cosh(theta) removes the sqrt(t^2-1) endpoint singularity.  The
  // prefactor sinh^2(theta) w(cosh) is rewritten through tanh so it stays
  // bounded where cosh overflows.
  auto g = [weight, y](double theta) {
    const double th = std::tanh(theta);
    const double ch = std::cosh(theta);
    const double inv2 = 1.0 / (ch * ch);
    double pref;
    switch (weight) {
      case TKernelWeight::u2_form: pref = 2.0 * th * th; break;
      case TKernelWeight::u4_form: pref = th * th * inv2; break;
      default: pref = th * th * (2.0 + inv2); break;
    }
    const double damp = (y > 0.0) ? std::exp(-2.0 * y * ch) : 1.0;
    return pref * damp;
  };
  const double scale =
      (y > 0.0) ? std::max(0.5, std::log1p(1.0 / (2.0 * y))) : 1.0;
  return integrate_semi_infinite(g, scale, rel_tol);
}

QuadratureResult integrate_radial(const Integrand& f, double a, double b,
                                  double rel_tol) {
  if (!(a < b)) throw std::domain_error("integrate_radial: need a < b");
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  return integrate_adaptive(f, a, b, opts);
}

} // namespace vpcs

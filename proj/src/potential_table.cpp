#include "vpcs/potential_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace vpcs {

namespace {

// Not-a-knot cubic spline second derivatives for nonuniform knots.
std::vector<double> spline_second_derivatives(const std::vector<double>& x,
                                              const std::vector<double>& y) {
  const size_t n = x.size();
  std::vector<double> m(n, 0.0);
  if (n < 3) return m;
  if (n == 3) {
    // single quadratic through three points: constant second derivative
    const double h0 = x[1] - x[0], h1 = x[2] - x[1];
    const double d0 = (y[1] - y[0]) / h0, d1 = (y[2] - y[1]) / h1;
    const double m1 = 2.0 * (d1 - d0) / (h0 + h1);
    return {m1, m1, m1};
  }

  std::vector<double> a(n), b(n), c(n), r(n);
  for (size_t i = 1; i + 1 < n; ++i) {
    const double hm = x[i] - x[i - 1];
    const double hp = x[i + 1] - x[i];
    a[i] = hm;
    b[i] = 2.0 * (hm + hp);
    c[i] = hp;
    r[i] = 6.0 * ((y[i + 1] - y[i]) / hp - (y[i] - y[i - 1]) / hm);
  }
  // not-a-knot: third derivative continuous across the second and
  // second-to-last knots
  {
    const double h0 = x[1] - x[0], h1 = x[2] - x[1];
    b[0] = h1;
    c[0] = -(h0 + h1);
    a[0] = 0.0;
    // m0 expressed via m1, m2: m0 = m1 + h0/h1 (m1 - m2)
    // fold into row 1
  }
  // Eliminate m0 and m_{n-1} analytically, solving the interior tridiagonal
  // system with modified boundary rows.
  const double h0 = x[1] - x[0], h1 = x[2] - x[1];
  const double g0 = h0 / h1;
  // m0 = (1+g0) m1 - g0 m2
  b[1] += a[1] * (1.0 + g0);
  c[1] -= a[1] * g0;
  a[1] = 0.0;
  const double hn2 = x[n - 2] - x[n - 3], hn1 = x[n - 1] - x[n - 2];
  const double gn = hn1 / hn2;
  // m_{n-1} = (1+gn) m_{n-2} - gn m_{n-3}
  b[n - 2] += c[n - 2] * (1.0 + gn);
  a[n - 2] -= c[n - 2] * gn;
  c[n - 2] = 0.0;

  // Thomas algorithm on rows 1..n-2
  for (size_t i = 2; i + 1 < n; ++i) {
    const double f = a[i] / b[i - 1];
    b[i] -= f * c[i - 1];
    r[i] -= f * r[i - 1];
  }
  m[n - 2] = r[n - 2] / b[n - 2];
  for (size_t i = n - 3; i >= 1; --i) {
    m[i] = (r[i] - c[i] * m[i + 1]) / b[i];
    if (i == 1) break;
  }
  m[0] = (1.0 + g0) * m[1] - g0 * m[2];
  m[n - 1] = (1.0 + gn) * m[n - 2] - gn * m[n - 3];
  return m;
}

double spline_eval(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& m, double xv) {
  const auto it = std::upper_bound(x.begin(), x.end(), xv);
  size_t i = (it == x.begin()) ? 0 : (it - x.begin() - 1);
  i = std::min(i, x.size() - 2);
  const double h = x[i + 1] - x[i];
  const double A = (x[i + 1] - xv) / h;
  const double B = (xv - x[i]) / h;
  return A * y[i] + B * y[i + 1] +
         ((A * A * A - A) * m[i] + (B * B * B - B) * m[i + 1]) * h * h / 6.0;
}

double spline_slope_at(const std::vector<double>& x, const std::vector<double>& y,
                       const std::vector<double>& m, bool front) {
  if (x.size() < 2) return 0.0;
  if (front) {
    const double h = x[1] - x[0];
    return (y[1] - y[0]) / h - h / 6.0 * (2.0 * m[0] + m[1]);
  }
  const size_t n = x.size();
  const double h = x[n - 1] - x[n - 2];
  return (y[n - 1] - y[n - 2]) / h + h / 6.0 * (m[n - 2] + 2.0 * m[n - 1]);
}

} // namespace

PotentialTable::PotentialTable(std::vector<double> radii,
                               std::vector<double> values,
                               TableInterpolation interp)
    : radii_(std::move(radii)), values_(std::move(values)), interp_(interp) {
  if (radii_.size() != values_.size())
    throw std::invalid_argument("PotentialTable: radii/values length mismatch");
  if (radii_.size() < 2)
    throw std::invalid_argument("PotentialTable: need at least two points");
  for (size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0))
      throw std::invalid_argument("PotentialTable: radii must be positive");
    if (i > 0 && !(radii_[i] > radii_[i - 1]))
      throw std::invalid_argument("PotentialTable: radii must be strictly increasing");
  }
  all_zero_ = std::all_of(values_.begin(), values_.end(),
                          [](double v) { return v == 0.0; });
  if (all_zero_) return;
  if (!std::all_of(values_.begin(), values_.end(),
                   [](double v) { return v < 0.0; }))
    throw std::invalid_argument(
        "PotentialTable: cubic_log_log requires strictly negative values "
        "(or an all-zero table)");
  s_.resize(radii_.size());
  w_.resize(radii_.size());
  for (size_t i = 0; i < radii_.size(); ++i) {
    s_[i] = std::log(radii_[i]);
    w_[i] = std::log(-values_[i]);
  }
  w2_ = spline_second_derivatives(s_, w_);
  slope_lo_ = spline_slope_at(s_, w_, w2_, true);
  slope_hi_ = spline_slope_at(s_, w_, w2_, false);
}

double PotentialTable::value(double r) const {
  if (!(r > 0.0)) throw std::domain_error("PotentialTable::value: r must be > 0");
  if (all_zero_) return 0.0;
  const double s = std::log(r);
  if (s <= s_.front()) return -std::exp(w_.front() + slope_lo_ * (s - s_.front()));
  if (s >= s_.back()) {
    // continue the endpoint slope when it decays; hold the last value otherwise
    const double sl = std::min(slope_hi_, 0.0);
    return -std::exp(w_.back() + sl * (s - s_.back()));
  }
  return -std::exp(spline_eval(s_, w_, w2_, s));
}

void PotentialTable::write_csv(std::ostream& os) const {
  os << "r,V\n";
  char buf[80];
  for (size_t i = 0; i < radii_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.16e,%.16e\n", radii_[i], values_[i]);
    os << buf;
  }
}

void PotentialTable::write_json(std::ostream& os, const std::string& length_unit,
                                const std::string& energy_unit) const {
  char buf[48];
  os << "{\n  \"units\": {\"r\": \"" << length_unit << "\", \"V\": \""
     << energy_unit << "\"},\n  \"interpolation\": \"cubic_log_log\",\n"
     << "  \"r\": [";
  for (size_t i = 0; i < radii_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.16e", radii_[i]);
    os << (i ? "," : "") << buf;
  }
  os << "],\n  \"V\": [";
  for (size_t i = 0; i < values_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.16e", values_[i]);
    os << (i ? "," : "") << buf;
  }
  os << "]\n}\n";
}

} // namespace vpcs

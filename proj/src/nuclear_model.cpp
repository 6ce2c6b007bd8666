#include "vpcs/nuclear_model.hpp"

#include <cmath>

#include "vpcs/constants.hpp"
#include "vpcs/quadrature.hpp"

namespace vpcs {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

NuclearModel::NuclearModel(NuclearKind kind, double z, double p1, double p2)
    : kind_(kind), z_(z), p1_(p1), p2_(p2) {
  if (!(z >= 0.0) || !std::isfinite(z))
    throw std::domain_error("NuclearModel: Z must be a finite nonnegative number");
}

NuclearModel NuclearModel::point(double z) {
  return NuclearModel(NuclearKind::point, z, 0.0, 0.0);
}

NuclearModel NuclearModel::uniform_sphere(double z, double radius) {
  if (!(radius > 0.0))
    throw std::domain_error("uniform_sphere: radius must be > 0");
  return NuclearModel(NuclearKind::uniform_sphere, z, radius, 0.0);
}

NuclearModel NuclearModel::gaussian(double z, double r_rms) {
  if (!(r_rms > 0.0))
    throw std::domain_error("gaussian: r_rms must be > 0");
  return NuclearModel(NuclearKind::gaussian, z, r_rms, 0.0);
}

NuclearModel NuclearModel::fermi2(double z, double c, double a) {
  if (!(c > 0.0) || !(a > 0.0))
    throw std::domain_error("fermi2: c and a must be > 0");
  NuclearModel m(NuclearKind::fermi2, z, c, a);
  // unnormalized 4 pi int r^2 / (1 + exp((r-c)/a)) dr
  auto raw = integrate_radial(
      [c, a](double r) {
        const double e = (r - c) / a;
        return 4.0 * kPi * r * r / (1.0 + std::exp(e));
      },
      0.0, m.extent(), 1e-13);
  m.fermi_norm_ = 1.0 / raw.value;
  return m;
}

double NuclearModel::density(double r) const {
  if (r < 0.0) throw std::domain_error("density: r must be >= 0");
  switch (kind_) {
    case NuclearKind::point:
      throw std::domain_error(
          "density: point model is a delta distribution, not pointwise sampleable");
    case NuclearKind::uniform_sphere:
      return r <= p1_ ? 3.0 / (4.0 * kPi * p1_ * p1_ * p1_) : 0.0;
    case NuclearKind::gaussian: {
      const double s2 = p1_ * p1_;
      const double norm = std::pow(3.0 / (2.0 * kPi * s2), 1.5);
      return norm * std::exp(-1.5 * r * r / s2);
    }
    case NuclearKind::fermi2: {
      const double e = (r - p1_) / p2_;
      // avoid overflow in exp for large r
      if (e > 700.0) return 0.0;
      return fermi_norm_ / (1.0 + std::exp(e));
    }
  }
  return 0.0;
}

double NuclearModel::extent() const {
  switch (kind_) {
    case NuclearKind::point: return 0.0;
    case NuclearKind::uniform_sphere: return p1_;
    case NuclearKind::gaussian: return 9.0 * p1_;
    case NuclearKind::fermi2: return p1_ + 45.0 * p2_;
  }
  return 0.0;
}

double NuclearModel::potential(double r) const {
  if (r < 0.0) throw std::domain_error("potential: r must be >= 0");
  const double za = z_ * kAlpha;
  switch (kind_) {
    case NuclearKind::point:
      if (r == 0.0)
        throw std::domain_error("potential: point charge is singular at r = 0");
      return -za / r;
    case NuclearKind::uniform_sphere: {
      const double R = p1_;
      if (r >= R) return -za / r;
      return -za / (2.0 * R) * (3.0 - r * r / (R * R));
    }
    case NuclearKind::gaussian: {
      const double k = std::sqrt(1.5) / p1_;
      if (r == 0.0) return -za * 2.0 * k / std::sqrt(kPi);
      return -za * std::erf(k * r) / r;
    }
    case NuclearKind::fermi2:
      return potential_radial_reduction(*this, r);
  }
  return 0.0;
}

double NuclearModel::coulomb_convolution(double r) const {
  // For z = 0 the potential is identically zero; fall back to a unit-charge
  // copy so the convolution itself stays well defined.
  if (z_ == 0.0) {
    NuclearModel unit = *this;
    unit.z_ = 1.0;
    return -unit.potential(r) / kAlpha;
  }
  return -potential(r) / (z_ * kAlpha);
}

double NuclearModel::normalization_check() const {
  if (kind_ == NuclearKind::point) return 1.0;
  auto q = integrate_radial(
      [this](double r) { return 4.0 * kPi * r * r * density(r); }, 0.0, extent(),
      1e-12);
  return q.value;
}

double potential_radial_reduction(const NuclearModel& model, double r) {
  const double za = model.z() * kAlpha;
  const double ext = model.extent();
  if (ext == 0.0) return model.potential(r);
  double inner = 0.0;
  if (r > 0.0) {
    const double hi = std::min(r, ext);
    inner = integrate_radial(
                [&model](double s) {
                  return 4.0 * kPi * s * s * model.density(s);
                },
                0.0, hi, 1e-13)
                .value;
    if (r >= ext) return -za / r; // all charge enclosed, normalized to 1
  }
  double outer = 0.0;
  if (r < ext)
    outer = integrate_radial(
                [&model](double s) { return 4.0 * kPi * s * model.density(s); },
                r, ext, 1e-13)
                .value;
  if (r == 0.0) return -za * outer;
  return -za * (inner / r + outer);
}

} // namespace vpcs

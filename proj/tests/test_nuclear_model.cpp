#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle_reference.hpp"
#include "vpcs/constants.hpp"
#include "vpcs/nuclear_model.hpp"
#include "vpcs/quadrature.hpp"

using namespace vpcs;

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_rel(double value, double expected, double tol) {
  CHECK(std::abs(value - expected) <= tol * std::abs(expected));
}
} // namespace

TEST_CASE("densities are normalized to unit charge") {
  for (const auto& m :
       {NuclearModel::uniform_sphere(1.0, 0.8), NuclearModel::gaussian(2.0, 0.5),
        NuclearModel::fermi2(82.0, 0.02, 0.003)}) {
    check_rel(m.normalization_check(), 1.0, 1e-10);
  }
}

TEST_CASE("density values and support") {
  auto sphere = NuclearModel::uniform_sphere(1.0, 1.0);
  check_rel(sphere.density(0.5), 3.0 / (4.0 * kPi), 1e-14);
  CHECK(sphere.density(1.5) == 0.0);

  auto gauss = NuclearModel::gaussian(1.0, 0.7);
  CHECK(gauss.density(0.0) > 0.0);
  CHECK(gauss.density(10.0) < 1e-80);

  auto point = NuclearModel::point(1.0);
  CHECK_THROWS_AS(point.density(0.5), std::domain_error);
}

TEST_CASE("density is nonnegative everywhere") {
  for (const auto& m :
       {NuclearModel::uniform_sphere(1.0, 0.8), NuclearModel::gaussian(1.0, 0.5),
        NuclearModel::fermi2(1.0, 0.02, 0.004)}) {
    for (int k = 0; k <= 300; ++k) {
      const double r = m.extent() * k / 300.0;
      CHECK(m.density(r) >= 0.0);
    }
  }
}

TEST_CASE("point potential is Coulomb") {
  auto point = NuclearModel::point(3.0);
  check_rel(point.potential(2.0), -3.0 * kAlpha / 2.0, 1e-15);
  CHECK_THROWS_AS(point.potential(0.0), std::domain_error);
}

TEST_CASE("uniform sphere potential: interior closed form") {
  const double R = 0.8, z = 2.0;
  auto m = NuclearModel::uniform_sphere(z, R);
  for (double r : {0.0, 0.2, 0.5, 0.79}) {
    const double expected = -z * kAlpha / (2.0 * R) * (3.0 - r * r / (R * R));
    check_rel(m.potential(r), expected, 1e-14);
  }
  check_rel(m.potential(2.0), -z * kAlpha / 2.0, 1e-14);
}

TEST_CASE("closed-form potentials equal the radial reduction") {
  auto sphere = NuclearModel::uniform_sphere(1.0, 0.6);
  auto gauss = NuclearModel::gaussian(1.0, 0.4);
  for (double r : {0.05, 0.3, 0.6, 1.5}) {
    check_rel(sphere.potential(r), potential_radial_reduction(sphere, r), 1e-10);
    check_rel(gauss.potential(r), potential_radial_reduction(gauss, r), 1e-10);
  }
}

TEST_CASE("far field approaches the normalized point charge") {
  for (const auto& m :
       {NuclearModel::uniform_sphere(1.0, 0.3), NuclearModel::gaussian(1.0, 0.2),
        NuclearModel::fermi2(1.0, 0.02, 0.003)}) {
    const double r = 12.0 * std::max(m.extent(), 0.1);
    check_rel(m.potential(r), -m.z() * kAlpha / r, 1e-10);
  }
}

TEST_CASE("Poisson equation holds for smooth models") {
  // second difference of V on a log grid vs 4 pi Z alpha rho, probed where
  // the density is significant
  auto lap_fd = [](const NuclearModel& m, double r, double h) {
    const double vm = m.potential(r - h);
    const double v0 = m.potential(r);
    const double vp = m.potential(r + h);
    return ((r + h) * vp - 2.0 * r * v0 + (r - h) * vm) / (h * h * r);
  };
  auto gauss = NuclearModel::gaussian(1.0, 0.5);
  for (double r : {0.2, 0.4, 0.8}) {
    const double rho = 4.0 * kPi * gauss.z() * kAlpha * gauss.density(r);
    CHECK(std::abs(lap_fd(gauss, r, 3e-4 * r) - rho) <= 1e-6 * std::abs(rho));
  }
  auto sphere = NuclearModel::uniform_sphere(1.0, 0.8);
  for (double r : {0.2, 0.5}) {
    const double rho = 4.0 * kPi * sphere.z() * kAlpha * sphere.density(r);
    CHECK(std::abs(lap_fd(sphere, r, 1e-3 * r) - rho) <= 1e-6 * std::abs(rho));
  }
  // fermi2 evaluates V by quadrature, so the difference quotient carries the
  // quadrature noise; the check is correspondingly looser
  auto fermi = NuclearModel::fermi2(1.0, 0.02, 0.003);
  for (double r : {0.01, 0.02}) {
    const double rho = 4.0 * kPi * fermi.z() * kAlpha * fermi.density(r);
    CHECK(std::abs(lap_fd(fermi, r, 0.02 * r) - rho) <= 1e-3 * std::abs(rho));
  }
}

TEST_CASE("potential is nondecreasing in r") {
  for (const auto& m :
       {NuclearModel::uniform_sphere(1.0, 0.8), NuclearModel::gaussian(1.0, 0.5),
        NuclearModel::fermi2(1.0, 0.015, 0.002), NuclearModel::point(1.0)}) {
    double prev = m.potential(1e-4);
    for (int k = 1; k <= 60; ++k) {
      const double r = 1e-4 * std::pow(10.0, 5.0 * k / 60.0);
      const double v = m.potential(r);
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("uniform sphere potential and slope are continuous at the edge") {
  const double R = 0.7;
  auto m = NuclearModel::uniform_sphere(1.0, R);
  // one-sided limits of V agree (separation small enough that the true
  // slope contributes nothing at the 1e-10 level)
  const double eps = 1e-12 * R;
  check_rel(m.potential(R - eps), m.potential(R + eps), 1e-10);
  const double h = 1e-6 * R;
  const double slope_in = (m.potential(R - h) - m.potential(R - 2.0 * h)) / h;
  const double slope_out = (m.potential(R + 2.0 * h) - m.potential(R + h)) / h;
  CHECK(std::abs(slope_in - slope_out) <= 1e-4 * std::abs(slope_out));
}

TEST_CASE("gaussian rms radius is reproduced") {
  const double rms = 0.37;
  auto m = NuclearModel::gaussian(1.0, rms);
  auto r2 = integrate_radial(
      [&](double r) { return 4.0 * kPi * r * r * r * r * m.density(r); }, 0.0,
      m.extent(), 1e-12);
  check_rel(std::sqrt(r2.value), rms, 1e-10);
}

TEST_CASE("coulomb convolution matches -V/(Z alpha) and works at Z = 0") {
  auto m = NuclearModel::gaussian(2.0, 0.5);
  for (double r : {0.1, 0.5, 2.0})
    check_rel(m.coulomb_convolution(r), -m.potential(r) / (2.0 * kAlpha), 1e-13);
  auto neutral = NuclearModel::gaussian(0.0, 0.5);
  CHECK(neutral.potential(1.0) == 0.0);
  CHECK(neutral.coulomb_convolution(1.0) > 0.0);
}

TEST_CASE("constructor rejections") {
  CHECK_THROWS_AS(NuclearModel::uniform_sphere(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(NuclearModel::gaussian(1.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(NuclearModel::fermi2(1.0, 0.0, 0.01), std::domain_error);
  CHECK_THROWS_AS(NuclearModel::point(-1.0), std::domain_error);
}

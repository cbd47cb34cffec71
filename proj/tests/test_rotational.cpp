#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "mhs/errors.hpp"
#include "mhs/geometry.hpp"
#include "mhs/rotational.hpp"
#include "mhs/spline.hpp"

using namespace mhs;
using std::numbers::pi;

namespace {

// Classical RK4 on (psi, psi', theta) with theta' = c / cos^2 psi, started at
// the lower turning point and run for time T.
std::array<double, 3> rk4_profile(double c, double T, int steps) {
  auto rhs = [c](const std::array<double, 3>& y) {
    const double cs = std::cos(y[0]), sn = std::sin(y[0]);
    const double dtheta = c / (cs * cs);
    return std::array<double, 3>{y[1], sn * cs * (1.0 - dtheta * dtheta), dtheta};
  };
  std::array<double, 3> y{0.5 * std::asin(2.0 * c), 0.0, 0.0};
  const double h = T / steps;
  for (int i = 0; i < steps; ++i) {
    auto add = [](const std::array<double, 3>& a, const std::array<double, 3>& b, double s) {
      return std::array<double, 3>{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
    };
    const auto k1 = rhs(y);
    const auto k2 = rhs(add(y, k1, h / 2));
    const auto k3 = rhs(add(y, k2, h / 2));
    const auto k4 = rhs(add(y, k3, h));
    for (int j = 0; j < 3; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  return y;
}

ErrorKind kind_of(auto&& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an mhs::Error");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("periodic spline reproduces smooth periodic data") {
  const int n = 64;
  const double period = 3.0;
  Vec values(n);
  for (int i = 0; i < n; ++i) values[i] = std::sin(2 * pi * i / n) + 0.3 * std::cos(4 * pi * i / n);
  const PeriodicCubicSpline<double> spline(values, period);
  for (double t : {0.0, 0.37, 1.234, 2.99, -0.5, 7.1}) {
    const double w = 2 * pi / period;
    CHECK(spline(t) == doctest::Approx(std::sin(w * t) + 0.3 * std::cos(2 * w * t)).epsilon(1e-5));
    CHECK(spline.derivative(t) == doctest::Approx(w * std::cos(w * t) - 0.6 * w * std::sin(2 * w * t)).epsilon(1e-3));
  }
  CHECK(spline(period * 5 / n) == doctest::Approx(values[5]).epsilon(1e-14));
  CHECK_THROWS_AS(PeriodicCubicSpline<double>(Vec::Zero(3), 1.0), Error);
}

TEST_CASE("rotation number is monotone inside (1/2, sqrt(2)/2)") {
  const WindowScan scan = scan_rotation_window(20);
  CHECK(scan.monotone);
  CHECK(scan.lower() > 0.5);
  CHECK(scan.upper() < std::sqrt(0.5));
  // near the Clifford limit the linearized frequency gives sqrt(2)/2
  CHECK(rotation_number(0.4999) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-3));
}

TEST_CASE("energies outside (0, 1/2) are rejected") {
  CHECK(kind_of([] { shoot_profile(0.0); }) == ErrorKind::OutOfWindow);
  CHECK(kind_of([] { shoot_profile(0.5); }) == ErrorKind::OutOfWindow);
  CHECK(kind_of([] { shoot_profile(-1.0); }) == ErrorKind::OutOfWindow);
}

TEST_CASE("rotation numbers outside the window have no Otsuki solution") {
  CHECK(kind_of([] { find_otsuki(1, 1); }) == ErrorKind::NoSolution);
  CHECK(kind_of([] { find_otsuki(1, 2); }) == ErrorKind::NoSolution);
  CHECK(kind_of([] { find_otsuki(3, 4); }) == ErrorKind::NoSolution);
  CHECK(kind_of([] { find_otsuki(2, 4); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { find_otsuki(0, 3); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("the (2, 3) profile closes and matches an independent integration") {
  const ProfileCurve prof = find_otsuki(2, 3);
  CHECK(prof.closure_residual <= 1e-8);
  CHECK(prof.periodicity_residual <= 1e-8);
  CHECK(prof.clairaut_drift <= 1e-10);
  CHECK(prof.clairaut > 0.0);
  CHECK(prof.clairaut < 0.5);
  CHECK(prof.times.size() == prof.samples.rows());
  CHECK(prof.times[prof.times.size() - 1] == doctest::Approx(prof.period));

  const auto y = rk4_profile(prof.clairaut, prof.period, 20000);
  CHECK(y[2] == doctest::Approx(2 * pi * 2 / 3).epsilon(1e-8));
  CHECK(y[0] == doctest::Approx(0.5 * std::asin(2 * prof.clairaut)).epsilon(1e-8));
  CHECK(std::abs(y[1]) < 1e-8);

  // conformality and Clairaut along the stored samples
  for (Eigen::Index i = 0; i < prof.samples.rows(); i += 37) {
    const double psi = prof.samples(i, 0), dpsi = prof.samples(i, 2), dtheta = prof.samples(i, 3);
    const double c2 = std::cos(psi) * std::cos(psi);
    CHECK(c2 * dtheta == doctest::Approx(prof.clairaut).epsilon(1e-10));
    CHECK(dpsi * dpsi + c2 * dtheta * dtheta == doctest::Approx(std::sin(psi) * std::sin(psi)).epsilon(1e-9));
  }
}

TEST_CASE("a different rational in the window also closes") {
  const ProfileCurve prof = find_otsuki(3, 5);
  CHECK(prof.closure_residual <= 1e-8);
  CHECK(prof.clairaut < find_otsuki(2, 3).clairaut);  // 3/5 < 2/3 and rotation increases with c
}

TEST_CASE("built Otsuki surface is minimal and obeys Gauss-Bonnet") {
  const ProfileCurve prof = find_otsuki(2, 3);
  const GeometryFamily fam = build_surface(prof, 64, 32);
  CHECK(fam.domain().fully_periodic());
  CHECK(fam.domain().upper[0] == doctest::Approx(3 * prof.period));
  CHECK(fam.parameters().at("t_periods") == 3);
  const SurfaceIntegrals coarse = integrate_surface(fam, {192, 32});
  const SurfaceIntegrals fine = integrate_surface(fam, {384, 64});
  CHECK(fine.max_trace <= 1e-6);
  CHECK(coarse.area == doctest::Approx(fine.area).epsilon(1e-9));
  // for a minimal torus in S^3: int |A|^2 = 2 |M| - int 2K = 2 |M|
  CHECK(fine.integral_Asq / (2 * fine.area) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(fine.max_Asq > 2.0);

  Vec u(2);
  u << 1.3, 0.7;
  const FramePoint fp = eval_frame(fam, u);
  CHECK(std::abs(fp.x.dot(fp.nu)) < 1e-12);
  CHECK(fp.x.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(fp.A.trace()) < 1e-6);

  CHECK(kind_of([&] { build_surface(prof, 8, 32); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("profile JSON record") {
  const ProfileCurve prof = find_otsuki(2, 3, 1e-10, 64);
  const nlohmann::json j = profile_to_json(prof);
  CHECK(j.at("p") == 2);
  CHECK(j.at("q") == 3);
  CHECK(j.at("samples").size() == 65);
  CHECK(j.at("period").get<double>() == doctest::Approx(prof.period));
  CHECK(j.at("clairaut").get<double>() == doctest::Approx(prof.clairaut));
}

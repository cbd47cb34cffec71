#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mhs/errors.hpp"
#include "mhs/geometry.hpp"

using namespace mhs;
using std::numbers::pi;

namespace {

double sphere_volume(int m) { return 2.0 * std::pow(pi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1)); }

Vec random_point(const ParamDomain& d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.1, 0.9);
  Vec u(d.dim());
  for (int i = 0; i < d.dim(); ++i) u[i] = d.lower[i] + unit(rng) * (d.upper[i] - d.lower[i]);
  return u;
}

}  // namespace

TEST_CASE("hyperspherical Jacobian matches central differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.2, 2.9);
  for (int m = 1; m <= 5; ++m) {
    Vec a(m);
    for (int i = 0; i < m; ++i) a[i] = angle(rng);
    Vec y, yp, ym;
    Mat jac, scratch;
    hyperspherical(a, y, jac);
    CHECK(y.norm() == doctest::Approx(1.0).epsilon(1e-14));
    const double h = 1e-6;
    for (int i = 0; i < m; ++i) {
      Vec ap = a, am = a;
      ap[i] += h;
      am[i] -= h;
      hyperspherical(ap, yp, scratch);
      hyperspherical(am, ym, scratch);
      CHECK(((yp - ym) / (2 * h) - jac.col(i)).norm() < 1e-8);
    }
  }
}

TEST_CASE("Clifford frames: orthonormality, minimality, principal curvatures") {
  std::mt19937_64 rng(11);
  for (auto [n, k] : {std::pair{2, 1}, {3, 1}, {4, 2}, {5, 3}}) {
    CAPTURE(n);
    CAPTURE(k);
    const GeometryFamily fam = clifford(n, k);
    const double r = std::sqrt(double(k) / n), s = std::sqrt(double(n - k) / n);
    for (int trial = 0; trial < 5; ++trial) {
      const Vec u = random_point(fam.domain(), rng);
      const FramePoint fp = eval_frame(fam, u);
      CHECK(fp.x.norm() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(fp.nu.norm() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(std::abs(fp.x.dot(fp.nu)) < 1e-13);
      CHECK((fp.tangent_basis.transpose() * fp.tangent_basis - Mat::Identity(n, n)).norm() < 1e-12);
      CHECK((fp.tangent_basis.transpose() * fp.x).norm() < 1e-12);
      CHECK((fp.tangent_basis.transpose() * fp.nu).norm() < 1e-12);
      CHECK(std::abs(fp.A.trace()) < 1e-12);
      CHECK(fp.Asq == doctest::Approx(n).epsilon(1e-12));
      Eigen::SelfAdjointEigenSolver<Mat> eig(fp.A);
      for (int i = 0; i < n - k; ++i) CHECK(eig.eigenvalues()[i] == doctest::Approx(-r / s).epsilon(1e-12));
      for (int i = n - k; i < n; ++i) CHECK(eig.eigenvalues()[i] == doctest::Approx(s / r).epsilon(1e-12));
    }
  }
}

TEST_CASE("shape operator agrees with the finite-difference derivative of the normal") {
  std::mt19937_64 rng(3);
  const GeometryFamily fam = clifford(3, 2);
  const Vec u = random_point(fam.domain(), rng);
  const FramePoint fp = eval_frame(fam, u);
  const Jet jet = fam.jet(u);
  const double h = 1e-6;
  for (int i = 0; i < fam.surface_dim(); ++i) {
    Vec up = u, um = u;
    up[i] += h;
    um[i] -= h;
    const Vec dnu = (fam.normal(up) - fam.normal(um)) / (2 * h);
    const Vec predicted = -fp.tangent_basis * (fp.A * (fp.tangent_basis.transpose() * jet.tangents.col(i)));
    CHECK((dnu - predicted).norm() < 1e-8);
  }
}

TEST_CASE("totally geodesic equator has vanishing shape operator") {
  const GeometryFamily fam = equator(3);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const FramePoint fp = eval_frame(fam, random_point(fam.domain(), rng));
    CHECK(fp.A.norm() == 0.0);
    CHECK(fp.x.norm() == doctest::Approx(1.0));
    CHECK(fp.nu == Vec::Unit(5, 4));
  }
}

TEST_CASE("test-function gradients converge at second order") {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> gauss;
  for (const GeometryFamily& fam : {clifford(2, 1), clifford(3, 1), equator(2)}) {
    CAPTURE(fam.name());
    const Vec u = random_point(fam.domain(), rng);
    Vec v(fam.ambient_dim());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
    const GradientResidual coarse = gradient_check(fam, v, u, 1e-2);
    const GradientResidual fine = gradient_check(fam, v, u, 5e-3);
    CHECK(coarse.l_residual < 1e-3);
    CHECK(coarse.l_residual / fine.l_residual == doctest::Approx(4.0).epsilon(0.05));
    if (fam.name() != "equator") {
      CHECK(coarse.f_residual / fine.f_residual == doctest::Approx(4.0).epsilon(0.05));
    } else {
      CHECK(fine.f_residual < 1e-14);
    }
  }
}

TEST_CASE("l and f evaluate inner products with position and normal") {
  const GeometryFamily fam = clifford(2, 1);
  Vec v(4);
  v << 1.0, -2.0, 0.5, 3.0;
  Vec u(2);
  u << 0.4, 1.7;
  CHECK(l_func(fam, v)(u) == doctest::Approx(fam.position(u).dot(v)));
  CHECK(f_func(fam, v)(u) == doctest::Approx(fam.normal(u).dot(v)));
}

TEST_CASE("chart poles and out-of-domain points are rejected") {
  const GeometryFamily sphere = equator(2);
  Vec pole(2);
  pole << 0.0, 1.0;
  CHECK_THROWS_WITH_AS(eval_frame(sphere, pole), doctest::Contains("singular"), Error);
  Vec outside(2);
  outside << -0.1, 1.0;
  try {
    sphere.jet(outside);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
  CHECK_THROWS_AS(sphere.jet(Vec::Zero(3)), Error);
  // periodic coordinates accept any finite value
  Vec wrapped(2);
  wrapped << 1.0, 40.0;
  CHECK_NOTHROW(sphere.jet(wrapped));
  CHECK_THROWS_AS(equator(1), Error);
  CHECK_THROWS_AS(clifford(3, 3), Error);
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2N - 1 exactly") {
  Vec x, w;
  gauss_legendre(6, x, w);
  for (int p = 0; p <= 11; ++p) {
    const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
    CHECK(w.dot(x.array().pow(p).matrix()) == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("surface integrals: areas and total curvature") {
  const SurfaceIntegrals s2 = integrate_surface(equator(2), {24, 24});
  CHECK(s2.area == doctest::Approx(4 * pi).epsilon(1e-12));
  CHECK(s2.integral_Asq == 0.0);
  for (auto [n, k] : {std::pair{2, 1}, {3, 1}, {4, 2}}) {
    const double r = std::sqrt(double(k) / n), s = std::sqrt(double(n - k) / n);
    const double exact = sphere_volume(k) * std::pow(r, k) * sphere_volume(n - k) * std::pow(s, n - k);
    const SurfaceIntegrals si = integrate_surface(clifford(n, k), std::vector<int>(n, 16));
    CHECK(si.area == doctest::Approx(exact).epsilon(1e-12));
    CHECK(si.integral_Asq == doctest::Approx(n * exact).epsilon(1e-12));
    CHECK(si.max_trace < 1e-12);
  }
  CHECK(check_minimality(clifford(3, 1), 8) < 1e-12);
}

TEST_CASE("sample grids stay off the poles") {
  const ParamDomain d = equator(3).domain();
  const SampleGrid g = sample_grid(d, 6);
  CHECK(g.points.size() == 216);
  double total = 0;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    for (int j = 0; j + 1 < d.dim(); ++j) {
      CHECK(g.points[i][j] > 0.0);
      CHECK(g.points[i][j] < pi);
    }
    total += g.weights[i];
  }
  CHECK(total == doctest::Approx(pi * pi * 2 * pi));
}

#include <doctest.h>

#include <cmath>

#include "mhs/errors.hpp"
#include "mhs/fem.hpp"
#include "mhs/rotational.hpp"
#include "mhs/spectral.hpp"

using namespace mhs;

namespace {

// Full dense spectrum of the pencil, independent of the sparse solver.
Vec full_spectrum(const OperatorSet& ops) {
  const Mat B = Mat(ops.stability()), M = Mat(ops.Mm);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> eig(B, M, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

}  // namespace

TEST_CASE("sparse solver agrees with the dense pencil on small meshes") {
  for (const SurfaceMesh& mesh : {mesh_torus(clifford(2, 1), 12, 12), mesh_sphere(2)}) {
    const OperatorSet ops = assemble(mesh);
    const Vec all = full_spectrum(ops);
    const EigenReport sparse = lowest_eigs(ops, 12, 0.05, true, 3);
    const EigenReport dense = dense_lowest_eigs(ops, 12, 0.05);
    for (int i = 0; i < 12; ++i) {
      CHECK(sparse.eigenvalues[i] == doctest::Approx(all[i]).epsilon(1e-9));
      CHECK(dense.eigenvalues[i] == doctest::Approx(all[i]).epsilon(1e-9));
    }
    CHECK(sparse.residuals.maxCoeff() <= 1e-8);
    REQUIRE(sparse.vectors);
    const Mat& X = *sparse.vectors;
    CHECK((X.transpose() * (ops.Mm * X) - Mat::Identity(12, 12)).norm() < 1e-8);
    for (int i = 0; i < 12; ++i) CHECK(pencil_residual(ops, sparse.eigenvalues[i], X.col(i)) <= 1e-8);
  }
}

TEST_CASE("inertia counts match the dense spectrum") {
  const OperatorSet ops = assemble(mesh_torus(clifford(2, 1), 10, 10));
  const Vec all = full_spectrum(ops);
  for (double shift : {-5.0, -3.0, -1.0, -0.05, 0.05, 1.0, 3.0, 10.0}) {
    CAPTURE(shift);
    CHECK(inertia_below(ops, shift) == (all.array() < shift).count());
  }
}

TEST_CASE("Clifford torus: index 5, nullity 4, ground state constant") {
  const SurfaceMesh mesh = mesh_torus(clifford(2, 1), 32, 32);
  const OperatorSet ops = assemble(mesh);
  const double z = default_zero_tol(mesh);
  CHECK(z == doctest::Approx(0.2));
  const EigenReport eig = lowest_eigs(ops, 12, z);
  CHECK(eig.index == 5);
  CHECK(eig.nullity == 4);
  CHECK(eig.lambda1 == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(inertia_below(ops, -z) == 5);
  CHECK(inertia_below(ops, z) == 9);

  const GroundState g = first_eigfunction(ops);
  CHECK(g.lambda1 == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(g.rho.dot(ops.Mm * g.rho) == doctest::Approx(1.0));
  CHECK((g.rho.array() > 0).all());
  CHECK((g.rho.array() - 1.0 / std::sqrt(mesh.area())).abs().maxCoeff() < 1e-8);
}

TEST_CASE("equator sphere: index 1 and the coordinate triple near zero") {
  const SurfaceMesh mesh = mesh_sphere(3);
  const OperatorSet ops = assemble(mesh);
  const EigenReport eig = lowest_eigs(ops, 6, default_zero_tol(mesh));
  CHECK(eig.index == 1);
  CHECK(eig.nullity == 3);
  CHECK(eig.lambda1 == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(default_zero_tol(mesh_sphere(4)) == doctest::Approx(0.05));
}

TEST_CASE("refinement lowers eigenvalues at second order") {
  std::vector<Vec> levels;
  for (int res : {16, 32, 64}) levels.push_back(lowest_eigs(assemble(mesh_torus(clifford(2, 1), res, res)), 10, 0.05).eigenvalues);
  for (int i = 0; i < 10; ++i) {
    CHECK(levels[1][i] <= levels[0][i] + 1e-10);
    CHECK(levels[2][i] <= levels[1][i] + 1e-10);
  }
  // the -2 cluster (coordinates of the torus) converges like h^2
  const double e0 = levels[0][1] + 2.0, e1 = levels[1][1] + 2.0, e2 = levels[2][1] + 2.0;
  CHECK(std::log2(e0 / e1) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("Otsuki torus has index above five") {
  const ProfileCurve prof = find_otsuki(2, 3, 1e-10, 256);
  const SurfaceMesh mesh = mesh_torus(build_surface(prof, 64, 16), 64, 16);
  const OperatorSet ops = assemble(mesh);
  const GroundState g = first_eigfunction(ops);
  CHECK(g.lambda1 < -4.0);
  CHECK(inertia_below(ops, -default_zero_tol(mesh)) >= 6);
}

TEST_CASE("degenerate ground states are reported") {
  // two congruent, disjoint triangles: the lowest eigenvalue is double
  const nlohmann::json doc = {
      {"vertices", {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}}},
      {"triangles", {{0, 1, 2}, {3, 5, 4}}},
      {"fields", {{"Asq", {0, 0, 0, 0, 0, 0}}}}};
  const OperatorSet ops = assemble(mesh_from_json(doc));
  try {
    first_eigfunction(ops);
    FAIL("expected NotSimple");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSimple);
  }
}

TEST_CASE("eigenvalue counts are validated") {
  const OperatorSet ops = assemble(mesh_sphere(1));
  CHECK_THROWS_AS(lowest_eigs(ops, 0, 0.05), Error);
  CHECK_THROWS_AS(lowest_eigs(ops, 1000, 0.05), Error);
}

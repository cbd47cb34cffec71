#include <doctest.h>

#include <cmath>
#include <random>

#include "mhs/errors.hpp"
#include "mhs/fem.hpp"
#include "mhs/paperlab.hpp"
#include "mhs/rotational.hpp"

using namespace mhs;

namespace {

const MeshAnalysis& clifford_analysis() {
  static const MeshAnalysis a = analyze(mesh_torus(clifford(2, 1), 32, 32));
  return a;
}

const MeshAnalysis& equator_analysis() {
  static const MeshAnalysis a = analyze(mesh_sphere(3));
  return a;
}

const GeometryFamily& otsuki_family() {
  static const GeometryFamily fam = build_surface(find_otsuki(2, 3), 64, 32);
  return fam;
}

const MeshAnalysis& otsuki_analysis() {
  static const MeshAnalysis a = analyze(mesh_torus(otsuki_family(), 64, 32));
  return a;
}

SurfaceMesh scaled_potential(SurfaceMesh mesh, double factor) {
  mesh.vertex_Asq *= factor;
  mesh.quad_Asq *= factor;
  return mesh;
}

}  // namespace

TEST_CASE("pencil inertia on full and rank-deficient Gram matrices") {
  Mat B = Mat::Zero(3, 3);
  B.diagonal() << -1.0, 2.0, -3.0;
  const PencilInertia full = pencil_inertia(B, Mat::Identity(3, 3), 1e-8, 1e-12);
  CHECK(full.rank == 3);
  CHECK(full.neg_inertia == 2);
  CHECK(full.eigenvalues[0] == doctest::Approx(-3.0));

  // functions {e1, e1, e2} under B = diag(-1, 2): one duplicate direction
  Mat F(2, 3);
  F << 1, 1, 0, 0, 0, 1;
  Mat B2 = Mat::Zero(2, 2);
  B2.diagonal() << -1.0, 2.0;
  const PencilInertia dup = pencil_inertia(F.transpose() * B2 * F, F.transpose() * F, 1e-8, 1e-12);
  CHECK(dup.rank == 2);
  CHECK(dup.neg_inertia == 1);

  const Eigen::MatrixXf Bf = B.cast<float>();
  const PencilInertia single = pencil_inertia(Bf, Eigen::MatrixXf::Identity(3, 3), 1e-6, 1e-6);
  CHECK(single.neg_inertia == 2);
}

TEST_CASE("Lemma: Gram ranks on Gamma") {
  const LemmaReport ot = lemma_check(otsuki_analysis());
  CHECK(ot.rank == 9);
  CHECK(ot.expected == 9);
  CHECK(ot.full_rank);
  CHECK(lemma_check(clifford_analysis()).rank == 5);
  CHECK(lemma_check(equator_analysis()).rank == 4);
  CHECK_FALSE(lemma_check(clifford_analysis()).full_rank);
}

TEST_CASE("identity residuals on Clifford vanish to roundoff") {
  const IdentityResiduals r = gauss_identities(clifford_analysis());
  CHECK(r.max_mean_l < 1e-10 * r.area);
  CHECK(r.max_curvature_f < 1e-10 * r.area);
  CHECK(r.max_cross < 1e-10 * r.area);
  CHECK(r.cross.rows() == 4);
}

TEST_CASE("identity residuals on Otsuki shrink under refinement") {
  const IdentityResiduals coarse = gauss_identities(analyze(mesh_torus(otsuki_family(), 32, 16)));
  const IdentityResiduals fine = gauss_identities(otsuki_analysis());
  CHECK(fine.max_mean_l < 1e-10 * fine.area);
  CHECK(fine.max_curvature_f < 1e-10 * fine.area);
  CHECK(coarse.max_cross / fine.max_cross > 3.0);
  CHECK(fine.max_cross < 1e-3 * fine.area);
}

TEST_CASE("v0 minimizes Q and beats the averaging bound") {
  for (const MeshAnalysis* a : {&clifford_analysis(), &otsuki_analysis()}) {
    for (double delta2 : {0.2, 0.5, 0.8}) {
      const V0Choice c = choose_v0(*a, delta2);
      CHECK(c.trace_residual < 1e-12);
      CHECK(c.v0.norm() == doctest::Approx(1.0));
      CHECK(c.value <= c.integral / a->ambient() + 1e-12);
      CHECK(c.v0.dot(c.Q * c.v0) == doctest::Approx(c.value).epsilon(1e-10));
      CHECK((c.Q - c.Q.transpose()).norm() == 0.0);
    }
  }
  const V0Choice c = choose_v0(clifford_analysis(), 0.5);
  CHECK(c.integral == doctest::Approx(clifford_analysis().area * (2.0 - 1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(choose_v0(clifford_analysis(), 1.0), Error);
  CHECK_THROWS_AS(choose_v0(clifford_analysis(), 0.0), Error);
}

TEST_CASE("Theorem verdicts on the model geometries") {
  for (double d1 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const TheoremReport t = theorem_check(clifford_analysis(), d1, 1.0 - d1);
    CHECK(t.verdict == Verdict::HypothesesNotMet);
    CHECK_FALSE(t.hyp_integral);
    CHECK(t.rayleigh_ritz_ok);
    CHECK(t.rank == 5);
  }
  const TheoremReport eq = theorem_check(equator_analysis(), 0.5, 0.5);
  CHECK(eq.verdict == Verdict::ExcludedGeodesic);
  CHECK(eq.hyp_integral);
  CHECK(eq.hyp_pointwise);
  CHECK(std::string(to_string(eq.verdict)) == "excluded_geodesic");

  const TheoremReport ot = theorem_check(otsuki_analysis(), 0.5, 0.5);
  CHECK(ot.verdict == Verdict::HypothesesNotMet);
  CHECK_FALSE(ot.hyp_pointwise);
  CHECK(ot.rank == 6);
  CHECK(ot.rayleigh_ritz_ok);
  CHECK_THROWS_AS(theorem_check(clifford_analysis(), 0.5, 0.6), Error);
}

TEST_CASE("synthetic potential meeting the hypotheses certifies index >= n + 4") {
  // |A|^2 scaled by 0.19: int <= delta2 n |M| and max <= 2 n delta1 at delta1 = 0.8
  const MeshAnalysis a = analyze(scaled_potential(mesh_torus(otsuki_family(), 64, 32), 0.19), 0.01);
  const TheoremReport t = theorem_check(a, 0.8, 0.2);
  CHECK(t.hyp_integral);
  CHECK(t.hyp_pointwise);
  CHECK(t.verdict == Verdict::NegativeDefinite);
  CHECK(t.neg_inertia == 6);
  CHECK(a.index >= 6);
  CHECK(t.rayleigh_ritz_ok);

  const MeshAnalysis weak = analyze(scaled_potential(mesh_torus(otsuki_family(), 64, 32), 0.05), 0.05);
  CHECK(theorem_check(weak, 0.5, 0.5).verdict == Verdict::NotNegativeDefinite);
}

TEST_CASE("chain: completed squares reproduce the second line exactly") {
  for (const MeshAnalysis* a : {&clifford_analysis(), &equator_analysis(), &otsuki_analysis()}) {
    for (const ChainRecord& r : chain_draws(*a, 20, 5)) {
      CHECK(r.identity_residual <= 1e-10 * r.scale);
      CHECK(r.L2 == doctest::Approx(r.terms[0] + r.terms[1] + r.terms[2] + r.terms[3]));
      CHECK(r.delta1 + r.delta2 == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("chain draws are reproducible from the seed") {
  const auto first = chain_draws(clifford_analysis(), 5, 42);
  const auto second = chain_draws(clifford_analysis(), 5, 42);
  const auto other = chain_draws(clifford_analysis(), 5, 43);
  for (int i = 0; i < 5; ++i) {
    CHECK(first[i].L0 == second[i].L0);
    CHECK(first[i].a == second[i].a);
  }
  CHECK(first[0].a != other[0].a);
}

TEST_CASE("chain: pure coordinate functions are strictly negative") {
  Vec w(4);
  w << 0.3, -1.2, 0.7, 0.4;
  for (const MeshAnalysis* a : {&clifford_analysis(), &otsuki_analysis()}) {
    const ChainRecord r = chain_verify(*a, 0.0, 0.0, w, 0.5, 0.5);
    const Vec l = a->L * w;
    CHECK(r.L0e == doctest::Approx(-l.dot(a->ops.curvature_mass() * l)).epsilon(1e-12));
    CHECK(r.L0 < 0.0);
    CHECK(r.direct_residual < 1e-2 * r.scale);
  }
}

TEST_CASE("chain: direct form matches the expansion at second order on Clifford") {
  Vec w(4);
  w << 1.0, 0.5, -0.25, 2.0;
  const ChainRecord coarse = chain_verify(analyze(mesh_torus(clifford(2, 1), 16, 16)), 0.7, -1.1, w, 0.4, 0.6);
  const ChainRecord fine = chain_verify(clifford_analysis(), 0.7, -1.1, w, 0.4, 0.6);
  CHECK((coarse.direct_residual / coarse.scale) / (fine.direct_residual / fine.scale) ==
        doctest::Approx(4.0).epsilon(0.15));
  // lambda_1 = -2n on Clifford, so lines 1 and 2 coincide
  CHECK(fine.L1 == doctest::Approx(fine.L0e).epsilon(1e-12));
}

TEST_CASE("chain rejects invalid input") {
  const Vec w = Vec::Ones(4);
  CHECK_THROWS_AS(chain_verify(clifford_analysis(), 1.0, 1.0, w, 0.5, 0.6), Error);
  CHECK_THROWS_AS(chain_verify(clifford_analysis(), 1.0, 1.0, Vec::Ones(3), 0.5, 0.5), Error);
  CHECK_THROWS_AS(chain_verify(clifford_analysis(), 0.0, 0.0, Vec::Zero(4), 0.5, 0.5), Error);
}

TEST_CASE("Rayleigh-Ritz: trial-space inertia never exceeds the Morse index") {
  for (const MeshAnalysis* a : {&clifford_analysis(), &equator_analysis(), &otsuki_analysis()}) {
    CHECK(lemma_check(*a).form.neg_inertia <= a->index);
    CHECK(theorem_check(*a, 0.5, 0.5).neg_inertia <= a->index);
    CHECK(conjecture_probe(*a).form.neg_inertia <= a->index);
  }
}

TEST_CASE("conjecture probe on Lambda") {
  const MeshAnalysis& c = clifford_analysis();
  const ConjectureReport cl = conjecture_probe(c);
  CHECK(cl.form.rank == 5);
  CHECK(cl.form.neg_inertia == 5);
  CHECK(cl.target == 6);
  CHECK_FALSE(cl.meets_target);
  // int 1 J(1) = -int (n + |A|^2)
  CHECK(cl.form.B(0, 0) == doctest::Approx(-4.0 * c.area).epsilon(1e-12));

  const ConjectureReport eq = conjecture_probe(equator_analysis());
  CHECK(eq.form.B(0, 0) == doctest::Approx(-2.0 * equator_analysis().area).epsilon(1e-12));
  CHECK(eq.form.neg_inertia >= 1);

  const ConjectureReport ot = conjecture_probe(otsuki_analysis());
  CHECK(ot.form.rank == 9);
  CHECK(ot.form.neg_inertia >= 6);
}

TEST_CASE("curvature ratio") {
  CHECK(ratio_report(*clifford_analysis().mesh) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ratio_report(*equator_analysis().mesh) == 0.0);
  // Gauss-Bonnet forces exactly 1 for minimal tori in S^3
  CHECK(ratio_report(*otsuki_analysis().mesh) == doctest::Approx(1.0).epsilon(1e-2));
}

#ifndef MHS_PAPERLAB_HPP
#define MHS_PAPERLAB_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mhs/fem.hpp"
#include "mhs/spectral.hpp"
#include "mhs/types.hpp"

namespace mhs {

// Generalized pencil (B, G) restricted to the G-positive subspace: G is
// diagonalized and eigen-directions below rank_tol * max are discarded before
// B is reduced. Eigenvalues of the reduced pencil are ascending.
struct PencilInertia {
  Vec eigenvalues;
  int rank = 0;
  int neg_inertia = 0;  // reduced eigenvalues < -zero_tol
};

template <typename DerivedB, typename DerivedG>
PencilInertia pencil_inertia(const Eigen::MatrixBase<DerivedB>& B, const Eigen::MatrixBase<DerivedG>& G,
                             double rank_tol, double zero_tol) {
  using Scalar = typename DerivedB::Scalar;
  const MatrixX<Scalar> Gs = (G + G.transpose()) / Scalar(2);
  const MatrixX<Scalar> Bs = (B + B.transpose()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> geig(Gs);
  const VectorX<Scalar>& g = geig.eigenvalues();
  const Scalar top = g.size() ? g.maxCoeff() : Scalar(0);
  PencilInertia out;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (top > Scalar(0) && g[i] > rank_tol * top) keep.push_back(i);
  out.rank = static_cast<int>(keep.size());
  if (keep.empty()) return out;
  MatrixX<Scalar> P(Gs.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    P.col(static_cast<Eigen::Index>(j)) = geig.eigenvectors().col(keep[j]) / std::sqrt(g[keep[j]]);
  const MatrixX<Scalar> reduced = P.transpose() * Bs * P;
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> beig((reduced + reduced.transpose()) / Scalar(2));
  out.eigenvalues = beig.eigenvalues().template cast<double>();
  out.neg_inertia = static_cast<int>((out.eigenvalues.array() < -zero_tol).count());
  return out;
}

struct FunctionSet {
  std::vector<std::string> labels;
  Mat values;  // nodal vectors as columns
};

struct FormReport {
  std::vector<std::string> basis_labels;
  Mat G;  // int f_i f_j
  Mat B;  // int f_i J f_j, weak form
  int rank = 0;
  int neg_inertia = 0;
  Vec reduced_eigenvalues;
  double rank_tol = 0.0;
  double zero_tol = 0.0;
};

// Everything the checks below share for one mesh: operators, the ground
// state, the Morse index, and nodal coordinate and Gauss-map functions.
struct MeshAnalysis {
  std::shared_ptr<const SurfaceMesh> mesh;
  OperatorSet ops;
  double zero_tol = 0.0;
  double lambda1 = 0.0;
  Vec rho;
  int index = 0;
  Mat L;  // column a: l_{e_a}
  Mat F;  // column a: f_{e_a}
  double area = 0.0;
  double integral_Asq = 0.0;
  double max_Asq = 0.0;

  int n() const { return ops.n; }
  int ambient() const { return ops.n + 2; }
};

MeshAnalysis analyze(SurfaceMesh mesh, std::optional<double> zero_tol = std::nullopt);

FormReport evaluate_form(const MeshAnalysis& analysis, const FunctionSet& functions, double rank_tol = 1e-8);

struct IdentityResiduals {
  Vec mean_l;         // int l_{e_a}
  Vec curvature_f;    // int |A|^2 f_{e_a}
  Mat cross;          // (a, b): int (|A|^2 - n) l_{e_a} f_{e_b}
  double max_mean_l = 0.0;
  double max_curvature_f = 0.0;
  double max_cross = 0.0;
  double area = 0.0;
};

IdentityResiduals gauss_identities(const MeshAnalysis& analysis);

// {rho, f_{e_1..e_{n+2}}, l_{e_1..e_{n+2}}}
FunctionSet gamma_basis(const MeshAnalysis& analysis);

struct LemmaReport {
  int rank = 0;
  int expected = 0;  // 2n + 5
  bool full_rank = false;
  FormReport form;
};

LemmaReport lemma_check(const MeshAnalysis& analysis, double rank_tol = 1e-8);

struct V0Choice {
  Vec v0;
  double value = 0.0;     // smallest eigenvalue of Q = int (|A|^2 - n delta2) f_{v0}^2
  Mat Q;
  double integral = 0.0;  // int (|A|^2 - n delta2)
  double trace_residual = 0.0;  // |trace Q - integral|, relative
};

// Q is integrated with the analytic normals stored at the quadrature points.
V0Choice choose_v0(const MeshAnalysis& analysis, double delta2);

enum class Verdict { NegativeDefinite, NotNegativeDefinite, HypothesesNotMet, ExcludedGeodesic };

const char* to_string(Verdict verdict);

struct TheoremReport {
  double delta1 = 0.0, delta2 = 0.0;
  bool hyp_integral = false;
  bool hyp_pointwise = false;
  bool geodesic_flag = false;
  Vec v0;
  double v0_value = 0.0;
  double gamma0_max_eig = 0.0;
  Verdict verdict = Verdict::HypothesesNotMet;
  int rank = 0;
  int neg_inertia = 0;
  int spectral_index = 0;
  bool rayleigh_ritz_ok = false;
  double integral_Asq = 0.0;
  double area = 0.0;
  double max_Asq = 0.0;
  FormReport form;  // on {rho, l_{e_1..e_{n+2}}, f_{v0}}
};

TheoremReport theorem_check(const MeshAnalysis& analysis, double delta1, double delta2, double rank_tol = 1e-8);

struct ChainRecord {
  double a = 0.0, b = 0.0;
  Vec w;
  double delta1 = 0.0, delta2 = 0.0;
  Vec v0;
  double L0 = 0.0;   // f^T (K - W) f
  double L0e = 0.0;  // first expansion line
  double L1 = 0.0;   // lambda_1 replaced by -2n
  double L2 = 0.0;   // completed squares
  std::array<double, 4> terms{};  // the four summands of L2
  double direct_residual = 0.0;    // |L0 - L0e|
  double identity_residual = 0.0;  // |L1 - L2|
  double scale = 0.0;              // sum of |contributing integrals|
};

ChainRecord chain_verify(const MeshAnalysis& analysis, double a, double b, const Vec& w, double delta1,
                         double delta2);

// count draws with a, b, w ~ N(0, 1) and delta1 ~ U(0.05, 0.95) from
// std::mt19937_64(seed).
std::vector<ChainRecord> chain_draws(const MeshAnalysis& analysis, int count, std::uint64_t seed = 0);

struct ConjectureReport {
  FormReport form;  // on {1, f_{e_1..e_{n+2}}, l_{e_1..e_{n+2}}}
  int target = 0;   // n + 4
  bool meets_target = false;
};

ConjectureReport conjecture_probe(const MeshAnalysis& analysis, double rank_tol = 1e-8);

// int |A|^2 / (n |M|)
double ratio_report(const SurfaceMesh& mesh);

}  // namespace mhs

#endif  // MHS_PAPERLAB_HPP

#include "mhs/paperlab.hpp"

#include <cmath>
#include <random>

#include "mhs/errors.hpp"

namespace mhs {
namespace {

std::string axis_label(const char* prefix, int a) { return std::string(prefix) + "_e" + std::to_string(a + 1); }

FunctionSet gamma0_basis(const MeshAnalysis& analysis, const Vec& v0) {
  FunctionSet set;
  const int d = analysis.ambient();
  set.values.resize(analysis.rho.size(), d + 2);
  set.values.col(0) = analysis.rho;
  set.labels.push_back("rho");
  for (int a = 0; a < d; ++a) {
    set.values.col(1 + a) = analysis.L.col(a);
    set.labels.push_back(axis_label("l", a));
  }
  set.values.col(d + 1) = analysis.F * v0;
  set.labels.push_back("f_v0");
  return set;
}

}  // namespace

MeshAnalysis analyze(SurfaceMesh mesh, std::optional<double> zero_tol) {
  MeshAnalysis out;
  out.zero_tol = zero_tol.value_or(default_zero_tol(mesh));
  auto shared = std::make_shared<const SurfaceMesh>(std::move(mesh));
  out.mesh = shared;
  out.ops = assemble(*shared);
  const GroundState ground = first_eigfunction(out.ops);
  out.lambda1 = ground.lambda1;
  out.rho = ground.rho;
  out.index = inertia_below(out.ops, -out.zero_tol);
  out.L = shared->vertices.transpose();
  out.F = shared->vertex_normals.transpose();
  out.area = shared->area();
  out.integral_Asq = shared->quad_weights.dot(shared->quad_Asq);
  out.max_Asq = std::max(shared->quad_Asq.maxCoeff(), shared->vertex_Asq.maxCoeff());
  return out;
}

FormReport evaluate_form(const MeshAnalysis& analysis, const FunctionSet& functions, double rank_tol) {
  FormReport report;
  report.basis_labels = functions.labels;
  report.G = functions.values.transpose() * (analysis.ops.Mm * functions.values);
  report.B = functions.values.transpose() * (analysis.ops.stability() * functions.values);
  report.rank_tol = rank_tol;
  report.zero_tol = analysis.zero_tol;
  const PencilInertia inertia = pencil_inertia(report.B, report.G, rank_tol, analysis.zero_tol);
  report.rank = inertia.rank;
  report.neg_inertia = inertia.neg_inertia;
  report.reduced_eigenvalues = inertia.eigenvalues;
  return report;
}

IdentityResiduals gauss_identities(const MeshAnalysis& analysis) {
  const OperatorSet& ops = analysis.ops;
  const Vec ones = Vec::Ones(ops.Mm.rows());
  const SpMat curvature = ops.curvature_mass();
  const SpMat shifted = ops.W - 2.0 * ops.n * ops.Mm;  // weight |A|^2 - n
  IdentityResiduals out;
  out.area = analysis.area;
  out.mean_l = analysis.L.transpose() * (ops.Mm * ones);
  out.curvature_f = analysis.F.transpose() * (curvature * ones);
  out.cross = analysis.L.transpose() * (shifted * analysis.F);
  out.max_mean_l = out.mean_l.cwiseAbs().maxCoeff();
  out.max_curvature_f = out.curvature_f.cwiseAbs().maxCoeff();
  out.max_cross = out.cross.cwiseAbs().maxCoeff();
  return out;
}

FunctionSet gamma_basis(const MeshAnalysis& analysis) {
  FunctionSet set;
  const int d = analysis.ambient();
  set.values.resize(analysis.rho.size(), 2 * d + 1);
  set.values.col(0) = analysis.rho;
  set.labels.push_back("rho");
  for (int a = 0; a < d; ++a) {
    set.values.col(1 + a) = analysis.F.col(a);
    set.labels.push_back(axis_label("f", a));
  }
  for (int a = 0; a < d; ++a) {
    set.values.col(1 + d + a) = analysis.L.col(a);
    set.labels.push_back(axis_label("l", a));
  }
  return set;
}

LemmaReport lemma_check(const MeshAnalysis& analysis, double rank_tol) {
  LemmaReport out;
  out.form = evaluate_form(analysis, gamma_basis(analysis), rank_tol);
  out.rank = out.form.rank;
  out.expected = 2 * analysis.n() + 5;
  out.full_rank = out.rank == out.expected;
  return out;
}

V0Choice choose_v0(const MeshAnalysis& analysis, double delta2) {
  if (!(delta2 > 0.0 && delta2 < 1.0)) throw Error(ErrorKind::InvalidParameter, "delta2 must lie in (0, 1)");
  const SurfaceMesh& mesh = *analysis.mesh;
  const int d = analysis.ambient();
  const double shift = analysis.n() * delta2;
  V0Choice out;
  out.Q = Mat::Zero(d, d);
  double magnitude = 0.0;
  for (Eigen::Index k = 0; k < mesh.quad_weights.size(); ++k) {
    const double weight = mesh.quad_weights[k] * (mesh.quad_Asq[k] - shift);
    out.Q.noalias() += weight * mesh.quad_normals.col(k) * mesh.quad_normals.col(k).transpose();
    out.integral += weight;
    magnitude += std::abs(weight);
  }
  out.Q = 0.5 * (out.Q + out.Q.transpose()).eval();
  out.trace_residual = std::abs(out.Q.trace() - out.integral) / std::max(magnitude, 1e-300);
  Eigen::SelfAdjointEigenSolver<Mat> eig(out.Q);
  out.value = eig.eigenvalues()[0];
  out.v0 = eig.eigenvectors().col(0);
  Eigen::Index lead;
  out.v0.cwiseAbs().maxCoeff(&lead);
  if (out.v0[lead] < 0.0) out.v0 = -out.v0;
  return out;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::NegativeDefinite: return "negative_definite";
    case Verdict::NotNegativeDefinite: return "not_negative_definite";
    case Verdict::HypothesesNotMet: return "hypotheses_not_met";
    case Verdict::ExcludedGeodesic: return "excluded_geodesic";
  }
  return "unknown";
}

TheoremReport theorem_check(const MeshAnalysis& analysis, double delta1, double delta2, double rank_tol) {
  if (!(delta1 > 0.0 && delta2 > 0.0) || std::abs(delta1 + delta2 - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidParameter, "delta1 and delta2 must be positive with delta1 + delta2 = 1");
  const int n = analysis.n();
  TheoremReport out;
  out.delta1 = delta1;
  out.delta2 = delta2;
  out.area = analysis.area;
  out.integral_Asq = analysis.integral_Asq;
  out.max_Asq = analysis.max_Asq;
  const double slack = 1e-10;
  const double integral_bound = delta2 * n * analysis.area;
  const double pointwise_bound = 2.0 * n * delta1;
  out.hyp_integral = analysis.integral_Asq <= integral_bound + slack * std::max(1.0, integral_bound);
  out.hyp_pointwise = analysis.max_Asq <= pointwise_bound + slack * std::max(1.0, pointwise_bound);
  out.geodesic_flag = analysis.max_Asq <= 1e-12;

  const V0Choice choice = choose_v0(analysis, delta2);
  out.v0 = choice.v0;
  out.v0_value = choice.value;
  out.form = evaluate_form(analysis, gamma0_basis(analysis, choice.v0), rank_tol);
  out.rank = out.form.rank;
  out.neg_inertia = out.form.neg_inertia;
  out.gamma0_max_eig = out.form.reduced_eigenvalues.size() ? out.form.reduced_eigenvalues.maxCoeff() : 0.0;
  out.spectral_index = analysis.index;
  out.rayleigh_ritz_ok = out.neg_inertia <= out.spectral_index;

  if (out.geodesic_flag) {
    out.verdict = Verdict::ExcludedGeodesic;
  } else if (!(out.hyp_integral && out.hyp_pointwise)) {
    out.verdict = Verdict::HypothesesNotMet;
  } else if (out.rank == n + 4 && out.gamma0_max_eig < -analysis.zero_tol) {
    out.verdict = Verdict::NegativeDefinite;
  } else {
    out.verdict = Verdict::NotNegativeDefinite;
  }
  return out;
}

ChainRecord chain_verify(const MeshAnalysis& analysis, double a, double b, const Vec& w, double delta1,
                         double delta2) {
  if (!(delta1 > 0.0 && delta2 > 0.0) || std::abs(delta1 + delta2 - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidParameter, "delta1 and delta2 must be positive with delta1 + delta2 = 1");
  if (w.size() != analysis.ambient()) throw Error(ErrorKind::InvalidParameter, "w has the wrong dimension");
  if (a == 0.0 && b == 0.0 && w.isZero(0.0)) throw Error(ErrorKind::InvalidParameter, "(a, b, w) must be nonzero");
  const OperatorSet& ops = analysis.ops;
  const double n = ops.n;
  const SpMat curvature = ops.curvature_mass();
  const SpMat stability = ops.stability();

  ChainRecord out;
  out.a = a;
  out.b = b;
  out.w = w;
  out.delta1 = delta1;
  out.delta2 = delta2;
  out.v0 = choose_v0(analysis, delta2).v0;

  const Vec& rho = analysis.rho;
  const Vec l = analysis.L * w;
  const Vec fv = analysis.F * out.v0;
  const Vec f = a * rho + l + b * fv;
  auto mass = [&](const Vec& x, const Vec& y) { return x.dot(ops.Mm * y); };
  auto weighted = [&](const Vec& x, const Vec& y) { return x.dot(curvature * y); };

  out.L0 = f.dot(stability * f);

  const double rho2 = mass(rho, rho);
  const std::array<double, 5> line1{a * a * analysis.lambda1 * rho2, -weighted(l, l), -n * b * b * mass(fv, fv),
                                    -2.0 * b * weighted(l, fv), -2.0 * a * weighted(rho, l)};
  const double replaced = -2.0 * a * a * n * rho2;
  out.L0e = line1[0] + line1[1] + line1[2] + line1[3] + line1[4];
  out.L1 = out.L0e - line1[0] + replaced;

  const double s1 = std::sqrt(delta1), s2 = std::sqrt(delta2);
  const Vec square1 = a * rho / s1 + s1 * l;
  const Vec square2 = b * fv / s2 + s2 * l;
  out.terms[0] = a * a * (weighted(rho, rho) / delta1 - 2.0 * n * rho2);
  out.terms[1] = -weighted(square1, square1);
  out.terms[2] = -weighted(square2, square2);
  out.terms[3] = b * b * (weighted(fv, fv) / delta2 - n * mass(fv, fv));
  out.L2 = out.terms[0] + out.terms[1] + out.terms[2] + out.terms[3];

  out.direct_residual = std::abs(out.L0 - out.L0e);
  out.identity_residual = std::abs(out.L1 - out.L2);
  out.scale = std::abs(out.L0) + std::abs(replaced);
  for (double t : line1) out.scale += std::abs(t);
  for (double t : out.terms) out.scale += std::abs(t);
  return out;
}

std::vector<ChainRecord> chain_draws(const MeshAnalysis& analysis, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> split(0.05, 0.95);
  std::vector<ChainRecord> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const double a = gauss(rng), b = gauss(rng);
    Vec w(analysis.ambient());
    for (Eigen::Index k = 0; k < w.size(); ++k) w[k] = gauss(rng);
    const double delta1 = split(rng);
    out.push_back(chain_verify(analysis, a, b, w, delta1, 1.0 - delta1));
  }
  return out;
}

ConjectureReport conjecture_probe(const MeshAnalysis& analysis, double rank_tol) {
  FunctionSet set;
  const int d = analysis.ambient();
  set.values.resize(analysis.rho.size(), 2 * d + 1);
  set.values.col(0).setOnes();
  set.labels.push_back("one");
  for (int a = 0; a < d; ++a) {
    set.values.col(1 + a) = analysis.F.col(a);
    set.labels.push_back(axis_label("f", a));
  }
  for (int a = 0; a < d; ++a) {
    set.values.col(1 + d + a) = analysis.L.col(a);
    set.labels.push_back(axis_label("l", a));
  }
  ConjectureReport out;
  out.form = evaluate_form(analysis, set, rank_tol);
  out.target = analysis.n() + 4;
  out.meets_target = out.form.neg_inertia >= out.target;
  return out;
}

double ratio_report(const SurfaceMesh& mesh) {
  return mesh.quad_weights.dot(mesh.quad_Asq) / (mesh.surface_dim * mesh.area());
}

}  // namespace mhs

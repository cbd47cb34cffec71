#include "mhs/report.hpp"

#include <cmath>

namespace mhs {
namespace {

nlohmann::json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

nlohmann::json labels(const std::vector<std::string>& names) { return nlohmann::json(names); }

}  // namespace

nlohmann::json to_json(const Vec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v[i]));
  return out;
}

nlohmann::json to_json(const Mat& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vec(m.row(i).transpose())));
  return out;
}

nlohmann::json to_json(const SpectrumTable& table) {
  nlohmann::json entries = nlohmann::json::array();
  for (const SpectrumEntry& e : table.entries)
    entries.push_back({{"eigenvalue", e.value},
                       {"multiplicity", e.multiplicity},
                       {"numerator", e.numerator},
                       {"denominator", e.denominator}});
  return {{"entries", std::move(entries)}, {"cutoff", table.cutoff}};
}

nlohmann::json to_json(const JacobiSpectrum& spectrum) {
  return {{"spectrum", to_json(spectrum.table)},
          {"index", spectrum.index},
          {"nullity", spectrum.nullity},
          {"lambda1", spectrum.lambda1}};
}

nlohmann::json to_json(const EigenReport& report) {
  nlohmann::json out{{"eigenvalues", to_json(report.eigenvalues)},
                     {"index", report.index},
                     {"nullity", report.nullity},
                     {"zero_tol", report.zero_tol},
                     {"lambda1", number(report.lambda1)},
                     {"residuals", to_json(report.residuals)},
                     {"method", report.method}};
  return out;
}

nlohmann::json to_json(const SurfaceIntegrals& integrals) {
  return {{"area", integrals.area},
          {"integral_Asq", integrals.integral_Asq},
          {"max_Asq", integrals.max_Asq},
          {"max_trace", integrals.max_trace}};
}

nlohmann::json to_json(const WindowScan& scan) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < scan.energies.size(); ++i)
    rows.push_back({{"energy", scan.energies[i]}, {"rotation", number(scan.rotation[i])}});
  return {{"samples", std::move(rows)}, {"monotone", scan.monotone}, {"lower", scan.lower()}, {"upper", scan.upper()}};
}

nlohmann::json to_json(const FormReport& form) {
  return {{"basis", labels(form.basis_labels)},
          {"G", to_json(form.G)},
          {"B", to_json(form.B)},
          {"rank", form.rank},
          {"neg_inertia", form.neg_inertia},
          {"reduced_eigenvalues", to_json(form.reduced_eigenvalues)},
          {"rank_tol", form.rank_tol},
          {"zero_tol", form.zero_tol}};
}

nlohmann::json to_json(const IdentityResiduals& identities) {
  return {{"mean_l", to_json(identities.mean_l)},
          {"curvature_f", to_json(identities.curvature_f)},
          {"cross", to_json(identities.cross)},
          {"max_mean_l", identities.max_mean_l},
          {"max_curvature_f", identities.max_curvature_f},
          {"max_cross", identities.max_cross},
          {"area", identities.area},
          {"max_relative", std::max({identities.max_mean_l, identities.max_curvature_f, identities.max_cross}) /
                               identities.area}};
}

nlohmann::json to_json(const LemmaReport& lemma) {
  return {{"rank", lemma.rank}, {"expected", lemma.expected}, {"full_rank", lemma.full_rank}, {"form", to_json(lemma.form)}};
}

nlohmann::json to_json(const TheoremReport& theorem) {
  return {{"delta1", theorem.delta1},
          {"delta2", theorem.delta2},
          {"hyp_integral", theorem.hyp_integral},
          {"hyp_pointwise", theorem.hyp_pointwise},
          {"geodesic_flag", theorem.geodesic_flag},
          {"v0", to_json(theorem.v0)},
          {"v0_value", theorem.v0_value},
          {"gamma0_max_eig", number(theorem.gamma0_max_eig)},
          {"verdict", to_string(theorem.verdict)},
          {"rank", theorem.rank},
          {"neg_inertia", theorem.neg_inertia},
          {"spectral_index", theorem.spectral_index},
          {"rayleigh_ritz_ok", theorem.rayleigh_ritz_ok},
          {"integral_Asq", theorem.integral_Asq},
          {"area", theorem.area},
          {"max_Asq", theorem.max_Asq},
          {"form", to_json(theorem.form)}};
}

nlohmann::json to_json(const ChainRecord& record) {
  return {{"a", record.a},
          {"b", record.b},
          {"w", to_json(record.w)},
          {"delta1", record.delta1},
          {"delta2", record.delta2},
          {"v0", to_json(record.v0)},
          {"L0", record.L0},
          {"L0e", record.L0e},
          {"L1", record.L1},
          {"L2", record.L2},
          {"terms", {record.terms[0], record.terms[1], record.terms[2], record.terms[3]}},
          {"direct_residual", record.direct_residual},
          {"identity_residual", record.identity_residual},
          {"scale", record.scale}};
}

nlohmann::json to_json(const ConjectureReport& conjecture) {
  return {{"form", to_json(conjecture.form)},
          {"target", conjecture.target},
          {"meets_target", conjecture.meets_target}};
}

nlohmann::json chain_summary(const MeshAnalysis& analysis, const std::vector<ChainRecord>& records) {
  double identity = 0.0, direct = 0.0, excess = -INFINITY;
  for (const ChainRecord& r : records) {
    identity = std::max(identity, r.identity_residual / r.scale);
    direct = std::max(direct, r.direct_residual / r.scale);
    excess = std::max(excess, (r.L0 - r.L1) / r.scale);
  }
  nlohmann::json draws = nlohmann::json::array();
  for (const ChainRecord& r : records) draws.push_back(to_json(r));
  return {{"lambda1", analysis.lambda1},
          {"ordering_applies", analysis.lambda1 <= -2.0 * analysis.n() + analysis.zero_tol},
          {"max_identity_residual", identity},
          {"max_direct_residual", direct},
          {"max_ordering_excess", number(excess)},
          {"draws", std::move(draws)}};
}

nlohmann::json mesh_summary(const SurfaceMesh& mesh) {
  nlohmann::json out{{"vertices", mesh.vertex_count()},
                     {"triangles", mesh.triangle_count()},
                     {"area", mesh.area()},
                     {"resolution", {mesh.resolution[0], mesh.resolution[1]}},
                     {"analytic_normals", mesh.analytic_normals},
                     {"zero_tol_default", default_zero_tol(mesh)}};
  if (mesh.source_family) out["source"] = {{"family", *mesh.source_family}, {"parameters", mesh.source_parameters}};
  return out;
}

}  // namespace mhs

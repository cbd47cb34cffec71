#include "mhs/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mhs/closedform.hpp"
#include "mhs/errors.hpp"
#include "mhs/fem.hpp"
#include "mhs/geometry.hpp"
#include "mhs/paperlab.hpp"
#include "mhs/report.hpp"
#include "mhs/rotational.hpp"
#include "mhs/spectral.hpp"
#include "mhs/types.hpp"

namespace mhs {
namespace {

struct Output {
  nlohmann::json report;
  std::optional<std::string> csv;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void require(bool ok, ErrorKind kind, const std::string& message) {
  if (!ok) throw Error(kind, message);
}

int default_resolution(const RunConfig& c) { return c.family == "equator" ? 4 : 64; }

int phi_resolution(const RunConfig& c) { return c.resolution.value_or(default_resolution(c)); }

int t_resolution(const RunConfig& c) {
  if (c.resolution_t) return *c.resolution_t;
  return c.family == "otsuki" ? 4 * phi_resolution(c) : phi_resolution(c);
}

void validate_family(const RunConfig& c, bool meshing) {
  if (c.family == "equator") {
    require(c.n >= 1, ErrorKind::InvalidDimension, "--n must be >= 1");
  } else if (c.family == "clifford") {
    require(c.n >= 2 && c.k >= 1 && c.k <= c.n - 1, ErrorKind::InvalidDimension, "clifford needs 1 <= k <= n - 1");
  } else if (c.family == "otsuki") {
    require(c.p >= 1 && c.q >= 1, ErrorKind::InvalidParameter, "--p and --q must be positive");
    require(c.tol > 0.0, ErrorKind::InvalidParameter, "--tol must be positive");
  } else {
    throw Error(ErrorKind::InvalidParameter, "unknown family '" + c.family + "'");
  }
  if (meshing) {
    require(c.family == "otsuki" || c.n == 2, ErrorKind::InvalidDimension, "meshing is available for surfaces in S^3 (n = 2)");
    require(phi_resolution(c) >= 1 && t_resolution(c) >= 1, ErrorKind::InvalidParameter, "--res must be positive");
  }
}

void validate_spectral(const RunConfig& c) {
  require(c.count >= 1, ErrorKind::InvalidParameter, "--count must be >= 1");
  require(!c.zero_tol || *c.zero_tol > 0.0, ErrorKind::InvalidParameter, "--zero-tol must be positive");
}

void validate_delta(const RunConfig& c) {
  require(c.delta1 > 0.0 && c.delta1 < 1.0, ErrorKind::InvalidParameter, "--delta1 must lie in (0, 1)");
}

SurfaceMesh build_mesh(const RunConfig& c) {
  validate_family(c, true);
  if (c.family == "equator") return mesh_sphere(phi_resolution(c));
  if (c.family == "clifford") return mesh_torus(clifford(c.n, c.k), t_resolution(c), phi_resolution(c));
  const ProfileCurve profile = find_otsuki(c.p, c.q, c.tol);
  const int check = std::max(16, phi_resolution(c));
  return mesh_torus(build_surface(profile, std::max(16, t_resolution(c)), check), t_resolution(c), phi_resolution(c));
}

nlohmann::json analysis_header(const MeshAnalysis& analysis) {
  return {{"mesh", mesh_summary(*analysis.mesh)},
          {"zero_tol", analysis.zero_tol},
          {"lambda1", analysis.lambda1},
          {"index", analysis.index},
          {"area", analysis.area},
          {"integral_Asq", analysis.integral_Asq},
          {"max_Asq", analysis.max_Asq}};
}

Output cmd_oracle(const RunConfig& c) {
  validate_family(c, false);
  require(c.family != "otsuki", ErrorKind::InvalidParameter, "oracle families are clifford and equator");
  require(c.cutoff > 0.0, ErrorKind::InvalidParameter, "--cutoff must be positive");
  const JacobiSpectrum spectrum = c.family == "clifford" ? clifford_jacobi(c.n, c.k, c.cutoff) : equator_jacobi(c.n, c.cutoff);
  Output out{to_json(spectrum), std::nullopt};
  if (c.format == "csv") {
    std::ostringstream os;
    os << std::setprecision(17) << "eigenvalue,multiplicity,numerator,denominator\n";
    for (const SpectrumEntry& e : spectrum.table.entries)
      os << e.value << ',' << e.multiplicity << ',' << e.numerator << ',' << e.denominator << '\n';
    out.csv = os.str();
  }
  return out;
}

Output cmd_family(const RunConfig& c) {
  if (c.family == "scan") {
    require(c.samples >= 3, ErrorKind::InvalidParameter, "--samples must be >= 3");
    const WindowScan scan = scan_rotation_window(c.samples);
    Output out{to_json(scan), std::nullopt};
    if (c.format == "csv") {
      std::ostringstream os;
      os << std::setprecision(17) << "energy,rotation\n";
      for (std::size_t i = 0; i < scan.energies.size(); ++i) os << scan.energies[i] << ',' << scan.rotation[i] << '\n';
      out.csv = os.str();
    }
    return out;
  }
  validate_family(c, false);
  require(c.format == "json", ErrorKind::InvalidParameter, "csv output is available for oracle tables and family scan");
  const int res = c.resolution.value_or(32);
  require(res >= 2, ErrorKind::InvalidParameter, "--res must be >= 2");
  if (c.family == "otsuki") {
    const ProfileCurve profile = find_otsuki(c.p, c.q, c.tol);
    const int res_t = c.resolution_t.value_or(4 * res);
    const GeometryFamily family = build_surface(profile, std::max(16, res_t), std::max(16, res));
    nlohmann::json report = profile_to_json(profile);
    report["rotation_number"] = static_cast<double>(c.p) / c.q;
    report["surface"] = to_json(integrate_surface(family, {res_t * c.q, res}));
    return {report, std::nullopt};
  }
  const GeometryFamily family = c.family == "clifford" ? clifford(c.n, c.k) : equator(c.n);
  const SurfaceIntegrals integrals = integrate_surface(family, std::vector<int>(family.surface_dim(), res));
  return {{{"family", family.name()}, {"parameters", family.parameters()}, {"surface", to_json(integrals)}}, std::nullopt};
}

Output cmd_spectrum(const RunConfig& c) {
  validate_spectral(c);
  require(c.format == "json", ErrorKind::InvalidParameter, "spectrum reports are JSON only");
  const SurfaceMesh mesh = build_mesh(c);
  const OperatorSet ops = assemble(mesh);
  const double zero_tol = c.zero_tol.value_or(default_zero_tol(mesh));
  EigenReport eig = lowest_eigs(ops, c.count, zero_tol, false, c.seed);
  // Index and nullity come from the full inertia, not from the computed window.
  const int below = inertia_below(ops, -zero_tol);
  eig.nullity = inertia_below(ops, zero_tol) - below;
  eig.index = below;
  nlohmann::json report = to_json(eig);
  report["mesh"] = mesh_summary(mesh);
  report["ratio"] = ratio_report(mesh);
  return {report, std::nullopt};
}

Output cmd_paper_check(const RunConfig& c) {
  validate_spectral(c);
  validate_delta(c);
  require(c.draws >= 1, ErrorKind::InvalidParameter, "--draws must be >= 1");
  require(c.format == "json", ErrorKind::InvalidParameter, "paper-check reports are JSON only");
  const MeshAnalysis analysis = analyze(build_mesh(c), c.zero_tol);
  nlohmann::json report = analysis_header(analysis);
  report["lemma"] = to_json(lemma_check(analysis));
  report["theorem"] = to_json(theorem_check(analysis, c.delta1, c.delta2()));
  report["chain"] = chain_summary(analysis, chain_draws(analysis, c.draws, c.seed));
  report["conjecture"] = to_json(conjecture_probe(analysis));
  report["identities"] = to_json(gauss_identities(analysis));
  report["ratio"] = ratio_report(*analysis.mesh);
  return {report, std::nullopt};
}

Output cmd_chain(const RunConfig& c) {
  validate_spectral(c);
  require(c.draws >= 1, ErrorKind::InvalidParameter, "--draws must be >= 1");
  require(c.format == "json", ErrorKind::InvalidParameter, "chain reports are JSON only");
  const MeshAnalysis analysis = analyze(build_mesh(c), c.zero_tol);
  nlohmann::json report = analysis_header(analysis);
  report["chain"] = chain_summary(analysis, chain_draws(analysis, c.draws, c.seed));
  return {report, std::nullopt};
}

Output cmd_conjecture(const RunConfig& c) {
  validate_spectral(c);
  require(c.format == "json", ErrorKind::InvalidParameter, "conjecture reports are JSON only");
  const MeshAnalysis analysis = analyze(build_mesh(c), c.zero_tol);
  nlohmann::json report = analysis_header(analysis);
  report["conjecture"] = to_json(conjecture_probe(analysis));
  return {report, std::nullopt};
}

Output cmd_mesh_export(const RunConfig& c) {
  require(c.format == "json", ErrorKind::InvalidParameter, "meshes are exported as JSON");
  return {mesh_to_json(build_mesh(c)), std::nullopt};
}

Output cmd_mesh_import(const RunConfig& c) {
  validate_spectral(c);
  require(c.format == "json", ErrorKind::InvalidParameter, "mesh-import reports are JSON only");
  require(!c.input.empty(), ErrorKind::InvalidParameter, "--in is required");
  std::ifstream file(c.input);
  require(static_cast<bool>(file), ErrorKind::Io, "cannot open '" + c.input + "'");
  nlohmann::json doc;
  try {
    file >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, std::string("malformed mesh JSON: ") + e.what());
  }
  const SurfaceMesh mesh = mesh_from_json(doc);
  const OperatorSet ops = assemble(mesh);
  const double zero_tol = c.zero_tol.value_or(default_zero_tol(mesh));
  EigenReport eig = lowest_eigs(ops, std::min<int>(c.count, static_cast<int>(mesh.vertex_count())), zero_tol, false, c.seed);
  const int below = inertia_below(ops, -zero_tol);
  eig.nullity = inertia_below(ops, zero_tol) - below;
  eig.index = below;
  nlohmann::json report = to_json(eig);
  report["mesh"] = mesh_summary(mesh);
  report["ratio"] = ratio_report(mesh);
  return {report, std::nullopt};
}

Output dispatch(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") throw Error(ErrorKind::InvalidParameter, "--format must be json or csv");
  if (c.subcommand == "oracle") return cmd_oracle(c);
  if (c.subcommand == "family") return cmd_family(c);
  if (c.subcommand == "spectrum") return cmd_spectrum(c);
  if (c.subcommand == "paper-check") return cmd_paper_check(c);
  if (c.subcommand == "chain") return cmd_chain(c);
  if (c.subcommand == "conjecture") return cmd_conjecture(c);
  if (c.subcommand == "mesh-export") return cmd_mesh_export(c);
  if (c.subcommand == "mesh-import") return cmd_mesh_import(c);
  throw Error(ErrorKind::InvalidParameter, "unknown subcommand");
}

void add_family(CLI::App* sub, RunConfig& c) {
  sub->add_option("--n", c.n, "hypersurface dimension");
  sub->add_option("--k", c.k, "Clifford splitting S^k x S^{n-k}");
  sub->add_option("--p", c.p, "Otsuki rotation numerator");
  sub->add_option("--q", c.q, "Otsuki rotation denominator");
  sub->add_option("--tol", c.tol, "Otsuki shooting tolerance");
}

void add_mesh(CLI::App* sub, RunConfig& c) {
  sub->add_option("--family", c.family, "equator | clifford | otsuki")->required();
  add_family(sub, c);
  sub->add_option("--res", c.resolution, "phi cells (torus) or subdivision level (sphere)");
  sub->add_option("--res-t", c.resolution_t, "t cells; per radial period for otsuki (default 4 x res)");
}

void add_spectral(CLI::App* sub, RunConfig& c) {
  sub->add_option("--count", c.count, "number of eigenvalues");
  sub->add_option("--zero-tol", c.zero_tol, "half-width of the zero band");
  sub->add_option("--seed", c.seed, "random seed");
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json out{{"subcommand", c.subcommand},
                     {"family", c.family},
                     {"n", c.n},
                     {"k", c.k},
                     {"p", c.p},
                     {"q", c.q},
                     {"tol", c.tol},
                     {"count", c.count},
                     {"delta1", c.delta1},
                     {"delta2", c.delta2()},
                     {"seed", c.seed},
                     {"draws", c.draws},
                     {"cutoff", c.cutoff},
                     {"samples", c.samples},
                     {"input", c.input},
                     {"output", c.output},
                     {"format", c.format}};
  out["resolution"] = c.resolution ? nlohmann::json(*c.resolution) : nlohmann::json(nullptr);
  out["resolution_t"] = c.resolution_t ? nlohmann::json(*c.resolution_t) : nlohmann::json(nullptr);
  out["zero_tol"] = c.zero_tol ? nlohmann::json(*c.zero_tol) : nlohmann::json(nullptr);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"mhs"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Morse index of minimal hypersurfaces in spheres", "mhs"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CLI::App* oracle = app.add_subcommand("oracle", "closed-form Jacobi spectra");
  oracle->add_option("family", c.family, "clifford | equator")->required();
  add_family(oracle, c);
  oracle->add_option("--cutoff", c.cutoff, "list eigenvalues below this value");

  CLI::App* family = app.add_subcommand("family", "generate and check a geometry family");
  family->add_option("family", c.family, "equator | clifford | otsuki | scan")->required();
  add_family(family, c);
  family->add_option("--res", c.resolution, "sampling grid");
  family->add_option("--res-t", c.resolution_t, "t samples per radial period (otsuki)");
  family->add_option("--samples", c.samples, "energies in the rotation scan");

  CLI::App* spectrum = app.add_subcommand("spectrum", "lowest Jacobi eigenvalues on a mesh");
  add_mesh(spectrum, c);
  add_spectral(spectrum, c);

  CLI::App* check = app.add_subcommand("paper-check", "lemma, theorem, chain, conjecture and identity checks");
  add_mesh(check, c);
  add_spectral(check, c);
  check->add_option("--delta1", c.delta1, "split delta1 in (0, 1); delta2 = 1 - delta1");
  check->add_option("--draws", c.draws, "random chain draws");

  CLI::App* chain = app.add_subcommand("chain", "randomized inequality chain");
  add_mesh(chain, c);
  add_spectral(chain, c);
  chain->add_option("--draws", c.draws, "random chain draws");

  CLI::App* conjecture = app.add_subcommand("conjecture", "negative inertia on {1, f_w, l_v}");
  add_mesh(conjecture, c);
  add_spectral(conjecture, c);

  CLI::App* exporter = app.add_subcommand("mesh-export", "write a mesh as JSON");
  add_mesh(exporter, c);

  CLI::App* importer = app.add_subcommand("mesh-import", "spectrum of a mesh read from JSON");
  importer->add_option("--in", c.input, "mesh JSON file")->required();
  add_spectral(importer, c);

  for (CLI::App* sub : {oracle, family, spectrum, check, chain, conjecture, exporter, importer}) {
    sub->add_option("--out", c.output, "write the report to this file");
    sub->add_option("--format", c.format, "json | csv");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 1;
  }
  for (CLI::App* sub : app.get_subcommands()) c.subcommand = sub->get_name();

  Output result;
  try {
    result = dispatch(c);
  } catch (const Error& e) {
    err << "mhs: " << e.what() << '\n';
    return e.is_validation() ? 1 : 2;
  } catch (const std::exception& e) {
    err << "mhs: " << e.what() << '\n';
    return 2;
  }

  std::string text;
  if (result.csv) {
    text = *result.csv;
  } else {
    nlohmann::json& report = result.report;
    report["config"] = to_json(c);
    report["version"] = kVersion;
    report["timestamp"] = utc_timestamp();
    text = report.dump(2) + "\n";
  }
  if (c.output.empty()) {
    out << text;
    return 0;
  }
  std::ofstream file(c.output);
  if (!(file << text)) {
    err << "mhs: cannot write '" << c.output << "'\n";
    return 1;
  }
  return 0;
}

}  // namespace mhs

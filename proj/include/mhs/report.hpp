#ifndef MHS_REPORT_HPP
#define MHS_REPORT_HPP

#include <json.hpp>

#include "mhs/closedform.hpp"
#include "mhs/geometry.hpp"
#include "mhs/paperlab.hpp"
#include "mhs/rotational.hpp"
#include "mhs/spectral.hpp"

namespace mhs {

// JSON views of the library's result types. Matrices serialize row-major as
// nested arrays; non-finite values become null.

nlohmann::json to_json(const Vec& v);
nlohmann::json to_json(const Mat& m);
nlohmann::json to_json(const SpectrumTable& table);
nlohmann::json to_json(const JacobiSpectrum& spectrum);
nlohmann::json to_json(const EigenReport& report);
nlohmann::json to_json(const SurfaceIntegrals& integrals);
nlohmann::json to_json(const WindowScan& scan);
nlohmann::json to_json(const FormReport& form);
nlohmann::json to_json(const IdentityResiduals& identities);
nlohmann::json to_json(const LemmaReport& lemma);
nlohmann::json to_json(const TheoremReport& theorem);
nlohmann::json to_json(const ChainRecord& record);
nlohmann::json to_json(const ConjectureReport& conjecture);

// Aggregate over a batch of chain draws: worst residuals and orderings.
nlohmann::json chain_summary(const MeshAnalysis& analysis, const std::vector<ChainRecord>& records);

// Mesh size, area and default tolerances attached to every mesh-based report.
nlohmann::json mesh_summary(const SurfaceMesh& mesh);

}  // namespace mhs

#endif  // MHS_REPORT_HPP

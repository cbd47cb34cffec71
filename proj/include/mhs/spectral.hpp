#ifndef MHS_SPECTRAL_HPP
#define MHS_SPECTRAL_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "mhs/fem.hpp"
#include "mhs/types.hpp"

namespace mhs {

// Lowest eigenpairs of the pencil (K - W, Mm).
struct EigenReport {
  Vec eigenvalues;  // ascending
  int index = 0;    // eigenvalues < -zero_tol
  int nullity = 0;  // |eigenvalue| <= zero_tol
  double zero_tol = 0.0;
  double lambda1 = 0.0;
  Vec residuals;    // |(K - W) x - lambda Mm x|_{Mm^-1} for Mm-unit x
  std::optional<Mat> vectors;  // Mm-orthonormal columns
  std::string method;
};

// 0.05 at 64 x 64 (or icosphere level 4), scaled with h^2.
double default_zero_tol(const SurfaceMesh& mesh);

// Shift-invert block Krylov with Rayleigh-Ritz; every returned pair satisfies
// the residual bound 1e-8 or the call throws NumericalFailure.
EigenReport lowest_eigs(const OperatorSet& ops, int count, double zero_tol, bool want_vectors = false,
                        std::uint64_t seed = 0);

// Dense generalized solver, for small systems and as a test oracle.
EigenReport dense_lowest_eigs(const OperatorSet& ops, int count, double zero_tol, bool want_vectors = false);

// Number of pencil eigenvalues strictly below shift, from the signature of an
// LDL^T factorization of K - W - shift Mm (Sylvester's law of inertia).
int inertia_below(const OperatorSet& ops, double shift);

struct GroundState {
  double lambda1;
  Vec rho;  // Mm-unit, strictly positive
};

GroundState first_eigfunction(const OperatorSet& ops);

// Dual-norm residual |(K - W) x - lambda Mm x|_{Mm^-1} / |x|_{Mm}.
double pencil_residual(const OperatorSet& ops, double lambda, const Vec& x);

}  // namespace mhs

#endif  // MHS_SPECTRAL_HPP

#ifndef MHS_CLOSEDFORM_HPP
#define MHS_CLOSEDFORM_HPP

#include <cstdint>
#include <vector>

namespace mhs {

struct SpectrumEntry {
  double value;
  std::int64_t multiplicity;
  // value == numerator / denominator exactly; used for merging and sign tests.
  std::int64_t numerator;
  std::int64_t denominator;
};

// Eigenvalues strictly below cutoff, ascending, each listed once with its
// multiplicity. Complete below cutoff.
struct SpectrumTable {
  std::vector<SpectrumEntry> entries;
  double cutoff;
};

struct JacobiSpectrum {
  SpectrumTable table;
  std::int64_t index;
  std::int64_t nullity;
  double lambda1;
};

// Dimension of degree-j harmonic homogeneous polynomials in m+1 variables,
// i.e. the multiplicity of j(j+m-1) in the spectrum of -Laplacian on S^m.
std::int64_t harmonic_dimension(int m, int j);

// -Laplacian spectrum of the unit S^m for degrees 0..jmax.
SpectrumTable sphere_spectrum(int m, int jmax);

// Jacobi operator -Laplacian - n - |A|^2 on the Clifford product
// S^k(sqrt(k/n)) x S^{n-k}(sqrt((n-k)/n)).
JacobiSpectrum clifford_jacobi(int n, int k, double cutoff = 10.0);

// Jacobi operator -Laplacian - n on a totally geodesic S^n.
JacobiSpectrum equator_jacobi(int n, double cutoff = 10.0);

}  // namespace mhs

#endif  // MHS_CLOSEDFORM_HPP

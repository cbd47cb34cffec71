#include "mhs/closedform.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "mhs/errors.hpp"

namespace mhs {
namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // exact at every step: result * (n - k + i) is divisible by i
    result = result * (n - k + i) / i;
  }
  return result;
}

// Merges exact numerators over a common denominator into a sorted table.
SpectrumTable to_table(const std::map<std::int64_t, std::int64_t>& counts,
                       std::int64_t denominator, double cutoff) {
  SpectrumTable table{{}, cutoff};
  std::int64_t g = 0;
  for (const auto& [num, mult] : counts) {
    const double value = static_cast<double>(num) / static_cast<double>(denominator);
    if (value >= cutoff) continue;
    g = std::gcd(num, denominator);
    if (g == 0) g = 1;
    table.entries.push_back({value, mult, num / g, denominator / g});
  }
  return table;
}

JacobiSpectrum summarize(std::map<std::int64_t, std::int64_t> counts, std::int64_t denominator,
                         double cutoff) {
  JacobiSpectrum out;
  out.index = 0;
  out.nullity = 0;
  for (const auto& [num, mult] : counts) {
    if (num < 0) out.index += mult;
    if (num == 0) out.nullity += mult;
  }
  out.lambda1 = static_cast<double>(counts.begin()->first) / static_cast<double>(denominator);
  out.table = to_table(counts, denominator, cutoff);
  return out;
}

}  // namespace

std::int64_t harmonic_dimension(int m, int j) {
  if (m < 1) throw Error(ErrorKind::InvalidDimension, "sphere dimension must be >= 1");
  if (j < 0) return 0;
  // polynomials of degree j in m+1 variables minus those of degree j-2
  return binomial(j + m, m) - binomial(j + m - 2, m);
}

SpectrumTable sphere_spectrum(int m, int jmax) {
  if (m < 1) throw Error(ErrorKind::InvalidDimension, "sphere dimension must be >= 1");
  if (jmax < 0) throw Error(ErrorKind::InvalidParameter, "jmax must be >= 0");
  SpectrumTable table;
  for (int j = 0; j <= jmax; ++j) {
    const std::int64_t ev = static_cast<std::int64_t>(j) * (j + m - 1);
    table.entries.push_back({static_cast<double>(ev), harmonic_dimension(m, j), ev, 1});
  }
  // every eigenvalue of degree <= jmax, and nothing in between is missing
  table.cutoff = static_cast<double>(static_cast<std::int64_t>(jmax + 1) * (jmax + m));
  return table;
}

JacobiSpectrum clifford_jacobi(int n, int k, double cutoff) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "n must be >= 2");
  if (k < 1 || k > n - 1) throw Error(ErrorKind::InvalidParameter, "k must satisfy 1 <= k <= n-1");
  // Eigenvalue n/k * j(j+k-1) + n/(n-k) * m(m+n-k-1) - 2n, scaled by k(n-k).
  const std::int64_t den = static_cast<std::int64_t>(k) * (n - k);
  const double bound = std::max(cutoff, 1.0);
  auto first = [&](std::int64_t j) { return static_cast<std::int64_t>(n) * (n - k) * j * (j + k - 1); };
  auto second = [&](std::int64_t m) { return static_cast<std::int64_t>(n) * k * m * (m + n - k - 1); };
  const std::int64_t shift = 2LL * n * den;
  std::map<std::int64_t, std::int64_t> counts;
  // each factor term is nonnegative and increasing in its degree, so the
  // loops stop exactly at the first degree whose term alone passes the bound
  for (std::int64_t j = 0; static_cast<double>(first(j) - shift) < bound * den; ++j) {
    for (std::int64_t m = 0; static_cast<double>(first(j) + second(m) - shift) < bound * den; ++m) {
      counts[first(j) + second(m) - shift] +=
          harmonic_dimension(k, static_cast<int>(j)) * harmonic_dimension(n - k, static_cast<int>(m));
    }
  }
  return summarize(std::move(counts), den, cutoff);
}

JacobiSpectrum equator_jacobi(int n, double cutoff) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "n must be >= 2");
  const double bound = std::max(cutoff, 1.0);
  std::map<std::int64_t, std::int64_t> counts;
  for (std::int64_t j = 0; static_cast<double>(j * (j + n - 1) - n) < bound; ++j) {
    counts[j * (j + n - 1) - n] += harmonic_dimension(n, static_cast<int>(j));
  }
  return summarize(std::move(counts), 1, cutoff);
}

}  // namespace mhs

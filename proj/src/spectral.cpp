#include "mhs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SparseCholesky>

#include "mhs/errors.hpp"

namespace mhs {
namespace {

constexpr double kResidualTol = 1e-9;
constexpr int kBlock = 8;

void classify(EigenReport& report, double zero_tol) {
  report.zero_tol = zero_tol;
  report.index = 0;
  report.nullity = 0;
  for (double ev : report.eigenvalues) {
    if (ev < -zero_tol) ++report.index;
    else if (ev <= zero_tol) ++report.nullity;
  }
  report.lambda1 = report.eigenvalues.size() ? report.eigenvalues[0] : 0.0;
}

void check_count(const OperatorSet& ops, int count) {
  if (count < 1) throw Error(ErrorKind::InvalidParameter, "count must be >= 1");
  if (count > ops.K.rows()) throw Error(ErrorKind::InvalidParameter, "count exceeds the matrix size");
}

class MassNorm {
 public:
  explicit MassNorm(const SpMat& M) : solver_(M) {
    if (solver_.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "mass matrix is not positive definite");
  }
  double dual(const Vec& r) const { return std::sqrt(std::max(0.0, r.dot(solver_.solve(r)))); }

 private:
  Eigen::SimplicialLLT<SpMat> solver_;
};

}  // namespace

double default_zero_tol(const SurfaceMesh& mesh) {
  if (mesh.source_family == "equator" && mesh.resolution[1] == 0 && mesh.resolution[0] > 0)
    return 0.05 * std::pow(4.0, 4 - mesh.resolution[0]);
  if (mesh.resolution[0] > 0 && mesh.resolution[1] > 0) {
    const double r = std::min(mesh.resolution[0], mesh.resolution[1]);
    return 0.05 * (64.0 / r) * (64.0 / r);
  }
  // imported meshes: compare the mean edge to the 64 x 64 Clifford grid edge
  double total = 0.0;
  for (Eigen::Index f = 0; f < mesh.triangle_count(); ++f)
    for (int c = 0; c < 3; ++c)
      total += (mesh.vertices.col(mesh.triangles(c, f)) - mesh.vertices.col(mesh.triangles((c + 1) % 3, f))).norm();
  const double h = total / (3.0 * static_cast<double>(mesh.triangle_count()));
  const double h_ref = 2.0 * std::sin(M_PI / 64.0) / std::sqrt(2.0);
  return 0.05 * (h / h_ref) * (h / h_ref);
}

double pencil_residual(const OperatorSet& ops, double lambda, const Vec& x) {
  const MassNorm norm(ops.Mm);
  const Vec r = ops.K * x - ops.W * x - lambda * (ops.Mm * x);
  return norm.dual(r) / std::sqrt(x.dot(ops.Mm * x));
}

EigenReport dense_lowest_eigs(const OperatorSet& ops, int count, double zero_tol, bool want_vectors) {
  check_count(ops, count);
  const Mat A = Mat(ops.K) - Mat(ops.W);
  const Mat M = Mat(ops.Mm);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> eig(A, M);
  if (eig.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "dense generalized eigensolver failed");
  EigenReport report;
  report.method = "dense";
  report.eigenvalues = eig.eigenvalues().head(count);
  const Mat X = eig.eigenvectors().leftCols(count);
  const MassNorm norm(ops.Mm);
  report.residuals.resize(count);
  for (int i = 0; i < count; ++i) {
    const Vec x = X.col(i);
    report.residuals[i] = norm.dual(A * x - report.eigenvalues[i] * (M * x)) / std::sqrt(x.dot(M * x));
  }
  if (want_vectors) report.vectors = X;
  classify(report, zero_tol);
  return report;
}

EigenReport lowest_eigs(const OperatorSet& ops, int count, double zero_tol, bool want_vectors, std::uint64_t seed) {
  check_count(ops, count);
  const Eigen::Index N = ops.K.rows();
  const SpMat A = ops.stability();
  const SpMat& M = ops.Mm;

  // W <= potential_max Mm, so any shift below -potential_max is below the spectrum
  double sigma = -(ops.potential_max + 1.0);
  Eigen::SimplicialLLT<SpMat> shifted;
  for (int attempt = 0;; ++attempt) {
    shifted.compute(A - sigma * M);
    if (shifted.info() == Eigen::Success) break;
    if (attempt == 8) throw Error(ErrorKind::NumericalFailure, "shifted pencil could not be factorized");
    sigma = 2.0 * sigma - 1.0;
  }
  const MassNorm norm(M);

  const Eigen::Index block = std::min<Eigen::Index>(kBlock, N);
  const Eigen::Index max_basis = std::min<Eigen::Index>(N, std::max<Eigen::Index>(40 * count + 200, 400));
  Mat V(N, 0), MV(N, 0), CV(N, 0);
  Mat H(0, 0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_block = [&](Eigen::Index cols) {
    Mat Z(N, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < N; ++i) Z(i, j) = gauss(rng);
    return Z;
  };

  Mat Z = random_block(block);
  EigenReport report;
  report.method = "shift-invert block Krylov";
  while (true) {
    // M-orthogonalize against the basis (twice), then within the block
    for (int pass = 0; pass < 2 && V.cols() > 0; ++pass) Z -= V * (MV.transpose() * Z);
    std::vector<Vec> kept;
    for (Eigen::Index j = 0; j < Z.cols(); ++j) {
      Vec z = Z.col(j);
      const double before = std::sqrt(z.dot(M * z));
      for (int pass = 0; pass < 2; ++pass) {
        const Vec Mz = M * z;
        Vec correction = Vec::Zero(N);
        for (const Vec& k : kept) correction += k.dot(Mz) * k;
        z -= correction;
        if (V.cols() > 0) z -= V * (MV.transpose() * z);
      }
      const double after = std::sqrt(z.dot(M * z));
      if (after > 1e-10 * before && after > 0.0) kept.push_back(z / after);
    }
    if (kept.empty()) {
      if (V.cols() >= N) break;
      Z = random_block(block);
      continue;
    }
    const Eigen::Index old = V.cols(), add = static_cast<Eigen::Index>(kept.size());
    V.conservativeResize(N, old + add);
    MV.conservativeResize(N, old + add);
    CV.conservativeResize(N, old + add);
    for (Eigen::Index j = 0; j < add; ++j) {
      V.col(old + j) = kept[j];
      MV.col(old + j) = M * kept[j];
      CV.col(old + j) = shifted.solve(MV.col(old + j));
    }
    // H = V^T M C V, grown by the new block row and column
    H.conservativeResize(old + add, old + add);
    H.rightCols(add) = MV.transpose() * CV.rightCols(add);
    H.bottomRows(add) = H.rightCols(add).transpose();

    if (V.cols() >= std::min<Eigen::Index>(N, count + block)) {
      Eigen::SelfAdjointEigenSolver<Mat> rr(0.5 * (H + H.transpose()));
      const Eigen::Index m = V.cols();
      // largest theta = lowest lambda
      Vec lambdas(count);
      Mat X(N, count);
      bool converged = true;
      Vec residuals(count);
      for (int i = 0; i < count; ++i) {
        const double theta = rr.eigenvalues()[m - 1 - i];
        lambdas[i] = sigma + 1.0 / theta;
        X.col(i) = V * rr.eigenvectors().col(m - 1 - i);
      }
      for (int i = 0; i < count; ++i) {
        const Vec x = X.col(i);
        residuals[i] = norm.dual(A * x - lambdas[i] * (M * x)) / std::sqrt(x.dot(M * x));
        if (!(residuals[i] <= kResidualTol)) {
          converged = false;
          break;
        }
      }
      if (converged || m >= N) {
        if (!converged) {
          for (int i = 0; i < count; ++i) {
            const Vec x = X.col(i);
            residuals[i] = norm.dual(A * x - lambdas[i] * (M * x)) / std::sqrt(x.dot(M * x));
          }
          if (residuals.maxCoeff() > 1e-8)
            throw Error(ErrorKind::NumericalFailure, "eigenpairs did not reach the residual bound");
        }
        report.eigenvalues = lambdas;
        report.residuals = residuals;
        if (want_vectors) report.vectors = X;
        break;
      }
      if (m >= max_basis) throw Error(ErrorKind::NumericalFailure, "Krylov basis exhausted before convergence");
    }
    Z = CV.rightCols(add);
  }
  classify(report, zero_tol);
  return report;
}

int inertia_below(const OperatorSet& ops, double shift) {
  const SpMat A = ops.stability();
  const double jitter = 1e-9 * std::max(1.0, std::abs(shift));
  for (int attempt = 0; attempt < 7; ++attempt) {
    // shift, shift + j, shift - j, shift + 2j, ...
    const double s = shift + jitter * ((attempt + 1) / 2) * (attempt % 2 == 1 ? 1.0 : -1.0);
    Eigen::SimplicialLDLT<SpMat> ldlt(A - s * ops.Mm);
    if (ldlt.info() != Eigen::Success) continue;
    const Vec d = ldlt.vectorD();
    const double scale = d.cwiseAbs().maxCoeff();
    if (!(d.cwiseAbs().minCoeff() > 1e-13 * scale)) continue;
    return static_cast<int>((d.array() < 0.0).count());
  }
  throw Error(ErrorKind::ShiftRetryExhausted, "shifted pencil stays singular near " + std::to_string(shift));
}

GroundState first_eigfunction(const OperatorSet& ops) {
  const int count = std::min<int>(2, static_cast<int>(ops.K.rows()));
  const EigenReport report = lowest_eigs(ops, count, 0.0, true);
  if (count == 2 && std::abs(report.eigenvalues[1] - report.eigenvalues[0]) < 1e-8 * (1.0 + std::abs(report.eigenvalues[0])))
    throw Error(ErrorKind::NotSimple, "lowest eigenvalue is not simple");
  Vec rho = report.vectors->col(0);
  rho /= std::sqrt(rho.dot(ops.Mm * rho));
  if ((ops.Mm * rho).sum() < 0.0) rho = -rho;
  if (!(rho.minCoeff() > 0.0))
    throw Error(ErrorKind::NotSimple, "ground state changes sign; lowest eigenvalue is degenerate or under-resolved");
  return {report.eigenvalues[0], rho};
}

}  // namespace mhs

#include "mhs/geometry.hpp"

#include <cmath>
#include <numbers>

#include "mhs/errors.hpp"

namespace mhs {

bool ParamDomain::fully_periodic() const {
  for (bool p : periodic)
    if (!p) return false;
  return !periodic.empty();
}

GeometryFamily::GeometryFamily(std::string name, int surface_dim, ParamDomain domain, Chart chart,
                               nlohmann::json parameters)
    : name_(std::move(name)),
      surface_dim_(surface_dim),
      domain_(std::move(domain)),
      chart_(std::make_shared<const Chart>(std::move(chart))),
      parameters_(std::move(parameters)) {}

Jet GeometryFamily::jet(const Vec& u) const {
  if (u.size() != domain_.dim())
    throw Error(ErrorKind::Domain, "parameter point has wrong dimension");
  for (int i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i])) throw Error(ErrorKind::Domain, "non-finite parameter");
    if (!domain_.periodic[i] && (u[i] < domain_.lower[i] || u[i] > domain_.upper[i]))
      throw Error(ErrorKind::Domain, "parameter outside the chart domain");
  }
  return (*chart_)(u);
}

void hyperspherical(const Vec& angles, Vec& y, Mat& jac) {
  const int m = static_cast<int>(angles.size());
  const Vec s = angles.array().sin();
  const Vec c = angles.array().cos();
  y.resize(m + 1);
  jac.setZero(m + 1, m);
  // y_j = (prod_{i<j} s_i) c_j for j < m, y_m = prod_{i<m} s_i
  for (int j = 0; j <= m; ++j) {
    double prefix = 1.0;
    for (int i = 0; i < j; ++i) prefix *= s[i];
    const double tail = j < m ? c[j] : 1.0;
    y[j] = prefix * tail;
    for (int k = 0; k < std::min(j + 1, m); ++k) {
      if (k == j) {
        jac(j, k) = -prefix * s[j];
      } else {
        double partial = c[k] * tail;
        for (int i = 0; i < j; ++i)
          if (i != k) partial *= s[i];
        jac(j, k) = partial;
      }
    }
  }
}

namespace {

ParamDomain sphere_domain(int m) {
  ParamDomain d;
  d.lower = Vec::Zero(m);
  d.upper = Vec::Constant(m, std::numbers::pi);
  d.upper[m - 1] = 2.0 * std::numbers::pi;
  d.periodic.assign(m, false);
  d.periodic[m - 1] = true;
  return d;
}

}  // namespace

GeometryFamily equator(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "equator needs n >= 2");
  auto chart = [n](const Vec& u) {
    Vec y;
    Mat jac;
    hyperspherical(u, y, jac);
    Jet jet;
    jet.x = Vec::Zero(n + 2);
    jet.x.head(n + 1) = y;
    jet.nu = Vec::Unit(n + 2, n + 1);
    jet.tangents = Mat::Zero(n + 2, n);
    jet.tangents.topRows(n + 1) = jac;
    jet.second = Mat::Zero(n, n);
    return jet;
  };
  return GeometryFamily("equator", n, sphere_domain(n), chart, {{"n", n}});
}

GeometryFamily clifford(int n, int k) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "clifford needs n >= 2");
  if (k < 1 || k > n - 1) throw Error(ErrorKind::InvalidParameter, "clifford needs 1 <= k <= n-1");
  const double r = std::sqrt(static_cast<double>(k) / n);
  const double s = std::sqrt(static_cast<double>(n - k) / n);
  ParamDomain first = sphere_domain(k);
  ParamDomain second = sphere_domain(n - k);
  ParamDomain d;
  d.lower.resize(n);
  d.upper.resize(n);
  d.lower << first.lower, second.lower;
  d.upper << first.upper, second.upper;
  d.periodic = first.periodic;
  d.periodic.insert(d.periodic.end(), second.periodic.begin(), second.periodic.end());

  auto chart = [n, k, r, s](const Vec& u) {
    Vec y, z;
    Mat jy, jz;
    hyperspherical(u.head(k), y, jy);
    hyperspherical(u.tail(n - k), z, jz);
    Jet jet;
    jet.x.resize(n + 2);
    jet.x << r * y, s * z;
    // A = s/r on the first factor, -r/s on the second
    jet.nu.resize(n + 2);
    jet.nu << -s * y, r * z;
    jet.tangents = Mat::Zero(n + 2, n);
    jet.tangents.block(0, 0, k + 1, k) = r * jy;
    jet.tangents.block(k + 1, k, n - k + 1, n - k) = s * jz;
    jet.second = Mat::Zero(n, n);
    jet.second.topLeftCorner(k, k) = r * s * (jy.transpose() * jy);
    jet.second.bottomRightCorner(n - k, n - k) = -r * s * (jz.transpose() * jz);
    return jet;
  };
  return GeometryFamily("clifford", n, std::move(d), chart, {{"n", n}, {"k", k}, {"r", r}, {"s", s}});
}

FramePoint eval_frame(const GeometryFamily& family, const Vec& u) {
  const Jet jet = family.jet(u);
  const int n = family.surface_dim();
  // modified Gram-Schmidt in coordinate order: tangents = E R
  Mat E = jet.tangents;
  Mat R = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double original = E.col(i).norm();
    for (int j = 0; j < i; ++j) {
      R(j, i) = E.col(j).dot(E.col(i));
      E.col(i) -= R(j, i) * E.col(j);
    }
    const double norm = E.col(i).norm();
    if (!(norm > 1e-12 * std::max(original, 1.0)))
      throw Error(ErrorKind::SingularPoint, "parametrization is singular at this point");
    R(i, i) = norm;
    E.col(i) /= norm;
  }
  const Mat Rinv = R.triangularView<Eigen::Upper>().solve(Mat::Identity(n, n));
  Mat A = Rinv.transpose() * jet.second * Rinv;
  A = 0.5 * (A + A.transpose()).eval();

  FramePoint fp;
  fp.u = u;
  fp.x = jet.x;
  fp.nu = jet.nu;
  fp.tangent_basis = std::move(E);
  fp.Asq = A.squaredNorm();
  fp.A = std::move(A);
  fp.area_element = R.diagonal().prod();
  return fp;
}

ScalarField l_func(const GeometryFamily& family, const Vec& v) {
  return [family, v](const Vec& u) { return family.position(u).dot(v); };
}

ScalarField f_func(const GeometryFamily& family, const Vec& v) {
  return [family, v](const Vec& u) { return family.normal(u).dot(v); };
}

GradientResidual gradient_check(const GeometryFamily& family, const Vec& v, const Vec& u, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidParameter, "step must be positive");
  const int n = family.surface_dim();
  const FramePoint fp = eval_frame(family, u);
  const Jet jet = family.jet(u);

  Vec dl(n), df(n);
  for (int i = 0; i < n; ++i) {
    Vec up = u, um = u;
    up[i] += h;
    um[i] -= h;
    const Jet jp = family.jet(up), jm = family.jet(um);
    dl[i] = (jp.x.dot(v) - jm.x.dot(v)) / (2.0 * h);
    df[i] = (jp.nu.dot(v) - jm.nu.dot(v)) / (2.0 * h);
  }
  // ambient gradient T g^{-1} d from coordinate derivatives d
  const Mat& T = jet.tangents;
  const Eigen::LDLT<Mat> metric(T.transpose() * T);
  const Vec grad_l = T * metric.solve(dl);
  const Vec grad_f = T * metric.solve(df);

  const double lv = fp.x.dot(v), fv = fp.nu.dot(v);
  const Vec vt = v - fv * fp.nu - lv * fp.x;
  const Vec A_vt = fp.tangent_basis * (fp.A * (fp.tangent_basis.transpose() * vt));
  return {(grad_l - vt).norm(), (grad_f + A_vt).norm()};
}

void gauss_legendre(int count, Vec& nodes, Vec& weights) {
  // Golub-Welsch
  Mat jacobi = Mat::Zero(count, count);
  for (int k = 1; k < count; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(jacobi);
  nodes = eig.eigenvalues();
  weights = 2.0 * eig.eigenvectors().row(0).transpose().array().square();
}

SampleGrid sample_grid(const ParamDomain& domain, int resolution) {
  return sample_grid(domain, std::vector<int>(domain.dim(), resolution));
}

SampleGrid sample_grid(const ParamDomain& domain, const std::vector<int>& resolution) {
  const int dim = domain.dim();
  if (static_cast<int>(resolution.size()) != dim)
    throw Error(ErrorKind::InvalidParameter, "resolution rank mismatch");
  std::vector<Vec> nodes(dim), weights(dim);
  for (int i = 0; i < dim; ++i) {
    const int res = resolution[i];
    if (res < 1) throw Error(ErrorKind::InvalidParameter, "resolution must be positive");
    const double lo = domain.lower[i], len = domain.upper[i] - domain.lower[i];
    if (domain.periodic[i]) {
      nodes[i] = Vec::LinSpaced(res, 0.0, res - 1.0) * (len / res) + Vec::Constant(res, lo);
      weights[i] = Vec::Constant(res, len / res);
    } else {
      Vec x, w;
      gauss_legendre(res, x, w);
      nodes[i] = (x.array() + 1.0) * (0.5 * len) + lo;
      weights[i] = w * (0.5 * len);
    }
  }
  SampleGrid grid;
  std::vector<int> idx(dim, 0);
  while (true) {
    Vec u(dim);
    double w = 1.0;
    for (int i = 0; i < dim; ++i) {
      u[i] = nodes[i][idx[i]];
      w *= weights[i][idx[i]];
    }
    grid.points.push_back(std::move(u));
    grid.weights.push_back(w);
    int i = dim - 1;
    while (i >= 0 && ++idx[i] == resolution[i]) idx[i--] = 0;
    if (i < 0) break;
  }
  return grid;
}

double check_minimality(const GeometryFamily& family, int resolution) {
  return check_minimality(family, std::vector<int>(family.domain().dim(), resolution));
}

double check_minimality(const GeometryFamily& family, const std::vector<int>& resolution) {
  return integrate_surface(family, resolution).max_trace;
}

SurfaceIntegrals integrate_surface(const GeometryFamily& family, const std::vector<int>& resolution) {
  const SampleGrid grid = sample_grid(family.domain(), resolution);
  SurfaceIntegrals out{0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const FramePoint fp = eval_frame(family, grid.points[i]);
    const double w = grid.weights[i] * fp.area_element;
    out.area += w;
    out.integral_Asq += w * fp.Asq;
    out.max_Asq = std::max(out.max_Asq, fp.Asq);
    out.max_trace = std::max(out.max_trace, std::abs(fp.A.trace()));
  }
  return out;
}

}  // namespace mhs

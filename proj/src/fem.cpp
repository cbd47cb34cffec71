#include "mhs/fem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "mhs/errors.hpp"
#include "mhs/parallel.hpp"

namespace mhs {
namespace {

using Matrix3d = Eigen::Matrix3d;

double flat_area(const Mat& vertices, const Eigen::Vector3i& tri) {
  const Vec e1 = vertices.col(tri[1]) - vertices.col(tri[0]);
  const Vec e2 = vertices.col(tri[2]) - vertices.col(tri[0]);
  const double a = e1.squaredNorm(), b = e1.dot(e2), c = e2.squaredNorm();
  return 0.5 * std::sqrt(std::max(0.0, a * c - b * b));
}

void allocate_quadrature(SurfaceMesh& mesh) {
  const Eigen::Index nq = TriangleRule::kPoints * mesh.triangle_count();
  mesh.quad_weights.resize(nq);
  mesh.quad_positions.resize(4, nq);
  mesh.quad_normals.resize(4, nq);
  mesh.quad_Asq.resize(nq);
}

}  // namespace

SurfaceMesh mesh_torus(const GeometryFamily& family, int resolution_t, int resolution_phi) {
  if (resolution_t < 8 || resolution_phi < 8) throw Error(ErrorKind::InvalidParameter, "torus mesh resolution must be >= 8");
  const ParamDomain& domain = family.domain();
  if (family.surface_dim() != 2 || domain.dim() != 2 || !domain.fully_periodic())
    throw Error(ErrorKind::InvalidParameter, "torus meshing needs a doubly periodic surface in S^3");

  // families built from repeated t-periods (rotational tori) are resolved per period
  const int periods = family.parameters().value("t_periods", 1);
  const int nt = resolution_t * periods, nf = resolution_phi;
  const double ht = (domain.upper[0] - domain.lower[0]) / nt;
  const double hf = (domain.upper[1] - domain.lower[1]) / nf;
  auto param = [&](double i, double j) { return Vec(Eigen::Vector2d(domain.lower[0] + i * ht, domain.lower[1] + j * hf)); };
  auto index = [&](int i, int j) { return ((i % nt) * nf) + (j % nf); };

  SurfaceMesh mesh;
  mesh.surface_dim = 2;
  mesh.source_family = family.name();
  mesh.source_parameters = family.parameters();
  mesh.resolution = {resolution_t, nf};
  mesh.vertices.resize(4, nt * nf);
  mesh.vertex_normals.resize(4, nt * nf);
  mesh.vertex_Asq.resize(nt * nf);
  parallel_for(static_cast<std::size_t>(nt) * nf, [&](std::size_t k) {
    const int i = static_cast<int>(k) / nf, j = static_cast<int>(k) % nf;
    const FramePoint fp = eval_frame(family, param(i, j));
    mesh.vertices.col(k) = fp.x;
    mesh.vertex_normals.col(k) = fp.nu;
    mesh.vertex_Asq[k] = fp.Asq;
  });

  // two triangles per cell, counterclockwise in (t, phi); corners kept unwrapped
  mesh.triangles.resize(3, 2 * nt * nf);
  std::vector<std::array<Eigen::Vector2d, 3>> corners(2 * nt * nf);
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < nf; ++j) {
      const int cell = 2 * (i * nf + j);
      mesh.triangles.col(cell) << index(i, j), index(i + 1, j), index(i + 1, j + 1);
      mesh.triangles.col(cell + 1) << index(i, j), index(i + 1, j + 1), index(i, j + 1);
      corners[cell] = {Eigen::Vector2d(i, j), Eigen::Vector2d(i + 1, j), Eigen::Vector2d(i + 1, j + 1)};
      corners[cell + 1] = {Eigen::Vector2d(i, j), Eigen::Vector2d(i + 1, j + 1), Eigen::Vector2d(i, j + 1)};
    }
  }

  allocate_quadrature(mesh);
  parallel_for(static_cast<std::size_t>(mesh.triangle_count()), [&](std::size_t f) {
    const double area = flat_area(mesh.vertices, mesh.triangles.col(f));
    for (int q = 0; q < TriangleRule::kPoints; ++q) {
      const auto& bary = TriangleRule::kBarycentric[q];
      Eigen::Vector2d ij = Eigen::Vector2d::Zero();
      for (int c = 0; c < 3; ++c) ij += bary[c] * corners[f][c];
      const FramePoint fp = eval_frame(family, param(ij[0], ij[1]));
      const Eigen::Index k = TriangleRule::kPoints * f + q;
      mesh.quad_weights[k] = area / TriangleRule::kPoints;
      mesh.quad_positions.col(k) = fp.x;
      mesh.quad_normals.col(k) = fp.nu;
      mesh.quad_Asq[k] = fp.Asq;
    }
  });
  return mesh;
}

SurfaceMesh mesh_sphere(int subdivisions) {
  if (subdivisions < 1) throw Error(ErrorKind::InvalidParameter, "sphere mesh needs subdivisions >= 1");
  const double g = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> pts = {
      {-1, g, 0}, {1, g, 0}, {-1, -g, 0}, {1, -g, 0}, {0, -1, g}, {0, 1, g},
      {0, -1, -g}, {0, 1, -g}, {g, 0, -1}, {g, 0, 1}, {-g, 0, -1}, {-g, 0, 1}};
  for (auto& p : pts) p.normalize();
  std::vector<Eigen::Vector3i> faces = {
      {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
      {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      pts.push_back((pts[a] + pts[b]).normalized());
      const int id = static_cast<int>(pts.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Eigen::Vector3i> refined;
    refined.reserve(4 * faces.size());
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      refined.emplace_back(f[0], ab, ca);
      refined.emplace_back(f[1], bc, ab);
      refined.emplace_back(f[2], ca, bc);
      refined.emplace_back(ab, bc, ca);
    }
    faces = std::move(refined);
  }

  SurfaceMesh mesh;
  mesh.surface_dim = 2;
  mesh.source_family = "equator";
  mesh.source_parameters = {{"n", 2}, {"subdivisions", subdivisions}};
  mesh.resolution = {subdivisions, 0};
  const Eigen::Index nv = static_cast<Eigen::Index>(pts.size());
  mesh.vertices = Mat::Zero(4, nv);
  for (Eigen::Index i = 0; i < nv; ++i) mesh.vertices.col(i).head<3>() = pts[i];
  // the equatorial S^2 = S^3 cut by w = 0 has constant normal e_4
  mesh.vertex_normals = Mat::Zero(4, nv);
  mesh.vertex_normals.row(3).setOnes();
  mesh.vertex_Asq = Vec::Zero(nv);
  mesh.triangles.resize(3, static_cast<Eigen::Index>(faces.size()));
  for (std::size_t f = 0; f < faces.size(); ++f) mesh.triangles.col(f) = faces[f];

  allocate_quadrature(mesh);
  for (Eigen::Index f = 0; f < mesh.triangle_count(); ++f) {
    const double area = flat_area(mesh.vertices, mesh.triangles.col(f));
    for (int q = 0; q < TriangleRule::kPoints; ++q) {
      const auto& bary = TriangleRule::kBarycentric[q];
      Vec x = Vec::Zero(4);
      for (int c = 0; c < 3; ++c) x += bary[c] * mesh.vertices.col(mesh.triangles(c, f));
      const Eigen::Index k = TriangleRule::kPoints * f + q;
      mesh.quad_weights[k] = area / TriangleRule::kPoints;
      mesh.quad_positions.col(k) = x.normalized();
      mesh.quad_normals.col(k) = Vec::Unit(4, 3);
      mesh.quad_Asq[k] = 0.0;
    }
  }
  return mesh;
}

Eigen::Index edge_count(const SurfaceMesh& mesh) {
  std::set<std::pair<int, int>> edges;
  for (Eigen::Index f = 0; f < mesh.triangle_count(); ++f)
    for (int c = 0; c < 3; ++c) edges.insert(std::minmax(mesh.triangles(c, f), mesh.triangles((c + 1) % 3, f)));
  return static_cast<Eigen::Index>(edges.size());
}

bool consistently_oriented(const SurfaceMesh& mesh) {
  std::set<std::pair<int, int>> directed;
  for (Eigen::Index f = 0; f < mesh.triangle_count(); ++f)
    for (int c = 0; c < 3; ++c)
      if (!directed.emplace(mesh.triangles(c, f), mesh.triangles((c + 1) % 3, f)).second) return false;
  return true;
}

OperatorSet assemble(const SurfaceMesh& mesh) {
  const Eigen::Index nv = mesh.vertex_count(), nt = mesh.triangle_count();
  const int n = mesh.surface_dim;
  struct Local {
    Matrix3d K, M, W;
  };
  std::vector<Local> local(static_cast<std::size_t>(nt));
  Eigen::Matrix<double, 2, 3> D;
  D << -1, 1, 0, -1, 0, 1;

  parallel_for(static_cast<std::size_t>(nt), [&](std::size_t f) {
    const auto tri = mesh.triangles.col(f);
    const Vec e1 = mesh.vertices.col(tri[1]) - mesh.vertices.col(tri[0]);
    const Vec e2 = mesh.vertices.col(tri[2]) - mesh.vertices.col(tri[0]);
    Eigen::Matrix2d G;
    G << e1.squaredNorm(), e1.dot(e2), e1.dot(e2), e2.squaredNorm();
    const double area = 0.5 * std::sqrt(std::max(0.0, G.determinant()));
    if (!(area >= 1e-14)) throw Error(ErrorKind::DegenerateElement, "triangle " + std::to_string(f) + " is degenerate");
    Local& L = local[f];
    L.K = area * (D.transpose() * G.inverse() * D);
    L.K = 0.5 * (L.K + L.K.transpose()).eval();
    L.M.setZero();
    L.W.setZero();
    for (int q = 0; q < TriangleRule::kPoints; ++q) {
      const auto& b = TriangleRule::kBarycentric[q];
      const Eigen::Vector3d phi(b[0], b[1], b[2]);
      const Eigen::Index k = TriangleRule::kPoints * f + q;
      const double w = mesh.quad_weights[k];
      L.M += w * phi * phi.transpose();
      L.W += w * (n + mesh.quad_Asq[k]) * phi * phi.transpose();
    }
  });

  std::vector<Eigen::Triplet<double>> tk, tm, tw;
  tk.reserve(9 * nt);
  tm.reserve(9 * nt);
  tw.reserve(9 * nt);
  for (Eigen::Index f = 0; f < nt; ++f) {
    const auto tri = mesh.triangles.col(f);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        tk.emplace_back(tri[a], tri[b], local[f].K(a, b));
        tm.emplace_back(tri[a], tri[b], local[f].M(a, b));
        tw.emplace_back(tri[a], tri[b], local[f].W(a, b));
      }
    }
  }
  OperatorSet ops;
  ops.n = n;
  ops.K.resize(nv, nv);
  ops.Mm.resize(nv, nv);
  ops.W.resize(nv, nv);
  ops.K.setFromTriplets(tk.begin(), tk.end());
  ops.Mm.setFromTriplets(tm.begin(), tm.end());
  ops.W.setFromTriplets(tw.begin(), tw.end());
  ops.potential_max = n + (mesh.quad_Asq.size() ? mesh.quad_Asq.maxCoeff() : 0.0);
  return ops;
}

Vec project(const SurfaceMesh& mesh, const std::function<double(const VertexSample&)>& field) {
  Vec out(mesh.vertex_count());
  for (Eigen::Index i = 0; i < mesh.vertex_count(); ++i)
    out[i] = field(VertexSample{mesh.vertices.col(i), mesh.vertex_normals.col(i), mesh.vertex_Asq[i]});
  return out;
}

Vec project_l(const SurfaceMesh& mesh, const Vec& v) { return mesh.vertices.transpose() * v; }

Vec project_f(const SurfaceMesh& mesh, const Vec& v) { return mesh.vertex_normals.transpose() * v; }

}  // namespace mhs

#ifndef MHS_FEM_HPP
#define MHS_FEM_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "mhs/geometry.hpp"
#include "mhs/types.hpp"

namespace mhs {

// Interior 3-point rule, exact for quadratics on a triangle.
struct TriangleRule {
  static constexpr int kPoints = 3;
  static constexpr std::array<std::array<double, 3>, 3> kBarycentric{
      {{{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0}}, {{1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0}}, {{1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0}}}};
};

// Piecewise-linear surface in S^3. Vertex data is stored column-wise; the
// quadrature point q of triangle f has flat index 3 f + q.
struct SurfaceMesh {
  int surface_dim = 2;
  Mat vertices;          // 4 x V, unit columns
  Eigen::MatrixXi triangles;  // 3 x F
  Mat vertex_normals;    // 4 x V
  Vec vertex_Asq;        // V

  Vec quad_weights;      // 3F, sum over a triangle = flat triangle area
  Mat quad_positions;    // 4 x 3F
  Mat quad_normals;      // 4 x 3F
  Vec quad_Asq;          // 3F

  std::optional<std::string> source_family;
  nlohmann::json source_parameters = nlohmann::json::object();
  std::array<int, 2> resolution{0, 0};
  // false for imported meshes whose normals were rebuilt from triangles
  bool analytic_normals = true;

  Eigen::Index vertex_count() const { return vertices.cols(); }
  Eigen::Index triangle_count() const { return triangles.cols(); }
  double area() const { return quad_weights.sum(); }
};

// resolution_t counts cells per t-period; a family whose chart repeats a
// fundamental period declares parameters()["t_periods"] (rotational tori).
SurfaceMesh mesh_torus(const GeometryFamily& family, int resolution_t, int resolution_phi);
SurfaceMesh mesh_sphere(int subdivisions);

// Number of undirected edges; V - E + F gives the Euler characteristic.
Eigen::Index edge_count(const SurfaceMesh& mesh);
// Every directed edge occurs at most once (consistent orientation).
bool consistently_oriented(const SurfaceMesh& mesh);

struct OperatorSet {
  SpMat K;   // stiffness
  SpMat Mm;  // mass
  SpMat W;   // mass weighted by n + |A|^2
  int n = 2;
  double potential_max = 0.0;

  // Weak form of the Jacobi operator: f^T (K - W) g = int f J(g).
  SpMat stability() const { return K - W; }
  // Mass weighted by |A|^2 alone.
  SpMat curvature_mass() const { return W - static_cast<double>(n) * Mm; }
};

OperatorSet assemble(const SurfaceMesh& mesh);

struct VertexSample {
  Eigen::Ref<const Vec> x;
  Eigen::Ref<const Vec> nu;
  double Asq;
};

Vec project(const SurfaceMesh& mesh, const std::function<double(const VertexSample&)>& field);
Vec project_l(const SurfaceMesh& mesh, const Vec& v);
Vec project_f(const SurfaceMesh& mesh, const Vec& v);

// Mesh JSON: {"vertices":[[x,y,z,w],...],"triangles":[[i,j,k],...],"fields":{"Asq":[...]}}
nlohmann::json mesh_to_json(const SurfaceMesh& mesh);
SurfaceMesh mesh_from_json(const nlohmann::json& doc);

}  // namespace mhs

#endif  // MHS_FEM_HPP

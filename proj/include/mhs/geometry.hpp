#ifndef MHS_GEOMETRY_HPP
#define MHS_GEOMETRY_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "mhs/types.hpp"

namespace mhs {

// Rectangle in parameter space. Periodic coordinates accept any finite value.
struct ParamDomain {
  Vec lower;
  Vec upper;
  std::vector<bool> periodic;

  int dim() const { return static_cast<int>(lower.size()); }
  bool fully_periodic() const;
};

// Raw chart data at a parameter point: position, unit normal, coordinate
// tangents (columns d x/du_i) and second fundamental form <d2x/du_i du_j, nu>.
struct Jet {
  Vec x;
  Vec nu;
  Mat tangents;
  Mat second;
};

// Orthonormal frame {x, nu, tangent_basis} at u with the shape operator
// A = -D nu written in tangent_basis.
struct FramePoint {
  Vec u;
  Vec x;
  Vec nu;
  Mat tangent_basis;
  Mat A;
  double Asq = 0.0;
  double area_element = 0.0;
};

// Immutable analytic minimal hypersurface M^n in S^{n+1}.
class GeometryFamily {
 public:
  using Chart = std::function<Jet(const Vec&)>;

  GeometryFamily(std::string name, int surface_dim, ParamDomain domain, Chart chart,
                 nlohmann::json parameters = nlohmann::json::object());

  const std::string& name() const { return name_; }
  int surface_dim() const { return surface_dim_; }
  int ambient_dim() const { return surface_dim_ + 2; }
  const ParamDomain& domain() const { return domain_; }
  const nlohmann::json& parameters() const { return parameters_; }

  // Throws Domain when u lies outside a non-periodic range.
  Jet jet(const Vec& u) const;
  Vec position(const Vec& u) const { return jet(u).x; }
  Vec normal(const Vec& u) const { return jet(u).nu; }

 private:
  std::string name_;
  int surface_dim_;
  ParamDomain domain_;
  std::shared_ptr<const Chart> chart_;
  nlohmann::json parameters_;
};

GeometryFamily equator(int n);
GeometryFamily clifford(int n, int k);

// Unit sphere S^m in R^{m+1} in hyperspherical angles; jac is (m+1) x m.
void hyperspherical(const Vec& angles, Vec& y, Mat& jac);

FramePoint eval_frame(const GeometryFamily& family, const Vec& u);

using ScalarField = std::function<double(const Vec&)>;

ScalarField l_func(const GeometryFamily& family, const Vec& v);
ScalarField f_func(const GeometryFamily& family, const Vec& v);

struct GradientResidual {
  double l_residual;  // |FD grad l_v - v^T|
  double f_residual;  // |FD grad f_v + A(v^T)|
};

GradientResidual gradient_check(const GeometryFamily& family, const Vec& v, const Vec& u, double h);

// Tensor sample grid: uniform points along periodic coordinates, Gauss-Legendre
// nodes along bounded ones (never hits chart poles).
struct SampleGrid {
  std::vector<Vec> points;
  std::vector<double> weights;
};

SampleGrid sample_grid(const ParamDomain& domain, int resolution);
SampleGrid sample_grid(const ParamDomain& domain, const std::vector<int>& resolution);

double check_minimality(const GeometryFamily& family, int resolution);
double check_minimality(const GeometryFamily& family, const std::vector<int>& resolution);

struct SurfaceIntegrals {
  double area;
  double integral_Asq;
  double max_Asq;
  double max_trace;
};

SurfaceIntegrals integrate_surface(const GeometryFamily& family, const std::vector<int>& resolution);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int count, Vec& nodes, Vec& weights);

}  // namespace mhs

#endif  // MHS_GEOMETRY_HPP

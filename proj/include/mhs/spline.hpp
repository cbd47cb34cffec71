#ifndef MHS_SPLINE_HPP
#define MHS_SPLINE_HPP

#include <cmath>
#include <vector>

#include "mhs/errors.hpp"
#include "mhs/types.hpp"

namespace mhs {

// C^2 cubic spline through samples y_i = f(i * period / N), i = 0..N-1, with
// f periodic of the given period.
template <typename Scalar>
class PeriodicCubicSpline {
 public:
  PeriodicCubicSpline() = default;

  PeriodicCubicSpline(const VectorX<Scalar>& values, Scalar period)
      : values_(values), period_(period) {
    const Eigen::Index n = values.size();
    if (n < 4) throw Error(ErrorKind::InvalidParameter, "periodic spline needs at least 4 samples");
    if (!(period > Scalar(0))) throw Error(ErrorKind::InvalidParameter, "period must be positive");
    step_ = period / static_cast<Scalar>(n);
    // cyclic system m_{i-1} + 4 m_i + m_{i+1} = 6 (y_{i+1} - 2 y_i + y_{i-1}) / h^2
    std::vector<Eigen::Triplet<Scalar>> triplets;
    VectorX<Scalar> rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index prev = (i + n - 1) % n, next = (i + 1) % n;
      triplets.emplace_back(i, i, Scalar(4));
      triplets.emplace_back(i, prev, Scalar(1));
      triplets.emplace_back(i, next, Scalar(1));
      rhs[i] = Scalar(6) * (values[next] - Scalar(2) * values[i] + values[prev]) / (step_ * step_);
    }
    SparseMatrixX<Scalar> system(n, n);
    system.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SimplicialLDLT<SparseMatrixX<Scalar>> solver(system);
    curvature_ = solver.solve(rhs);
  }

  Scalar period() const { return period_; }

  Scalar operator()(Scalar t) const { return evaluate(t, 0); }
  Scalar derivative(Scalar t) const { return evaluate(t, 1); }

 private:
  Scalar evaluate(Scalar t, int order) const {
    const Eigen::Index n = values_.size();
    Scalar local = std::fmod(t, period_);
    if (local < Scalar(0)) local += period_;
    Eigen::Index i = static_cast<Eigen::Index>(std::floor(local / step_));
    if (i >= n) i = n - 1;
    const Eigen::Index j = (i + 1) % n;
    const Scalar h = step_;
    const Scalar b = (local - static_cast<Scalar>(i) * h) / h;
    const Scalar a = Scalar(1) - b;
    const Scalar mi = curvature_[i], mj = curvature_[j];
    if (order == 0) {
      return a * values_[i] + b * values_[j] +
             ((a * a * a - a) * mi + (b * b * b - b) * mj) * h * h / Scalar(6);
    }
    return (values_[j] - values_[i]) / h +
           (-(Scalar(3) * a * a - Scalar(1)) * mi + (Scalar(3) * b * b - Scalar(1)) * mj) * h / Scalar(6);
  }

  VectorX<Scalar> values_;
  VectorX<Scalar> curvature_;
  Scalar period_ = Scalar(1);
  Scalar step_ = Scalar(1);
};

}  // namespace mhs

#endif  // MHS_SPLINE_HPP

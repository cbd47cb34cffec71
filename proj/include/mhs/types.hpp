#ifndef MHS_TYPES_HPP
#define MHS_TYPES_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace mhs {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using SparseMatrixX = Eigen::SparseMatrix<Scalar>;

using Vec = VectorX<double>;
using Mat = MatrixX<double>;
using SpMat = SparseMatrixX<double>;

inline constexpr const char* kVersion = "1.0.0";

}  // namespace mhs

#endif  // MHS_TYPES_HPP

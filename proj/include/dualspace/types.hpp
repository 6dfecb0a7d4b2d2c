#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dualspace {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Column-major complex sparse matrix. Used both for operators on the
/// truncated Fock space (D x D) and for superoperators (D^2 x D^2).
using SparseMatrix = Eigen::SparseMatrix<Complex>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Largest Fock dimension accepted unless the caller overrides it.
inline constexpr std::size_t kDefaultMaxDimension = 4096;

/// Largest absolute entry of a sparse matrix (0 for an empty matrix).
double max_abs(const SparseMatrix& m);
double max_abs(const CMatrix& m);

}  // namespace dualspace

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dualspace/types.hpp"

namespace testing_support {

using dualspace::CMatrix;
using dualspace::Complex;
using dualspace::CVector;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  Complex complex() { return {uniform(), uniform()}; }

  CVector vector(Eigen::Index n) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = complex();
    return v;
  }
  CMatrix matrix(Eigen::Index r, Eigen::Index c) {
    CMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = complex();
    return m;
  }
  CMatrix hermitian(Eigen::Index n) {
    const CMatrix m = matrix(n, n);
    return 0.5 * (m + m.adjoint());
  }
  /// Random density matrix: G G^dagger / tr.
  CMatrix density(Eigen::Index n) {
    const CMatrix g = matrix(n, n);
    CMatrix rho = g * g.adjoint();
    return rho / rho.trace();
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline double max_abs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace testing_support

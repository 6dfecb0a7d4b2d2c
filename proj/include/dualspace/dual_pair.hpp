#pragma once

#include <cstddef>
#include <vector>

#include "dualspace/types.hpp"

namespace dualspace {

/// Finite truncation of an l2 sequence of complex coefficients.
class CoefficientVector {
 public:
  CoefficientVector() = default;
  explicit CoefficientVector(std::vector<Complex> entries);
  explicit CoefficientVector(const CVector& entries);

  /// Unit vector e_index (0-based) of length dim.
  static CoefficientVector unit(std::size_t dim, std::size_t index);
  static CoefficientVector zero(std::size_t dim);

  std::size_t truncation_dim() const { return entries_.size(); }
  const std::vector<Complex>& entries() const { return entries_; }
  Complex operator[](std::size_t i) const { return entries_[i]; }

  double squared_norm() const;
  CVector to_eigen() const;

  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;

 private:
  std::vector<Complex> entries_;
};

enum class Side { V, Y };

Side opposite(Side side);

struct PairedVector {
  Side side = Side::V;
  CoefficientVector coeffs;
};

/// Two spaces V and Y with basis sequences v_i, y_j and the pairing matrix
/// G[i][j] = v_i x y_j. Exactly biorthonormal bases have G = I; a numerically
/// realized pair carries whatever G was measured.
class DualPair {
 public:
  explicit DualPair(std::size_t dim);
  explicit DualPair(CMatrix pairing_matrix);

  static DualPair identity(std::size_t dim) { return DualPair(dim); }

  std::size_t dim() const { return static_cast<std::size_t>(g_.rows()); }
  const CMatrix& pairing_matrix() const { return g_; }

 private:
  CMatrix g_;
};

/// Bilinear form v x y = phi^t G omega. No conjugation on either slot.
Complex pairing(const PairedVector& v, const PairedVector& y, const DualPair& pair);

/// v* = sum conj(phi_i) y_i and y* = sum conj(omega_i) v_i.
PairedVector adjoint(const PairedVector& x);

/// Which argument of scalar_product ends up conjugated. On V the product is
/// v.u = v x u* = phi^t conj(chi) (second slot); on Y it is
/// y.x = y* x x = conj(omega)^t xi (first slot).
enum class ConjugatedSlot { First, Second };
ConjugatedSlot conjugated_slot(Side side);

Complex scalar_product(const PairedVector& x1, const PairedVector& x2, const DualPair& pair);
Complex scalar_product(const PairedVector& x1, const PairedVector& x2);

/// T = sum_j y_j v_j: maps the V-vector with coefficients phi to the
/// Y-vector with the same coefficients.
PairedVector isomorphism_apply(const PairedVector& v, const DualPair& pair);
PairedVector isomorphism_inverse(const PairedVector& y, const DualPair& pair);

/// max_{i,j} |G[i][j] - delta_ij|.
double biorthonormality_defect(const CMatrix& g);

}  // namespace dualspace

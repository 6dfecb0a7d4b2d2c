#include "dualspace/dual_pair.hpp"

#include <algorithm>
#include <string>

#include "dualspace/errors.hpp"

namespace dualspace {

double max_abs(const SparseMatrix& m) {
  double best = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      best = std::max(best, std::abs(it.value()));
    }
  }
  return best;
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CoefficientVector::CoefficientVector(std::vector<Complex> entries) : entries_(std::move(entries)) {}

CoefficientVector::CoefficientVector(const CVector& entries)
    : entries_(entries.data(), entries.data() + entries.size()) {}

CoefficientVector CoefficientVector::unit(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw DimensionError("unit vector index " + std::to_string(index) + " outside dimension " +
                         std::to_string(dim));
  }
  std::vector<Complex> e(dim, Complex{0.0, 0.0});
  e[index] = 1.0;
  return CoefficientVector(std::move(e));
}

CoefficientVector CoefficientVector::zero(std::size_t dim) {
  return CoefficientVector(std::vector<Complex>(dim, Complex{0.0, 0.0}));
}

double CoefficientVector::squared_norm() const {
  double s = 0.0;
  for (const auto& c : entries_) s += std::norm(c);
  return s;
}

CVector CoefficientVector::to_eigen() const {
  CVector v(static_cast<Eigen::Index>(entries_.size()));
  for (std::size_t i = 0; i < entries_.size(); ++i) v[static_cast<Eigen::Index>(i)] = entries_[i];
  return v;
}

Side opposite(Side side) { return side == Side::V ? Side::Y : Side::V; }

DualPair::DualPair(std::size_t dim) : g_(CMatrix::Identity(static_cast<Eigen::Index>(dim),
                                                           static_cast<Eigen::Index>(dim))) {}

DualPair::DualPair(CMatrix pairing_matrix) : g_(std::move(pairing_matrix)) {
  if (g_.rows() != g_.cols()) {
    throw DimensionError("pairing matrix must be square, got " + std::to_string(g_.rows()) + "x" +
                         std::to_string(g_.cols()));
  }
}

namespace {

void require_dim(const CoefficientVector& c, std::size_t dim) {
  if (c.truncation_dim() != dim) {
    throw DimensionError("coefficient vector of length " + std::to_string(c.truncation_dim()) +
                         " does not match dimension " + std::to_string(dim));
  }
}

void require_side(const PairedVector& x, Side side) {
  if (x.side != side) {
    throw SideError(side == Side::V ? "expected a V-side vector" : "expected a Y-side vector");
  }
}

}  // namespace

Complex pairing(const PairedVector& v, const PairedVector& y, const DualPair& pair) {
  require_side(v, Side::V);
  require_side(y, Side::Y);
  require_dim(v.coeffs, pair.dim());
  require_dim(y.coeffs, pair.dim());
  return v.coeffs.to_eigen().transpose() * pair.pairing_matrix() * y.coeffs.to_eigen();
}

PairedVector adjoint(const PairedVector& x) {
  std::vector<Complex> conj_coeffs;
  conj_coeffs.reserve(x.coeffs.truncation_dim());
  for (const auto& c : x.coeffs.entries()) conj_coeffs.push_back(std::conj(c));
  return {opposite(x.side), CoefficientVector(std::move(conj_coeffs))};
}

ConjugatedSlot conjugated_slot(Side side) {
  return side == Side::V ? ConjugatedSlot::Second : ConjugatedSlot::First;
}

Complex scalar_product(const PairedVector& x1, const PairedVector& x2, const DualPair& pair) {
  if (x1.side != x2.side) throw SideError("scalar product needs two vectors from the same space");
  require_dim(x1.coeffs, pair.dim());
  require_dim(x2.coeffs, pair.dim());
  if (x1.side == Side::V) return pairing(x1, adjoint(x2), pair);
  return pairing(adjoint(x1), x2, pair);
}

Complex scalar_product(const PairedVector& x1, const PairedVector& x2) {
  return scalar_product(x1, x2, DualPair::identity(x1.coeffs.truncation_dim()));
}

PairedVector isomorphism_apply(const PairedVector& v, const DualPair& pair) {
  require_side(v, Side::V);
  require_dim(v.coeffs, pair.dim());
  return {Side::Y, v.coeffs};
}

PairedVector isomorphism_inverse(const PairedVector& y, const DualPair& pair) {
  require_side(y, Side::Y);
  require_dim(y.coeffs, pair.dim());
  return {Side::V, y.coeffs};
}

double biorthonormality_defect(const CMatrix& g) {
  if (g.rows() != g.cols()) {
    throw DimensionError("pairing matrix must be square, got " + std::to_string(g.rows()) + "x" +
                         std::to_string(g.cols()));
  }
  if (g.size() == 0) return 0.0;
  return (g - CMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

}  // namespace dualspace

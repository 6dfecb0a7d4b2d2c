#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "dualspace/defect_report.hpp"
#include "dualspace/fock.hpp"
#include "dualspace/types.hpp"

namespace dualspace {

/// Column stacking: vec(x)[r + D s] = x(r, s).
CVector vectorize(const CMatrix& x);
CVector vectorize(const SparseMatrix& x);
/// Inverse of vectorize; throws DimensionError unless the length is a square.
CMatrix devectorize(const CVector& v);

/// x -> f x, which is I (x) f in Kronecker form under column stacking.
SparseMatrix left_map(const SparseMatrix& f);
/// x -> x g, which is g^T (x) I in Kronecker form under column stacking.
SparseMatrix right_map(const SparseMatrix& g);

/// x -> eta x eta with eta the Wigner-Jordan phase of the Fock space.
SparseMatrix parity_map(const FockSpace& space);
SparseMatrix parity_map(const FockConfig& config, std::size_t max_dim = kDefaultMaxDimension);

/// Names one of the 4(m+n) canonical maps: a_{nu,j}, a'_{nu,j}, c_{nu,j}, c'_{nu,j}.
struct MapKey {
  bool fermionic = false;
  int nu = 0;
  int mode = 1;
  bool primed = false;

  MapKey partner() const { return {fermionic, nu, mode, !primed}; }
  /// "a[0,1]", "a'[1,2]", "c[1,1]", "c'[0,2]".
  std::string to_string() const;

  friend auto operator<=>(const MapKey&, const MapKey&) = default;
};

/// The canonical maps
///   a_{0,j} = a^L, a'_{0,j} = (a*)^L, a_{1,j} = (a*)^R, a'_{1,j} = a^R,
///   c_{0,j} = c^L, c'_{0,j} = (c*)^L, c_{1,j} = (c*)^R P, c'_{1,j} = P c^R,
/// together with the parity map P. The last one is written with P on the
/// left; P c^R = -c^R P, and only this sign makes c'_{1,j} the adjoint of
/// c_{1,j} and gives {c_{1,j}, c'_{1,j}} = +1.
class CanonicalMaps {
 public:
  explicit CanonicalMaps(const FockSpace& space);

  const FockSpace& space() const { return space_; }
  std::size_t fock_dimension() const { return space_.dimension(); }
  const SparseMatrix& map(const MapKey& key) const;
  const SparseMatrix& parity() const { return parity_; }
  SparseMatrix identity() const;
  std::vector<MapKey> keys() const;

  /// c^R P with the sign read literally; kept for the informational rows.
  SparseMatrix literal_primed_right_fermion(int k) const;

  /// vec(I) and vec(|0><0|).
  CVector unit_vector() const;
  CVector vacuum_vector() const;

 private:
  FockSpace space_;
  SparseMatrix parity_;
  std::map<MapKey, SparseMatrix> maps_;
};

/// Commutation and anticommutation relations of the canonical maps. Bosonic
/// rows are split into the interior (no bosonic occupation of row or column
/// state at the cutoff) and the boundary.
DefectReport superalgebra_report(const CanonicalMaps& maps);
DefectReport superalgebra_report(const FockConfig& config,
                                 std::size_t max_dim = kDefaultMaxDimension);

/// P 1 = 1, P v_0 = v_0, commutation with bosonic maps, anticommutation with
/// fermionic maps and P^2 = 1.
DefectReport parity_report(const CanonicalMaps& maps);

/// Entries i_{nu,j}, nu in {0,1}, j = 1..m+n, stored at nu (m+n) + j - 1.
struct SuperMultiIndex {
  std::vector<int> entries;

  static SuperMultiIndex zero(const FockConfig& config);
  int& at(int nu, int j) { return entries.at(slot(nu, j)); }
  int at(int nu, int j) const { return entries.at(slot(nu, j)); }
  std::string to_string() const;

  friend bool operator==(const SuperMultiIndex&, const SuperMultiIndex&) = default;

 private:
  std::size_t slot(int nu, int j) const {
    return static_cast<std::size_t>(nu) * (entries.size() / 2) + static_cast<std::size_t>(j - 1);
  }
};

/// All multi-indices with bosonic entries up to `boson_bound` and fermionic
/// entries in {0,1}, last slot varying fastest.
std::vector<SuperMultiIndex> super_indices(const FockConfig& config, int boson_bound);
/// Bosonic entries up to floor(cutoff / 2).
std::vector<SuperMultiIndex> interior_indices(const FockConfig& config);

/// prod_nu prod_j (a'_{nu,j})^{i}/sqrt(i!) prod_nu prod_k (c'_{nu,k})^{i} v_0,
/// nu = 0 factors to the left of nu = 1 factors and modes ascending.
/// Throws ParameterError when an entry is out of range.
CVector v_basis(const SuperMultiIndex& idx, const CanonicalMaps& maps);
/// The same product applied to the unit operator.
CVector y_basis(const SuperMultiIndex& idx, const CanonicalMaps& maps);

/// tr(devec(u)^dagger devec(w)).
Complex operator_pairing(const CVector& u, const CVector& w);
/// tr(devec(u) devec(w)); reported for comparison only.
Complex trace_product_pairing(const CVector& u, const CVector& w);

/// The bilinear product x x y fixed by declaring the v and y sequences
/// biorthonormal: x x y = phi(x)^T omega(y), with phi and omega the
/// coordinates in the complete v and y sequences (bosonic entries up to the
/// cutoff, D^2 elements each).
class SequencePairing {
 public:
  /// Dense factorizations of D^2 x D^2 matrices; SizeError above max_super_dim.
  explicit SequencePairing(const CanonicalMaps& maps, std::size_t max_super_dim = 1296);

  Complex operator()(const CVector& x, const CVector& y) const;
  CVector v_coordinates(const CVector& x) const;
  CVector y_coordinates(const CVector& y) const;
  /// Entry (i, k) is xs.col(i) x ys.col(k).
  CMatrix matrix(const CMatrix& xs, const CMatrix& ys) const;
  const std::vector<SuperMultiIndex>& indices() const { return indices_; }

 private:
  std::vector<SuperMultiIndex> indices_;
  Eigen::PartialPivLU<CMatrix> v_lu_;
  Eigen::PartialPivLU<CMatrix> y_lu_;
};

/// Pairing matrices of v_i against y_k over the interior indices: the
/// sequence pairing must be the identity, the trace forms are informational.
/// Also checks tr(v_i^dagger v_i) = 1.
DefectReport biorthonormality_report(const CanonicalMaps& maps);

/// max |tr(x^dagger M y) - tr((M' x)^dagger y)| over interior v_i, y_k for
/// every canonical map M with partner M', split into interior and boundary
/// ranges (the boundary uses indices with a bosonic entry at the cutoff).
DefectReport adjoint_relation_report(const CanonicalMaps& maps);

}  // namespace dualspace

#pragma once

#include <cstddef>
#include <vector>

#include "dualspace/defect_report.hpp"
#include "dualspace/operator_polynomial.hpp"
#include "dualspace/types.hpp"

namespace dualspace {

/// m bosonic modes truncated at occupation `boson_cutoff`, n fermionic modes.
struct FockConfig {
  int bosons = 0;
  int fermions = 0;
  int boson_cutoff = 1;

  /// Throws ParameterError unless m, n >= 0, m + n >= 1 and cutoff >= 1 when m > 0.
  void validate() const;
  /// (cutoff + 1)^m 2^n; throws SizeError when it exceeds max_dim.
  std::size_t dimension(std::size_t max_dim = kDefaultMaxDimension) const;
  int modes() const { return bosons + fermions; }

  friend bool operator==(const FockConfig&, const FockConfig&) = default;
};

/// Occupations (i_1 .. i_{m+n}): bosonic entries first, then fermionic ones.
using MultiIndex = std::vector<int>;

/// Lexicographic enumeration with the first mode most significant, so the
/// vacuum comes first.
std::vector<MultiIndex> build_basis(const FockConfig& config,
                                    std::size_t max_dim = kDefaultMaxDimension);

/// Truncated Fock space with its ladder matrices.
///
/// Fermionic matrices carry the Jordan-Wigner string (-1)^{sum_{l<k} n_l}
/// over the fermionic modes preceding k. With that choice the basis state of
/// multi-index i equals prod_j (a*_j)^{i_j} / sqrt(i_j!) c*_1^{i_{m+1}} ..
/// c*_n^{i_{m+n}} applied to the vacuum with sign +1.
class FockSpace {
 public:
  explicit FockSpace(const FockConfig& config, std::size_t max_dim = kDefaultMaxDimension);

  const FockConfig& config() const { return config_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<MultiIndex>& basis() const { return basis_; }
  std::size_t index_of(const MultiIndex& occupations) const;

  SparseMatrix identity() const;
  SparseMatrix boson_annihilation(int j) const;
  SparseMatrix boson_creation(int j) const;
  SparseMatrix fermion_annihilation(int k) const;
  SparseMatrix fermion_creation(int k) const;
  SparseMatrix ladder(const LadderSymbol& symbol) const;

  /// eta = exp(-i pi sum_k c*_k c_k), diagonal with entries (-1)^{N_f}.
  SparseMatrix wigner_jordan_phase() const;
  /// Projector on the states whose boson mode j sits at the cutoff.
  SparseMatrix top_occupation_projector(int j) const;
  /// True when some bosonic occupation of the state equals the cutoff.
  bool at_boson_cutoff(std::size_t state) const;

  /// Sum over terms of coeff times the ordered product of ladder matrices.
  SparseMatrix build(const OperatorPolynomial& poly) const;
  /// Throws ParameterError when a mode index lies outside 1..m or 1..n.
  void check_modes(const OperatorPolynomial& poly) const;

 private:
  void check_boson_mode(int j) const;
  void check_fermion_mode(int k) const;

  FockConfig config_;
  std::vector<MultiIndex> basis_;
  std::vector<std::size_t> strides_;
};

SparseMatrix boson_annihilation(int j, const FockConfig& config);
SparseMatrix fermion_annihilation(int k, const FockConfig& config);
SparseMatrix build_operator(const OperatorPolynomial& poly, const FockConfig& config,
                            std::size_t max_dim = kDefaultMaxDimension);

/// Defects of the bosonic commutators, fermionic anticommutators and mixed
/// commutators. Fermionic and mixed relations must vanish exactly; the
/// bosonic [a_j, a*_j] - 1 vanishes except for -(cutoff + 1) on the states
/// where mode j is at the cutoff.
DefectReport graded_algebra_report(const FockConfig& config,
                                   std::size_t max_dim = kDefaultMaxDimension);

/// Tolerance for bosonic relations, whose entries pass through square roots.
inline constexpr double kBosonRoundoff = 1e-12;

}  // namespace dualspace

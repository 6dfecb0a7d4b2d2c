#pragma once

#include <compare>
#include <string>
#include <vector>

#include "dualspace/operator_polynomial.hpp"
#include "dualspace/third_quantization.hpp"
#include "dualspace/types.hpp"

namespace dualspace {

/// A canonical map or the parity map P.
struct MapFactor {
  bool parity = false;
  MapKey key;

  static MapFactor parity_map() { return {true, {}}; }
  static MapFactor of(MapKey k) { return {false, k}; }
  std::string to_string() const;

  friend auto operator<=>(const MapFactor&, const MapFactor&) = default;
};

struct MapTerm {
  Complex coeff{1.0, 0.0};
  std::vector<MapFactor> factors;

  /// Number of canonical factors, P not counted.
  int degree() const;
};

/// Linear combination of products of canonical maps.
class MapExpression {
 public:
  MapExpression() = default;
  explicit MapExpression(std::vector<MapTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<MapTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const;

  MapExpression& operator+=(const MapExpression& other);
  friend MapExpression operator+(MapExpression lhs, const MapExpression& rhs);
  friend MapExpression operator-(MapExpression lhs, const MapExpression& rhs);
  friend MapExpression operator*(const MapExpression& lhs, const MapExpression& rhs);
  friend MapExpression operator*(Complex scale, MapExpression e);

  /// Reverses each product, swaps primed and unprimed maps and conjugates the
  /// coefficient; P is its own adjoint.
  MapExpression adjoint() const;

  /// Moves P to the right end of every product (one sign per fermionic map it
  /// passes) and cancels pairs, then sorts fermionic maps before bosonic ones
  /// by (nu, mode) with one sign per exchange of two fermionic maps, and
  /// collects like terms. Factors with equal (nu, mode) keep their order.
  /// A leftover P raises ParityError unless `allow_parity` is set.
  MapExpression normalized(bool allow_parity = false) const;

  /// Terms joined by " + " or " - ". When `group_adjoints` is set, a term
  /// whose adjoint also occurs is printed once and the pair is summarised by
  /// a trailing "+ h.c.".
  std::string to_string(bool group_adjoints = true) const;

 private:
  std::vector<MapTerm> terms_;
};

enum class OperatorSide { Left, Right };

/// Rewrites f^L (x -> f x) or f^R (x -> x f) in canonical maps through
///   a^L -> a_0, (a*)^L -> a'_0, c^L -> c_0, (c*)^L -> c'_0,
///   a^R -> a'_1, (a*)^R -> a_1, c^R -> P c'_1, (c*)^R -> c_1 P,
/// with (f g)^R = g^R f^R. The result is normalized.
MapExpression map_term_symbolic(const OperatorPolynomial& poly, OperatorSide side,
                                bool allow_parity = false);

/// poly^L - poly^R, the map x -> [poly, x].
MapExpression map_commutator_symbolic(const OperatorPolynomial& poly);

/// Sum of coefficient-weighted products of the canonical map matrices.
SparseMatrix evaluate(const MapExpression& expr, const CanonicalMaps& maps);

}  // namespace dualspace

#pragma once

#include <compare>
#include <string>
#include <vector>

#include "dualspace/types.hpp"

namespace dualspace {

/// a[j], ad[j], c[k], cd[k] with 1-based mode index.
struct LadderSymbol {
  enum class Kind { BosonAnnihilate, BosonCreate, FermionAnnihilate, FermionCreate };

  Kind kind = Kind::BosonAnnihilate;
  int mode = 1;

  static LadderSymbol a(int j) { return {Kind::BosonAnnihilate, j}; }
  static LadderSymbol ad(int j) { return {Kind::BosonCreate, j}; }
  static LadderSymbol c(int k) { return {Kind::FermionAnnihilate, k}; }
  static LadderSymbol cd(int k) { return {Kind::FermionCreate, k}; }

  bool is_fermionic() const {
    return kind == Kind::FermionAnnihilate || kind == Kind::FermionCreate;
  }
  bool is_creation() const { return kind == Kind::BosonCreate || kind == Kind::FermionCreate; }

  LadderSymbol dagger() const;
  /// "a", "ad", "c" or "cd".
  std::string_view name() const;
  std::string to_string() const;

  friend auto operator<=>(const LadderSymbol&, const LadderSymbol&) = default;
};

struct PolynomialTerm {
  Complex coeff{1.0, 0.0};
  /// Product evaluated left to right exactly as written; empty means identity.
  std::vector<LadderSymbol> factors;

  int fermion_count() const;
  PolynomialTerm hermitian_conjugate() const;
};

/// Sum of coefficient-weighted ordered products of ladder symbols.
class OperatorPolynomial {
 public:
  OperatorPolynomial() = default;
  explicit OperatorPolynomial(std::vector<PolynomialTerm> terms) : terms_(std::move(terms)) {}

  static OperatorPolynomial identity(Complex coeff = 1.0);
  static OperatorPolynomial monomial(Complex coeff, std::vector<LadderSymbol> factors);

  const std::vector<PolynomialTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  OperatorPolynomial& add(const PolynomialTerm& term);
  OperatorPolynomial& operator+=(const OperatorPolynomial& other);
  friend OperatorPolynomial operator+(OperatorPolynomial lhs, const OperatorPolynomial& rhs);
  friend OperatorPolynomial operator*(const OperatorPolynomial& lhs, const OperatorPolynomial& rhs);
  friend OperatorPolynomial operator*(Complex scale, OperatorPolynomial p);

  OperatorPolynomial hermitian_conjugate() const;

  /// True when every term has an even number of c / cd factors.
  bool is_fermion_even() const;
  int max_boson_mode() const;
  int max_fermion_mode() const;

  std::string to_string() const;

 private:
  std::vector<PolynomialTerm> terms_;
};

}  // namespace dualspace

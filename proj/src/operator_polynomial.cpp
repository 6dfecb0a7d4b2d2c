#include "dualspace/operator_polynomial.hpp"

#include <algorithm>

#include "dualspace/format.hpp"

namespace dualspace {

LadderSymbol LadderSymbol::dagger() const {
  switch (kind) {
    case Kind::BosonAnnihilate:
      return {Kind::BosonCreate, mode};
    case Kind::BosonCreate:
      return {Kind::BosonAnnihilate, mode};
    case Kind::FermionAnnihilate:
      return {Kind::FermionCreate, mode};
    case Kind::FermionCreate:
      return {Kind::FermionAnnihilate, mode};
  }
  return *this;
}

std::string_view LadderSymbol::name() const {
  switch (kind) {
    case Kind::BosonAnnihilate:
      return "a";
    case Kind::BosonCreate:
      return "ad";
    case Kind::FermionAnnihilate:
      return "c";
    case Kind::FermionCreate:
      return "cd";
  }
  return "?";
}

std::string LadderSymbol::to_string() const {
  return std::string(name()) + "[" + std::to_string(mode) + "]";
}

int PolynomialTerm::fermion_count() const {
  return static_cast<int>(std::count_if(factors.begin(), factors.end(),
                                        [](const LadderSymbol& s) { return s.is_fermionic(); }));
}

PolynomialTerm PolynomialTerm::hermitian_conjugate() const {
  PolynomialTerm out;
  out.coeff = std::conj(coeff);
  out.factors.reserve(factors.size());
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) out.factors.push_back(it->dagger());
  return out;
}

OperatorPolynomial OperatorPolynomial::identity(Complex coeff) {
  return OperatorPolynomial({PolynomialTerm{coeff, {}}});
}

OperatorPolynomial OperatorPolynomial::monomial(Complex coeff, std::vector<LadderSymbol> factors) {
  return OperatorPolynomial({PolynomialTerm{coeff, std::move(factors)}});
}

OperatorPolynomial& OperatorPolynomial::add(const PolynomialTerm& term) {
  terms_.push_back(term);
  return *this;
}

OperatorPolynomial& OperatorPolynomial::operator+=(const OperatorPolynomial& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

OperatorPolynomial operator+(OperatorPolynomial lhs, const OperatorPolynomial& rhs) {
  lhs += rhs;
  return lhs;
}

OperatorPolynomial operator*(const OperatorPolynomial& lhs, const OperatorPolynomial& rhs) {
  OperatorPolynomial out;
  for (const auto& l : lhs.terms_) {
    for (const auto& r : rhs.terms_) {
      PolynomialTerm t;
      t.coeff = l.coeff * r.coeff;
      t.factors = l.factors;
      t.factors.insert(t.factors.end(), r.factors.begin(), r.factors.end());
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

OperatorPolynomial operator*(Complex scale, OperatorPolynomial p) {
  for (auto& t : p.terms_) t.coeff *= scale;
  return p;
}

OperatorPolynomial OperatorPolynomial::hermitian_conjugate() const {
  OperatorPolynomial out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back(t.hermitian_conjugate());
  return out;
}

bool OperatorPolynomial::is_fermion_even() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const PolynomialTerm& t) { return t.fermion_count() % 2 == 0; });
}

int OperatorPolynomial::max_boson_mode() const {
  int best = 0;
  for (const auto& t : terms_) {
    for (const auto& f : t.factors) {
      if (!f.is_fermionic()) best = std::max(best, f.mode);
    }
  }
  return best;
}

int OperatorPolynomial::max_fermion_mode() const {
  int best = 0;
  for (const auto& t : terms_) {
    for (const auto& f : t.factors) {
      if (f.is_fermionic()) best = std::max(best, f.mode);
    }
  }
  return best;
}

std::string OperatorPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0) out += " + ";
    out += format_complex_coefficient(terms_[i].coeff);
    for (const auto& f : terms_[i].factors) out += "*" + f.to_string();
  }
  return out;
}

}  // namespace dualspace

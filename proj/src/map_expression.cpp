#include "dualspace/map_expression.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

#include "dualspace/errors.hpp"
#include "dualspace/format.hpp"

namespace dualspace {

namespace {

auto order_key(const MapKey& k) { return std::make_tuple(k.fermionic ? 0 : 1, k.nu, k.mode); }

bool same_product(const MapTerm& x, const MapTerm& y) { return x.factors == y.factors; }

std::string coefficient_prefix(Complex c, bool first) {
  std::string sign;
  if (c.imag() == 0.0 && c.real() < 0.0) {
    sign = first ? "-" : " - ";
    c = -c;
  } else if (!first) {
    sign = " + ";
  }
  if (c == Complex(1.0, 0.0)) return sign;
  return sign + format_complex_coefficient(c) + "*";
}

std::string term_string(const MapTerm& t, bool first) {
  if (t.factors.empty()) {
    std::string prefix = coefficient_prefix(t.coeff, first);
    if (!prefix.empty() && prefix.back() == '*') prefix.pop_back();
    if (prefix.empty() || prefix == "-" || prefix == " - " || prefix == " + ") prefix += "1";
    return prefix;
  }
  std::string out = coefficient_prefix(t.coeff, first);
  for (std::size_t i = 0; i < t.factors.size(); ++i) {
    if (i > 0) out += "*";
    out += t.factors[i].to_string();
  }
  return out;
}

std::vector<MapFactor> substitute(const LadderSymbol& s, OperatorSide side) {
  using K = LadderSymbol::Kind;
  const int j = s.mode;
  const auto map = [&](bool fermionic, int nu, bool primed) {
    return MapFactor::of({fermionic, nu, j, primed});
  };
  if (side == OperatorSide::Left) {
    switch (s.kind) {
      case K::BosonAnnihilate: return {map(false, 0, false)};
      case K::BosonCreate: return {map(false, 0, true)};
      case K::FermionAnnihilate: return {map(true, 0, false)};
      case K::FermionCreate: return {map(true, 0, true)};
    }
  }
  switch (s.kind) {
    case K::BosonAnnihilate: return {map(false, 1, true)};
    case K::BosonCreate: return {map(false, 1, false)};
    case K::FermionAnnihilate: return {MapFactor::parity_map(), map(true, 1, true)};
    case K::FermionCreate: return {map(true, 1, false), MapFactor::parity_map()};
  }
  throw ParameterError("unknown ladder symbol");
}

}  // namespace

std::string MapFactor::to_string() const { return parity ? "P" : key.to_string(); }

int MapTerm::degree() const {
  return static_cast<int>(std::count_if(factors.begin(), factors.end(),
                                        [](const MapFactor& f) { return !f.parity; }));
}

int MapExpression::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

MapExpression& MapExpression::operator+=(const MapExpression& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

MapExpression operator+(MapExpression lhs, const MapExpression& rhs) {
  lhs += rhs;
  return lhs;
}

MapExpression operator-(MapExpression lhs, const MapExpression& rhs) {
  lhs += Complex(-1.0, 0.0) * rhs;
  return lhs;
}

MapExpression operator*(const MapExpression& lhs, const MapExpression& rhs) {
  MapExpression out;
  for (const auto& x : lhs.terms_) {
    for (const auto& y : rhs.terms_) {
      MapTerm t{x.coeff * y.coeff, x.factors};
      t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

MapExpression operator*(Complex scale, MapExpression e) {
  for (auto& t : e.terms_) t.coeff *= scale;
  return e;
}

MapExpression MapExpression::adjoint() const {
  MapExpression out;
  for (const auto& t : terms_) {
    MapTerm a{std::conj(t.coeff), {}};
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
      a.factors.push_back(it->parity ? *it : MapFactor::of(it->key.partner()));
    }
    out.terms_.push_back(std::move(a));
  }
  return out;
}

MapExpression MapExpression::normalized(bool allow_parity) const {
  MapExpression out;
  for (const auto& t : terms_) {
    Complex coeff = t.coeff;
    std::vector<MapFactor> maps;
    int parity_count = 0;
    for (const auto& f : t.factors) {
      if (f.parity) {
        ++parity_count;
      } else {
        maps.push_back(f);
        if (f.key.fermionic && parity_count % 2 == 1) coeff = -coeff;
      }
    }
    // A P passes every fermionic map standing to its right; the loop above
    // counted, for each fermionic map, the P factors to its left.
    if (parity_count % 2 == 1 && !allow_parity) {
      throw ParityError("parity map does not cancel in an odd fermionic term");
    }
    for (std::size_t i = 1; i < maps.size(); ++i) {
      for (std::size_t k = i; k > 0 && order_key(maps[k - 1].key) > order_key(maps[k].key); --k) {
        if (maps[k - 1].key.fermionic && maps[k].key.fermionic) coeff = -coeff;
        std::swap(maps[k - 1], maps[k]);
      }
    }
    if (parity_count % 2 == 1) maps.push_back(MapFactor::parity_map());
    MapTerm term{coeff, std::move(maps)};
    const auto it = std::find_if(out.terms_.begin(), out.terms_.end(),
                                 [&](const MapTerm& o) { return same_product(o, term); });
    if (it == out.terms_.end()) {
      out.terms_.push_back(std::move(term));
    } else {
      it->coeff += term.coeff;
    }
  }
  std::erase_if(out.terms_, [](const MapTerm& t) { return t.coeff == Complex(0.0, 0.0); });
  return out;
}

std::string MapExpression::to_string(bool group_adjoints) const {
  if (terms_.empty()) return "0";
  std::vector<bool> shown(terms_.size(), true);
  bool paired = false;
  if (group_adjoints) {
    std::vector<bool> used(terms_.size(), false);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (used[i]) continue;
      const MapExpression single({terms_[i]});
      const MapExpression adj = single.adjoint().normalized(true);
      if (adj.terms_.size() != 1 || same_product(adj.terms_[0], terms_[i])) continue;
      for (std::size_t k = i + 1; k < terms_.size(); ++k) {
        if (used[k] || !same_product(terms_[k], adj.terms_[0])) continue;
        if (terms_[k].coeff != adj.terms_[0].coeff) continue;
        used[i] = used[k] = true;
        shown[k] = false;
        paired = true;
        break;
      }
    }
  }
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!shown[i]) continue;
    out += term_string(terms_[i], first);
    first = false;
  }
  if (paired) out += " + h.c.";
  return out;
}

MapExpression map_term_symbolic(const OperatorPolynomial& poly, OperatorSide side,
                                bool allow_parity) {
  std::vector<MapTerm> terms;
  for (const auto& pt : poly.terms()) {
    MapTerm t{pt.coeff, {}};
    if (side == OperatorSide::Left) {
      for (const auto& s : pt.factors) {
        const auto sub = substitute(s, side);
        t.factors.insert(t.factors.end(), sub.begin(), sub.end());
      }
    } else {
      for (auto it = pt.factors.rbegin(); it != pt.factors.rend(); ++it) {
        const auto sub = substitute(*it, side);
        t.factors.insert(t.factors.end(), sub.begin(), sub.end());
      }
    }
    terms.push_back(std::move(t));
  }
  return MapExpression(std::move(terms)).normalized(allow_parity);
}

MapExpression map_commutator_symbolic(const OperatorPolynomial& poly) {
  return (map_term_symbolic(poly, OperatorSide::Left) -
          map_term_symbolic(poly, OperatorSide::Right))
      .normalized();
}

SparseMatrix evaluate(const MapExpression& expr, const CanonicalMaps& maps) {
  SparseMatrix total = maps.identity();
  total.setZero();
  for (const auto& t : expr.terms()) {
    SparseMatrix product = maps.identity();
    for (const auto& f : t.factors) {
      product = SparseMatrix(product * (f.parity ? maps.parity() : maps.map(f.key)));
    }
    total += t.coeff * product;
  }
  total.prune(Complex(0.0, 0.0));
  return total;
}

}  // namespace dualspace

#include "dualspace/fock.hpp"

#include <cmath>
#include <string>

#include "dualspace/errors.hpp"

namespace dualspace {

void FockConfig::validate() const {
  if (bosons < 0 || fermions < 0) throw ParameterError("mode counts must be non-negative");
  if (bosons + fermions < 1) throw ParameterError("at least one mode is required");
  if (bosons > 0 && boson_cutoff < 1) throw ParameterError("boson cutoff must be at least 1");
}

std::size_t FockConfig::dimension(std::size_t max_dim) const {
  validate();
  std::size_t dim = 1;
  const auto grow = [&](std::size_t base) {
    if (dim > max_dim / base) {
      throw SizeError("Fock dimension exceeds the limit " + std::to_string(max_dim));
    }
    dim *= base;
  };
  for (int j = 0; j < bosons; ++j) grow(static_cast<std::size_t>(boson_cutoff) + 1);
  for (int k = 0; k < fermions; ++k) grow(2);
  if (dim > max_dim) throw SizeError("Fock dimension exceeds the limit " + std::to_string(max_dim));
  return dim;
}

std::vector<MultiIndex> build_basis(const FockConfig& config, std::size_t max_dim) {
  const std::size_t dim = config.dimension(max_dim);
  const int modes = config.modes();
  std::vector<MultiIndex> basis;
  basis.reserve(dim);
  MultiIndex current(static_cast<std::size_t>(modes), 0);
  for (std::size_t s = 0; s < dim; ++s) {
    basis.push_back(current);
    for (int k = modes - 1; k >= 0; --k) {
      const int top = k < config.bosons ? config.boson_cutoff : 1;
      if (current[k] < top) {
        ++current[k];
        break;
      }
      current[k] = 0;
    }
  }
  return basis;
}

FockSpace::FockSpace(const FockConfig& config, std::size_t max_dim)
    : config_(config), basis_(build_basis(config, max_dim)) {
  const int modes = config_.modes();
  strides_.assign(static_cast<std::size_t>(modes), 1);
  for (int k = modes - 2; k >= 0; --k) {
    const std::size_t base =
        k + 1 < config_.bosons ? static_cast<std::size_t>(config_.boson_cutoff) + 1 : 2;
    strides_[k] = strides_[k + 1] * base;
  }
}

std::size_t FockSpace::index_of(const MultiIndex& occupations) const {
  if (occupations.size() != strides_.size()) throw DimensionError("wrong multi-index length");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < strides_.size(); ++k) {
    const int top = static_cast<int>(k) < config_.bosons ? config_.boson_cutoff : 1;
    if (occupations[k] < 0 || occupations[k] > top) {
      throw ParameterError("occupation outside the truncated range");
    }
    idx += static_cast<std::size_t>(occupations[k]) * strides_[k];
  }
  return idx;
}

void FockSpace::check_boson_mode(int j) const {
  if (j < 1 || j > config_.bosons) {
    throw ParameterError("boson mode " + std::to_string(j) + " outside 1.." +
                         std::to_string(config_.bosons));
  }
}

void FockSpace::check_fermion_mode(int k) const {
  if (k < 1 || k > config_.fermions) {
    throw ParameterError("fermion mode " + std::to_string(k) + " outside 1.." +
                         std::to_string(config_.fermions));
  }
}

SparseMatrix FockSpace::identity() const {
  const auto d = static_cast<Eigen::Index>(dimension());
  SparseMatrix id(d, d);
  id.setIdentity();
  return id;
}

SparseMatrix FockSpace::boson_annihilation(int j) const {
  check_boson_mode(j);
  const auto pos = static_cast<std::size_t>(j - 1);
  const auto d = static_cast<Eigen::Index>(dimension());
  std::vector<Eigen::Triplet<Complex>> entries;
  for (std::size_t s = 0; s < basis_.size(); ++s) {
    const int n = basis_[s][pos];
    if (n == 0) continue;
    entries.emplace_back(static_cast<Eigen::Index>(s - strides_[pos]),
                         static_cast<Eigen::Index>(s), std::sqrt(static_cast<double>(n)));
  }
  SparseMatrix a(d, d);
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

SparseMatrix FockSpace::boson_creation(int j) const {
  return SparseMatrix(boson_annihilation(j).adjoint());
}

SparseMatrix FockSpace::fermion_annihilation(int k) const {
  check_fermion_mode(k);
  const auto pos = static_cast<std::size_t>(config_.bosons + k - 1);
  const auto d = static_cast<Eigen::Index>(dimension());
  std::vector<Eigen::Triplet<Complex>> entries;
  for (std::size_t s = 0; s < basis_.size(); ++s) {
    if (basis_[s][pos] == 0) continue;
    int preceding = 0;
    for (auto l = static_cast<std::size_t>(config_.bosons); l < pos; ++l) preceding += basis_[s][l];
    entries.emplace_back(static_cast<Eigen::Index>(s - strides_[pos]),
                         static_cast<Eigen::Index>(s), preceding % 2 == 0 ? 1.0 : -1.0);
  }
  SparseMatrix c(d, d);
  c.setFromTriplets(entries.begin(), entries.end());
  return c;
}

SparseMatrix FockSpace::fermion_creation(int k) const {
  return SparseMatrix(fermion_annihilation(k).adjoint());
}

SparseMatrix FockSpace::ladder(const LadderSymbol& symbol) const {
  switch (symbol.kind) {
    case LadderSymbol::Kind::BosonAnnihilate:
      return boson_annihilation(symbol.mode);
    case LadderSymbol::Kind::BosonCreate:
      return boson_creation(symbol.mode);
    case LadderSymbol::Kind::FermionAnnihilate:
      return fermion_annihilation(symbol.mode);
    case LadderSymbol::Kind::FermionCreate:
      return fermion_creation(symbol.mode);
  }
  throw ParameterError("unknown ladder symbol");
}

SparseMatrix FockSpace::wigner_jordan_phase() const {
  const auto d = static_cast<Eigen::Index>(dimension());
  std::vector<Eigen::Triplet<Complex>> entries;
  for (std::size_t s = 0; s < basis_.size(); ++s) {
    int nf = 0;
    for (auto l = static_cast<std::size_t>(config_.bosons); l < basis_[s].size(); ++l) {
      nf += basis_[s][l];
    }
    const auto i = static_cast<Eigen::Index>(s);
    entries.emplace_back(i, i, nf % 2 == 0 ? 1.0 : -1.0);
  }
  SparseMatrix eta(d, d);
  eta.setFromTriplets(entries.begin(), entries.end());
  return eta;
}

SparseMatrix FockSpace::top_occupation_projector(int j) const {
  check_boson_mode(j);
  const auto pos = static_cast<std::size_t>(j - 1);
  const auto d = static_cast<Eigen::Index>(dimension());
  std::vector<Eigen::Triplet<Complex>> entries;
  for (std::size_t s = 0; s < basis_.size(); ++s) {
    if (basis_[s][pos] != config_.boson_cutoff) continue;
    const auto i = static_cast<Eigen::Index>(s);
    entries.emplace_back(i, i, 1.0);
  }
  SparseMatrix p(d, d);
  p.setFromTriplets(entries.begin(), entries.end());
  return p;
}

bool FockSpace::at_boson_cutoff(std::size_t state) const {
  for (int j = 0; j < config_.bosons; ++j) {
    if (basis_.at(state)[static_cast<std::size_t>(j)] == config_.boson_cutoff) return true;
  }
  return false;
}

void FockSpace::check_modes(const OperatorPolynomial& poly) const {
  for (const auto& term : poly.terms()) {
    for (const auto& f : term.factors) {
      if (f.is_fermionic()) {
        check_fermion_mode(f.mode);
      } else {
        check_boson_mode(f.mode);
      }
    }
  }
}

SparseMatrix FockSpace::build(const OperatorPolynomial& poly) const {
  check_modes(poly);
  const auto d = static_cast<Eigen::Index>(dimension());
  SparseMatrix total(d, d);
  for (const auto& term : poly.terms()) {
    SparseMatrix product = identity();
    for (const auto& f : term.factors) product = SparseMatrix(product * ladder(f));
    total += term.coeff * product;
  }
  total.prune(Complex(0.0, 0.0));
  return total;
}

SparseMatrix boson_annihilation(int j, const FockConfig& config) {
  return FockSpace(config).boson_annihilation(j);
}

SparseMatrix fermion_annihilation(int k, const FockConfig& config) {
  return FockSpace(config).fermion_annihilation(k);
}

SparseMatrix build_operator(const OperatorPolynomial& poly, const FockConfig& config,
                            std::size_t max_dim) {
  return FockSpace(config, max_dim).build(poly);
}

namespace {

SparseMatrix commutator(const SparseMatrix& x, const SparseMatrix& y) {
  return SparseMatrix(x * y - y * x);
}

SparseMatrix anticommutator(const SparseMatrix& x, const SparseMatrix& y) {
  return SparseMatrix(x * y + y * x);
}

}  // namespace

DefectReport graded_algebra_report(const FockConfig& config, std::size_t max_dim) {
  const FockSpace space(config, max_dim);
  const SparseMatrix id = space.identity();
  std::vector<SparseMatrix> a, ad, c, cd;
  for (int j = 1; j <= config.bosons; ++j) {
    a.push_back(space.boson_annihilation(j));
    ad.push_back(space.boson_creation(j));
  }
  for (int k = 1; k <= config.fermions; ++k) {
    c.push_back(space.fermion_annihilation(k));
    cd.push_back(space.fermion_creation(k));
  }

  DefectReport report;
  report.title = "graded algebra";

  DefectRow aa{"[a_j,a_k]"};
  DefectRow aad{"[a_j,a*_k] (j != k)"};
  DefectRow interior{"[a_j,a*_j]-1", 0.0, -1, -1, "interior", kBosonRoundoff};
  DefectRow truncation{"[a_j,a*_j]-1+(cutoff+1)P_top", 0.0, -1, -1, "all", kBosonRoundoff};
  DefectRow boundary{"[a_j,a*_j]-1", 0.0, -1, -1, "boundary", 0.0, true,
                     "truncation defect, expected cutoff+1"};
  const auto bosons = static_cast<std::size_t>(config.bosons);
  for (std::size_t j = 0; j < bosons; ++j) {
    for (std::size_t k = 0; k < bosons; ++k) {
      absorb(aa, locate_max(commutator(a[j], a[k])));
      if (j != k) absorb(aad, locate_max(commutator(a[j], ad[k])));
    }
    const SparseMatrix defect = SparseMatrix(commutator(a[j], ad[j]) - id);
    const int jj = static_cast<int>(j) + 1;
    const auto top = [&](Eigen::Index r) {
      return space.basis()[static_cast<std::size_t>(r)][j] == config.boson_cutoff;
    };
    absorb(interior, locate_max(defect, [&](Eigen::Index r, Eigen::Index s) {
             return !top(r) && !top(s);
           }));
    absorb(boundary, locate_max(defect, [&](Eigen::Index r, Eigen::Index s) {
             return top(r) || top(s);
           }));
    const double scale = static_cast<double>(config.boson_cutoff) + 1.0;
    absorb(truncation,
           locate_max(SparseMatrix(defect + scale * space.top_occupation_projector(jj))));
  }

  DefectRow cc{"{c_j,c_k}"};
  DefectRow ccd{"{c_j,c*_k}-delta_jk"};
  const auto fermions = static_cast<std::size_t>(config.fermions);
  for (std::size_t j = 0; j < fermions; ++j) {
    for (std::size_t k = 0; k < fermions; ++k) {
      absorb(cc, locate_max(anticommutator(c[j], c[k])));
      SparseMatrix x = anticommutator(c[j], cd[k]);
      if (j == k) x -= id;
      absorb(ccd, locate_max(x));
    }
  }

  DefectRow ac{"[a_j,c_k]"};
  DefectRow acd{"[a_j,c*_k]"};
  for (std::size_t j = 0; j < bosons; ++j) {
    for (std::size_t k = 0; k < fermions; ++k) {
      absorb(ac, locate_max(commutator(a[j], c[k])));
      absorb(acd, locate_max(commutator(a[j], cd[k])));
    }
  }

  if (bosons > 0) {
    report.rows.push_back(aa);
    if (bosons > 1) report.rows.push_back(aad);
    report.rows.push_back(interior);
    report.rows.push_back(truncation);
    report.rows.push_back(boundary);
  }
  if (fermions > 0) {
    report.rows.push_back(cc);
    report.rows.push_back(ccd);
  }
  if (bosons > 0 && fermions > 0) {
    report.rows.push_back(ac);
    report.rows.push_back(acd);
  }
  return report;
}

}  // namespace dualspace

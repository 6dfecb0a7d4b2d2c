#include "dualspace/third_quantization.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "dualspace/errors.hpp"

namespace dualspace {

namespace {

Eigen::Index square_root_exact(Eigen::Index n) {
  auto r = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

SparseMatrix sparse_identity(Eigen::Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

SparseMatrix commutator(const SparseMatrix& x, const SparseMatrix& y) {
  return SparseMatrix(x * y - y * x);
}

SparseMatrix anticommutator(const SparseMatrix& x, const SparseMatrix& y) {
  return SparseMatrix(x * y + y * x);
}

LocatedMax vector_max(const CVector& v) {
  LocatedMax m;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > m.value) m = {std::abs(v[i]), i, 0};
  }
  return m;
}

LocatedMax dense_max(const CMatrix& x, const std::vector<bool>& row_keep,
                     const std::vector<bool>& col_keep, bool both) {
  LocatedMax m;
  for (Eigen::Index s = 0; s < x.cols(); ++s) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      const bool rk = row_keep[static_cast<std::size_t>(r)];
      const bool ck = col_keep[static_cast<std::size_t>(s)];
      if (both ? !(rk && ck) : !(rk || ck)) continue;
      if (std::abs(x(r, s)) > m.value) m = {std::abs(x(r, s)), r, s};
    }
  }
  return m;
}

void check_index(const SuperMultiIndex& idx, const FockConfig& config) {
  const int modes = config.modes();
  if (idx.entries.size() != static_cast<std::size_t>(2 * modes)) {
    throw ParameterError("multi-index needs 2(m+n) entries");
  }
  for (int nu = 0; nu < 2; ++nu) {
    for (int j = 1; j <= modes; ++j) {
      const int top = j <= config.bosons ? config.boson_cutoff : 1;
      const int v = idx.at(nu, j);
      if (v < 0 || v > top) {
        throw ParameterError("multi-index entry " + std::to_string(v) + " outside 0.." +
                             std::to_string(top));
      }
    }
  }
}

CVector apply_sequence(const SuperMultiIndex& idx, const CanonicalMaps& maps, CVector start) {
  const FockConfig& config = maps.space().config();
  check_index(idx, config);
  struct Step {
    MapKey key;
    int power;
  };
  std::vector<Step> steps;
  for (int nu = 0; nu < 2; ++nu) {
    for (int j = 1; j <= config.bosons; ++j) steps.push_back({{false, nu, j, true}, idx.at(nu, j)});
  }
  for (int nu = 0; nu < 2; ++nu) {
    for (int k = 1; k <= config.fermions; ++k) {
      steps.push_back({{true, nu, k, true}, idx.at(nu, config.bosons + k)});
    }
  }
  double scale = 1.0;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const SparseMatrix& m = maps.map(it->key);
    for (int t = 1; t <= it->power; ++t) {
      start = m * start;
      if (!it->key.fermionic) scale *= std::sqrt(static_cast<double>(t));
    }
  }
  return start / scale;
}

bool boson_interior(const SuperMultiIndex& idx, const FockConfig& config, int bound) {
  for (int nu = 0; nu < 2; ++nu) {
    for (int j = 1; j <= config.bosons; ++j) {
      if (idx.at(nu, j) > bound) return false;
    }
  }
  return true;
}

bool boson_at_cutoff(const SuperMultiIndex& idx, const FockConfig& config) {
  for (int nu = 0; nu < 2; ++nu) {
    for (int j = 1; j <= config.bosons; ++j) {
      if (idx.at(nu, j) == config.boson_cutoff) return true;
    }
  }
  return false;
}

CMatrix basis_columns(const std::vector<SuperMultiIndex>& indices, const CanonicalMaps& maps,
                      bool y_side) {
  const auto n = static_cast<Eigen::Index>(maps.fock_dimension() * maps.fock_dimension());
  CMatrix out(n, static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) =
        y_side ? y_basis(indices[i], maps) : v_basis(indices[i], maps);
  }
  return out;
}

double identity_defect(const CMatrix& g, LocatedMax* where = nullptr) {
  LocatedMax m;
  for (Eigen::Index s = 0; s < g.cols(); ++s) {
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      const double v = std::abs(g(r, s) - (r == s ? Complex(1.0) : Complex(0.0)));
      if (v > m.value) m = {v, r, s};
    }
  }
  if (where) *where = m;
  return m.value;
}

}  // namespace

CVector vectorize(const CMatrix& x) {
  if (x.rows() != x.cols()) throw DimensionError("vectorize expects a square matrix");
  return Eigen::Map<const CVector>(x.data(), x.size());
}

CVector vectorize(const SparseMatrix& x) { return vectorize(CMatrix(x)); }

CMatrix devectorize(const CVector& v) {
  const Eigen::Index d = square_root_exact(v.size());
  if (d * d != v.size()) throw DimensionError("vector length is not a perfect square");
  return Eigen::Map<const CMatrix>(v.data(), d, d);
}

SparseMatrix left_map(const SparseMatrix& f) {
  if (f.rows() != f.cols()) throw DimensionError("left_map expects a square operator");
  SparseMatrix out = Eigen::kroneckerProduct(sparse_identity(f.rows()), f);
  return out;
}

SparseMatrix right_map(const SparseMatrix& g) {
  if (g.rows() != g.cols()) throw DimensionError("right_map expects a square operator");
  SparseMatrix gt = g.transpose();
  SparseMatrix out = Eigen::kroneckerProduct(gt, sparse_identity(g.rows()));
  return out;
}

SparseMatrix parity_map(const FockSpace& space) {
  const SparseMatrix eta = space.wigner_jordan_phase();
  return SparseMatrix(left_map(eta) * right_map(eta));
}

SparseMatrix parity_map(const FockConfig& config, std::size_t max_dim) {
  return parity_map(FockSpace(config, max_dim));
}

std::string MapKey::to_string() const {
  return std::string(fermionic ? "c" : "a") + (primed ? "'" : "") + "[" + std::to_string(nu) +
         "," + std::to_string(mode) + "]";
}

CanonicalMaps::CanonicalMaps(const FockSpace& space)
    : space_(space), parity_(parity_map(space)) {
  const FockConfig& config = space_.config();
  for (int j = 1; j <= config.bosons; ++j) {
    const SparseMatrix a = space_.boson_annihilation(j);
    const SparseMatrix ad = space_.boson_creation(j);
    maps_[{false, 0, j, false}] = left_map(a);
    maps_[{false, 0, j, true}] = left_map(ad);
    maps_[{false, 1, j, false}] = right_map(ad);
    maps_[{false, 1, j, true}] = right_map(a);
  }
  for (int k = 1; k <= config.fermions; ++k) {
    const SparseMatrix c = space_.fermion_annihilation(k);
    const SparseMatrix cd = space_.fermion_creation(k);
    maps_[{true, 0, k, false}] = left_map(c);
    maps_[{true, 0, k, true}] = left_map(cd);
    maps_[{true, 1, k, false}] = SparseMatrix(right_map(cd) * parity_);
    maps_[{true, 1, k, true}] = SparseMatrix(parity_ * right_map(c));
  }
}

const SparseMatrix& CanonicalMaps::map(const MapKey& key) const {
  const auto it = maps_.find(key);
  if (it == maps_.end()) throw ParameterError("no canonical map " + key.to_string());
  return it->second;
}

SparseMatrix CanonicalMaps::identity() const {
  const auto d = static_cast<Eigen::Index>(fock_dimension());
  return sparse_identity(d * d);
}

std::vector<MapKey> CanonicalMaps::keys() const {
  std::vector<MapKey> out;
  const FockConfig& config = space_.config();
  for (int fermionic = 0; fermionic < 2; ++fermionic) {
    const int count = fermionic ? config.fermions : config.bosons;
    for (int nu = 0; nu < 2; ++nu) {
      for (int j = 1; j <= count; ++j) {
        out.push_back({fermionic == 1, nu, j, false});
        out.push_back({fermionic == 1, nu, j, true});
      }
    }
  }
  return out;
}

SparseMatrix CanonicalMaps::literal_primed_right_fermion(int k) const {
  return SparseMatrix(right_map(space_.fermion_annihilation(k)) * parity_);
}

CVector CanonicalMaps::unit_vector() const { return vectorize(space_.identity()); }

CVector CanonicalMaps::vacuum_vector() const {
  const auto d = static_cast<Eigen::Index>(fock_dimension());
  CVector v = CVector::Zero(d * d);
  v[0] = 1.0;
  return v;
}

DefectReport superalgebra_report(const CanonicalMaps& maps) {
  const FockSpace& space = maps.space();
  const FockConfig& config = space.config();
  const auto d = static_cast<Eigen::Index>(space.dimension());
  std::vector<bool> interior(static_cast<std::size_t>(d * d));
  for (Eigen::Index s = 0; s < d; ++s) {
    for (Eigen::Index r = 0; r < d; ++r) {
      interior[static_cast<std::size_t>(r + d * s)] =
          !space.at_boson_cutoff(static_cast<std::size_t>(r)) &&
          !space.at_boson_cutoff(static_cast<std::size_t>(s));
    }
  }
  const auto inside = [&](Eigen::Index p, Eigen::Index q) {
    return interior[static_cast<std::size_t>(p)] && interior[static_cast<std::size_t>(q)];
  };
  const auto outside = [&](Eigen::Index p, Eigen::Index q) { return !inside(p, q); };
  const SparseMatrix id = maps.identity();

  std::vector<MapKey> bosons, fermions;
  for (const auto& key : maps.keys()) {
    if (key.primed) continue;
    (key.fermionic ? fermions : bosons).push_back(key);
  }

  DefectRow aa{"[a_nu_j,a_mu_k]"};
  DefectRow aad{"[a_nu_j,a'_mu_k] (distinct)"};
  DefectRow same_interior{"[a_nu_j,a'_nu_j]-1", 0.0, -1, -1, "interior", kBosonRoundoff};
  DefectRow same_truncation{"[a_nu_j,a'_nu_j]-1+(cutoff+1)P_top", 0.0, -1, -1, "all",
                            kBosonRoundoff};
  DefectRow same_boundary{"[a_nu_j,a'_nu_j]-1", 0.0, -1, -1, "boundary", 0.0, true,
                          "truncation defect, expected cutoff+1"};
  const double top_scale = static_cast<double>(config.boson_cutoff) + 1.0;
  for (const auto& x : bosons) {
    for (const auto& y : bosons) {
      absorb(aa, locate_max(commutator(maps.map(x), maps.map(y))));
      SparseMatrix defect = commutator(maps.map(x), maps.map(y.partner()));
      if (x != y) {
        absorb(aad, locate_max(defect));
        continue;
      }
      defect -= id;
      absorb(same_interior, locate_max(defect, inside));
      absorb(same_boundary, locate_max(defect, outside));
      const SparseMatrix top = space.top_occupation_projector(x.mode);
      const SparseMatrix lifted = x.nu == 0 ? left_map(top) : right_map(top);
      absorb(same_truncation, locate_max(SparseMatrix(defect + top_scale * lifted)));
    }
  }

  DefectRow cc{"{c_nu_j,c_mu_k}"};
  DefectRow ccd{"{c_nu_j,c'_mu_k}-delta_nu_mu delta_jk"};
  DefectRow ccd_loose{"{c_nu_j,c'_mu_k}-delta_jk", 0.0, -1, -1, "all", 0.0, true,
                      "relation without delta_nu_mu"};
  DefectRow literal{"{c_1_j,c'_1_k}-delta_jk with c'_1 = c^R P", 0.0, -1, -1, "all", 0.0, true,
                    "primed right map with the literal operator order"};
  for (const auto& x : fermions) {
    for (const auto& y : fermions) {
      absorb(cc, locate_max(anticommutator(maps.map(x), maps.map(y))));
      SparseMatrix strict = anticommutator(maps.map(x), maps.map(y.partner()));
      SparseMatrix loose = strict;
      if (x.mode == y.mode) loose -= id;
      if (x == y) strict -= id;
      absorb(ccd, locate_max(strict));
      absorb(ccd_loose, locate_max(loose));
      if (x.nu == 1 && y.nu == 1) {
        SparseMatrix lit = anticommutator(maps.map(x), maps.literal_primed_right_fermion(y.mode));
        if (x.mode == y.mode) lit -= id;
        absorb(literal, locate_max(lit));
      }
    }
  }

  DefectRow ac{"[a_nu_j,c_mu_k]"};
  DefectRow acd{"[a_nu_j,c'_mu_k]"};
  for (const auto& x : bosons) {
    for (const auto& y : fermions) {
      absorb(ac, locate_max(commutator(maps.map(x), maps.map(y))));
      absorb(acd, locate_max(commutator(maps.map(x), maps.map(y.partner()))));
    }
  }

  DefectReport report;
  report.title = "superoperator algebra";
  if (!bosons.empty()) {
    report.rows.push_back(aa);
    if (bosons.size() > 1) report.rows.push_back(aad);
    report.rows.push_back(same_interior);
    report.rows.push_back(same_truncation);
    report.rows.push_back(same_boundary);
  }
  if (!fermions.empty()) {
    report.rows.push_back(cc);
    report.rows.push_back(ccd);
    report.rows.push_back(ccd_loose);
    report.rows.push_back(literal);
  }
  if (!bosons.empty() && !fermions.empty()) {
    report.rows.push_back(ac);
    report.rows.push_back(acd);
  }
  return report;
}

DefectReport superalgebra_report(const FockConfig& config, std::size_t max_dim) {
  return superalgebra_report(CanonicalMaps(FockSpace(config, max_dim)));
}

DefectReport parity_report(const CanonicalMaps& maps) {
  const SparseMatrix& p = maps.parity();
  DefectReport report;
  report.title = "parity map";

  DefectRow unit{"P 1 - 1"};
  absorb(unit, vector_max(p * maps.unit_vector() - maps.unit_vector()));
  DefectRow vacuum{"P v_0 - v_0"};
  absorb(vacuum, vector_max(p * maps.vacuum_vector() - maps.vacuum_vector()));
  report.rows.push_back(unit);
  report.rows.push_back(vacuum);

  DefectRow boson{"[P,a], [P,a']"};
  DefectRow fermion{"{P,c}, {P,c'}"};
  for (const auto& key : maps.keys()) {
    if (key.fermionic) {
      absorb(fermion, locate_max(anticommutator(p, maps.map(key))));
    } else {
      absorb(boson, locate_max(commutator(p, maps.map(key))));
    }
  }
  if (maps.space().config().bosons > 0) report.rows.push_back(boson);
  if (maps.space().config().fermions > 0) report.rows.push_back(fermion);

  DefectRow square{"P^2 - 1"};
  absorb(square, locate_max(SparseMatrix(p * p - maps.identity())));
  report.rows.push_back(square);
  return report;
}

SuperMultiIndex SuperMultiIndex::zero(const FockConfig& config) {
  return {std::vector<int>(static_cast<std::size_t>(2 * config.modes()), 0)};
}

std::string SuperMultiIndex::to_string() const {
  std::string out = "(";
  const std::size_t half = entries.size() / 2;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) out += (i == half) ? ";" : ",";
    out += std::to_string(entries[i]);
  }
  return out + ")";
}

std::vector<SuperMultiIndex> super_indices(const FockConfig& config, int boson_bound) {
  config.validate();
  const int modes = config.modes();
  std::vector<int> bound(static_cast<std::size_t>(2 * modes));
  for (int nu = 0; nu < 2; ++nu) {
    for (int j = 0; j < modes; ++j) {
      bound[static_cast<std::size_t>(nu * modes + j)] = j < config.bosons ? boson_bound : 1;
    }
  }
  std::vector<SuperMultiIndex> out;
  SuperMultiIndex current{std::vector<int>(bound.size(), 0)};
  while (true) {
    out.push_back(current);
    int pos = static_cast<int>(bound.size()) - 1;
    while (pos >= 0) {
      auto& e = current.entries[static_cast<std::size_t>(pos)];
      if (e < bound[static_cast<std::size_t>(pos)]) {
        ++e;
        break;
      }
      e = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

std::vector<SuperMultiIndex> interior_indices(const FockConfig& config) {
  return super_indices(config, config.boson_cutoff / 2);
}

CVector v_basis(const SuperMultiIndex& idx, const CanonicalMaps& maps) {
  return apply_sequence(idx, maps, maps.vacuum_vector());
}

CVector y_basis(const SuperMultiIndex& idx, const CanonicalMaps& maps) {
  return apply_sequence(idx, maps, maps.unit_vector());
}

Complex operator_pairing(const CVector& u, const CVector& w) {
  if (u.size() != w.size()) throw DimensionError("pairing of vectors with different lengths");
  return u.dot(w);
}

Complex trace_product_pairing(const CVector& u, const CVector& w) {
  if (u.size() != w.size()) throw DimensionError("pairing of vectors with different lengths");
  return (devectorize(u).transpose().cwiseProduct(devectorize(w))).sum();
}

SequencePairing::SequencePairing(const CanonicalMaps& maps, std::size_t max_super_dim) {
  const std::size_t n = maps.fock_dimension() * maps.fock_dimension();
  if (n > max_super_dim) {
    throw SizeError("sequence pairing needs a dense factorization of size " + std::to_string(n));
  }
  indices_ = super_indices(maps.space().config(), maps.space().config().boson_cutoff);
  if (indices_.size() != n) throw DimensionError("sequence does not match the operator space");
  v_lu_.compute(basis_columns(indices_, maps, false));
  y_lu_.compute(basis_columns(indices_, maps, true));
}

CVector SequencePairing::v_coordinates(const CVector& x) const { return v_lu_.solve(x); }

CVector SequencePairing::y_coordinates(const CVector& y) const { return y_lu_.solve(y); }

CMatrix SequencePairing::matrix(const CMatrix& xs, const CMatrix& ys) const {
  return v_lu_.solve(xs).transpose() * y_lu_.solve(ys);
}

Complex SequencePairing::operator()(const CVector& x, const CVector& y) const {
  return v_coordinates(x).transpose() * y_coordinates(y);
}

DefectReport biorthonormality_report(const CanonicalMaps& maps) {
  const FockConfig& config = maps.space().config();
  const auto indices = interior_indices(config);
  const CMatrix v = basis_columns(indices, maps, false);
  const CMatrix y = basis_columns(indices, maps, true);

  DefectReport report;
  report.title = "v/y biorthonormality";

  DefectRow sequence{"v_i x y_k - delta_ik", 0.0, -1, -1, "interior", 1e-10};
  try {
    const SequencePairing pairing(maps);
    const CMatrix g = pairing.matrix(v, y);
    LocatedMax m;
    identity_defect(g, &m);
    absorb(sequence, m);
  } catch (const SizeError& e) {
    sequence.informational = true;
    sequence.note = std::string("skipped: ") + e.what();
  }
  report.rows.push_back(sequence);

  LocatedMax m;
  DefectRow trace{"tr(v_i^dagger y_k) - delta_ik", 0.0, -1, -1, "interior", 0.0, true,
                  "Hilbert-Schmidt form"};
  identity_defect(v.adjoint() * y, &m);
  absorb(trace, m);
  report.rows.push_back(trace);

  CMatrix vt(v.rows(), v.cols());
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    vt.col(i) = vectorize(CMatrix(devectorize(v.col(i)).transpose()));
  }
  DefectRow product{"tr(v_i y_k) - delta_ik", 0.0, -1, -1, "interior", 0.0, true,
                    "trace of the plain product"};
  identity_defect(vt.transpose() * y, &m);
  absorb(product, m);
  report.rows.push_back(product);

  DefectRow norm{"tr(v_i^dagger v_i) - 1", 0.0, -1, -1, "interior", 1e-10};
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    const double val = std::abs(v.col(i).squaredNorm() - 1.0);
    if (val > norm.max_defect || norm.row < 0) absorb(norm, {val, i, i});
  }
  report.rows.push_back(norm);
  return report;
}

DefectReport adjoint_relation_report(const CanonicalMaps& maps) {
  const FockConfig& config = maps.space().config();
  const std::size_t n = maps.fock_dimension() * maps.fock_dimension();
  if (n > 1296) throw SizeError("adjoint relation report limited to D^2 <= 1296");
  const auto indices = super_indices(config, config.boson_cutoff);
  std::vector<bool> interior(indices.size()), boundary(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    interior[i] = boson_interior(indices[i], config, config.boson_cutoff / 2);
    boundary[i] = boson_at_cutoff(indices[i], config);
  }
  const CMatrix v = basis_columns(indices, maps, false);
  const CMatrix y = basis_columns(indices, maps, true);

  DefectRow boson_in{"x . a y - a' x . y", 0.0, -1, -1, "interior", 1e-12};
  DefectRow boson_out{"x . a y - a' x . y", 0.0, -1, -1, "boundary", 0.0, true,
                      "indices with a bosonic entry at the cutoff"};
  DefectRow fermion_all{"x . c y - c' x . y", 0.0, -1, -1, "all", 1e-12};
  for (const auto& key : maps.keys()) {
    const SparseMatrix& m = maps.map(key);
    const SparseMatrix& partner = maps.map(key.partner());
    const CMatrix my = m * y;
    const CMatrix pv = partner * v;
    const CMatrix defect = v.adjoint() * my - pv.adjoint() * y;
    if (key.fermionic) {
      absorb(fermion_all, dense_max(defect, interior, interior, true));
    } else {
      absorb(boson_in, dense_max(defect, interior, interior, true));
      absorb(boson_out, dense_max(defect, boundary, boundary, false));
    }
  }

  DefectReport report;
  report.title = "adjoint relation";
  if (config.bosons > 0) {
    report.rows.push_back(boson_in);
    report.rows.push_back(boson_out);
  }
  if (config.fermions > 0) {
    if (config.bosons > 0) fermion_all.scope = "interior";
    report.rows.push_back(fermion_all);
  }
  return report;
}

}  // namespace dualspace

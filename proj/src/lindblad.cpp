#include "dualspace/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "dualspace/errors.hpp"
#include "dualspace/third_quantization.hpp"

namespace dualspace {

namespace {

SparseMatrix sparse_identity(Eigen::Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

OperatorPolynomial dagger_times(const OperatorPolynomial& l) {
  return l.hermitian_conjugate() * l;
}

double max_abs_dense(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// exp(t A) v by Arnoldi with local error control.
CVector krylov_expmv(const SparseMatrix& a, const CVector& v, double t) {
  constexpr double kTolerance = 1e-12;
  const Eigen::Index n = a.rows();
  const Eigen::Index m_max = std::min<Eigen::Index>(30, n);
  CVector w = v;
  double remaining = t;
  double tau = t;
  while (remaining > 0.0) {
    const double beta = w.norm();
    if (beta == 0.0) return w;
    CMatrix basis(n, m_max + 1);
    CMatrix h = CMatrix::Zero(m_max + 1, m_max);
    basis.col(0) = w / beta;
    Eigen::Index m = m_max;
    double breakdown = 0.0;
    for (Eigen::Index j = 0; j < m_max; ++j) {
      CVector u = a * basis.col(j);
      for (Eigen::Index i = 0; i <= j; ++i) {
        h(i, j) = basis.col(i).dot(u);
        u -= h(i, j) * basis.col(i);
      }
      const double next = u.norm();
      h(j + 1, j) = next;
      if (next < 1e-14 * std::max(1.0, h.col(j).norm())) {
        m = j + 1;
        breakdown = 0.0;
        break;
      }
      breakdown = next;
      basis.col(j + 1) = u / next;
    }
    tau = std::min(tau, remaining);
    while (true) {
      const CMatrix f = (tau * h.topLeftCorner(m, m)).exp();
      const double err = beta * breakdown * std::abs(f(m - 1, 0));
      if (err <= kTolerance * beta || tau < 1e-12 * t) {
        w = beta * basis.leftCols(m) * f.col(0);
        remaining -= tau;
        tau *= 1.5;
        break;
      }
      tau *= 0.5;
    }
  }
  return w;
}

}  // namespace

void LindbladModel::validate() const {
  const FockSpace fs(config, max_dim);
  fs.check_modes(hamiltonian);
  for (const auto& l : lindblad_ops) fs.check_modes(l);
  if (!hamiltonian.is_fermion_even()) {
    throw ParityError("the Hamiltonian must be even in fermionic operators");
  }
  const SparseMatrix h = fs.build(hamiltonian);
  const double defect = max_abs(SparseMatrix(h - SparseMatrix(h.adjoint())));
  if (defect > 1e-12) {
    throw ModelError("the Hamiltonian is not Hermitian (defect " + std::to_string(defect) + ")");
  }
}

SparseMatrix liouvillian_direct(const LindbladModel& model) {
  model.validate();
  const FockSpace fs = model.space();
  const auto d = static_cast<Eigen::Index>(fs.dimension());
  const SparseMatrix id = sparse_identity(d);
  const SparseMatrix h = fs.build(model.hamiltonian);
  const SparseMatrix ht = h.transpose();
  SparseMatrix total = Complex(0.0, -1.0) * SparseMatrix(Eigen::kroneckerProduct(id, h));
  total += kI * SparseMatrix(Eigen::kroneckerProduct(ht, id));
  for (const auto& op : model.lindblad_ops) {
    const SparseMatrix l = fs.build(op);
    const SparseMatrix lc = l.conjugate();
    const SparseMatrix ldl = SparseMatrix(l.adjoint()) * l;
    const SparseMatrix ldlt = ldl.transpose();
    total += 2.0 * SparseMatrix(Eigen::kroneckerProduct(lc, l));
    total -= SparseMatrix(Eigen::kroneckerProduct(id, ldl));
    total -= SparseMatrix(Eigen::kroneckerProduct(ldlt, id));
  }
  total.prune(Complex(0.0, 0.0));
  return total;
}

MapExpression liouvillian_symbolic(const LindbladModel& model) {
  MapExpression expr = Complex(0.0, -1.0) * map_term_symbolic(model.hamiltonian, OperatorSide::Left);
  expr += kI * map_term_symbolic(model.hamiltonian, OperatorSide::Right);
  for (const auto& op : model.lindblad_ops) {
    const OperatorPolynomial ldl = dagger_times(op);
    const MapExpression jump = map_term_symbolic(op, OperatorSide::Left) *
                               map_term_symbolic(op.hermitian_conjugate(), OperatorSide::Right,
                                                 /*allow_parity=*/true);
    expr += Complex(2.0, 0.0) * jump;
    expr += Complex(-1.0, 0.0) * map_term_symbolic(ldl, OperatorSide::Left);
    expr += Complex(-1.0, 0.0) * map_term_symbolic(ldl, OperatorSide::Right);
  }
  return expr.normalized(/*allow_parity=*/true);
}

SparseMatrix liouvillian_thirdq(const LindbladModel& model) {
  model.validate();
  const CanonicalMaps maps(model.space());
  return evaluate(liouvillian_symbolic(model), maps);
}

double trace_preservation_defect(const SparseMatrix& liouvillian) {
  const Eigen::Index n = liouvillian.rows();
  const CVector unit = vectorize(sparse_identity(static_cast<Eigen::Index>(
      std::llround(std::sqrt(static_cast<double>(n))))));
  const CVector row = liouvillian.adjoint() * unit;
  return row.size() == 0 ? 0.0 : row.cwiseAbs().maxCoeff();
}

double liouvillian_tolerance(const SparseMatrix& reference) {
  return 1e-13 * std::max(1.0, max_abs(reference));
}

EvolutionResult evolve(const LindbladModel& model, const CMatrix& rho0,
                       const std::vector<double>& times,
                       const std::vector<OperatorPolynomial>& observables) {
  const FockSpace fs = model.space();
  const auto d = static_cast<Eigen::Index>(fs.dimension());
  if (rho0.rows() != d || rho0.cols() != d) throw DimensionError("initial state has wrong size");
  if (std::abs(rho0.trace() - 1.0) > 1e-10) throw ParameterError("initial state needs unit trace");
  if (max_abs_dense(rho0 - rho0.adjoint()) > 1e-10) {
    throw ParameterError("initial state must be Hermitian");
  }
  if (times.empty() || times.front() < 0.0) throw ParameterError("sample times must be >= 0");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw ParameterError("sample times must increase strictly");
  }

  const SparseMatrix gen = liouvillian_direct(model);
  std::vector<SparseMatrix> obs;
  for (const auto& o : observables) obs.push_back(fs.build(o));
  const bool dense = d * d <= 1024;
  const CMatrix dense_gen = dense ? CMatrix(gen) : CMatrix();
  std::map<double, CMatrix> propagators;

  EvolutionResult result;
  result.times = times;
  result.expectations.resize(static_cast<Eigen::Index>(observables.size()),
                             static_cast<Eigen::Index>(times.size()));
  result.min_eigenvalue = std::numeric_limits<double>::infinity();

  CVector state = vectorize(rho0);
  double now = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double dt = times[k] - now;
    if (dt > 0.0) {
      if (dense) {
        auto it = propagators.find(dt);
        if (it == propagators.end()) it = propagators.emplace(dt, CMatrix((dt * dense_gen).exp())).first;
        state = it->second * state;
      } else {
        state = krylov_expmv(gen, state, dt);
      }
      now = times[k];
    }
    const CMatrix rho = devectorize(state);
    result.trace_errors.push_back(std::abs(rho.trace() - 1.0));
    result.trace_drift = std::max(result.trace_drift, result.trace_errors.back());
    result.hermiticity_defect = std::max(result.hermiticity_defect, max_abs_dense(rho - rho.adjoint()));
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (rho + rho.adjoint()),
                                                     Eigen::EigenvaluesOnly);
    result.min_eigenvalue = std::min(result.min_eigenvalue, eig.eigenvalues().minCoeff());
    for (std::size_t o = 0; o < obs.size(); ++o) {
      result.expectations(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(k)) =
          (rho * obs[o]).trace();
    }
    if (result.trace_drift > 1e-6) {
      throw IntegrationError("trace drift " + std::to_string(result.trace_drift) + " at t = " +
                             std::to_string(times[k]));
    }
  }
  result.final_state = devectorize(state);
  return result;
}

SteadyState steady_state(const LindbladModel& model) {
  const SparseMatrix gen = liouvillian_direct(model);
  const Eigen::Index n = gen.rows();
  const double scale = std::max(1.0, max_abs(gen));
  const SparseMatrix id = sparse_identity(n);

  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(SparseMatrix(gen + (1e-10 * scale) * id));
  if (lu.info() != Eigen::Success) throw DegenerateSteadyStateError("shifted factorization failed");
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
  CVector x = vectorize(sparse_identity(d));
  x.normalize();
  for (int it = 0; it < 8; ++it) {
    x = lu.solve(x);
    x.normalize();
  }

  const SparseMatrix gram = SparseMatrix(gen.adjoint()) * gen;
  const double delta = 1e-12 * scale * scale;
  Eigen::SparseLU<SparseMatrix> glu;
  glu.compute(SparseMatrix(gram + delta * id));
  if (glu.info() != Eigen::Success) throw DegenerateSteadyStateError("Gram factorization failed");
  CVector y = CVector::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] += 0.37 * std::sin(1.0 + static_cast<double>(i));
  double sigma2 = 0.0;
  for (int it = 0; it < 40; ++it) {
    y -= x * x.dot(y);
    y.normalize();
    y = glu.solve(y);
    y -= x * x.dot(y);
    y.normalize();
    sigma2 = (gen * y).norm();
  }
  if (sigma2 <= 1e-8) {
    throw DegenerateSteadyStateError("Liouvillian kernel is not one-dimensional (second singular "
                                     "value " + std::to_string(sigma2) + ")");
  }

  CMatrix rho = devectorize(x);
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  SteadyState out;
  out.residual = (gen * vectorize(rho)).norm();
  out.second_singular_value = sigma2;
  out.rho = std::move(rho);
  return out;
}

Complex expectation(const OperatorPolynomial& obs, const CMatrix& rho, const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dimension());
  if (rho.rows() != d || rho.cols() != d) throw DimensionError("state has wrong size");
  return (rho * space.build(obs)).trace();
}

}  // namespace dualspace

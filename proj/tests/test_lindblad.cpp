#include <doctest.h>

#include <cmath>

#include "dualspace/errors.hpp"
#include "dualspace/expression_parser.hpp"
#include "dualspace/lindblad.hpp"
#include "dualspace/third_quantization.hpp"
#include "random_models.hpp"

using namespace dualspace;
using testing_support::Rng;

namespace {

LindbladModel model_of(FockConfig cfg, const std::string& h, std::vector<std::string> ls = {}) {
  LindbladModel m;
  m.config = cfg;
  if (!h.empty()) m.hamiltonian = parse_polynomial(h);
  for (const auto& l : ls) m.lindblad_ops.push_back(parse_polynomial(l));
  return m;
}

/// Column k of the generator is vec of the master equation applied to the
/// k-th matrix unit, evaluated with dense products.
CMatrix brute_force_liouvillian(const LindbladModel& model) {
  const FockSpace fs = model.space();
  const auto d = static_cast<Eigen::Index>(fs.dimension());
  const CMatrix h = CMatrix(fs.build(model.hamiltonian));
  std::vector<CMatrix> ls;
  for (const auto& l : model.lindblad_ops) ls.push_back(CMatrix(fs.build(l)));
  CMatrix out(d * d, d * d);
  for (Eigen::Index s = 0; s < d; ++s) {
    for (Eigen::Index r = 0; r < d; ++r) {
      CMatrix rho = CMatrix::Zero(d, d);
      rho(r, s) = 1.0;
      CMatrix drho = -kI * (h * rho - rho * h);
      for (const auto& l : ls) {
        const CMatrix ldl = l.adjoint() * l;
        drho += 2.0 * l * rho * l.adjoint() - ldl * rho - rho * ldl;
      }
      out.col(r + d * s) = vectorize(drho);
    }
  }
  return out;
}

double fidelity_with_basis_state(const CMatrix& rho, Eigen::Index s) { return rho(s, s).real(); }

}  // namespace

TEST_CASE("direct Liouvillian of a harmonic oscillator") {
  const LindbladModel m = model_of({1, 0, 3}, "0.7*ad[1]*a[1]");
  const CMatrix l = CMatrix(liouvillian_direct(m));
  const FockSpace fs = m.space();
  const CMatrix h = CMatrix(fs.build(m.hamiltonian));
  const CMatrix id = CMatrix::Identity(4, 4);
  // column stacking: vec(H x) = (I (x) H) vec x, vec(x H) = (H^T (x) I) vec x
  CMatrix want(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int q = 0; q < 4; ++q)
          want(4 * i + k, 4 * j + q) = -kI * (id(i, j) * h(k, q) - h(j, i) * id(k, q));
  CHECK(max_abs(CMatrix(l - want)) < 1e-15);
  const Eigen::ComplexEigenSolver<CMatrix> eig(l);
  CHECK(eig.eigenvalues().real().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("direct Liouvillian matches the master equation column by column") {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const LindbladModel m = testing_support::random_model(rng, testing_support::random_config(rng, 16));
    const CMatrix want = brute_force_liouvillian(m);
    CHECK(max_abs(CMatrix(CMatrix(liouvillian_direct(m)) - want)) <= 1e-13 * std::max(1.0, max_abs(want)));
  }
}

TEST_CASE("trace preservation and empty models") {
  const LindbladModel damped = model_of({1, 0, 6}, "", {"0.7071067811865476*a[1]"});
  CHECK(trace_preservation_defect(liouvillian_direct(damped)) <= 1e-12);
  const LindbladModel empty = model_of({1, 1, 2}, "");
  CHECK(liouvillian_direct(empty).nonZeros() == 0);
  CHECK(max_abs(liouvillian_thirdq(empty)) == 0.0);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(liouvillian_thirdq(model_of({0, 1, 1}, "cd[1]")), ParityError);
  CHECK_THROWS_AS(liouvillian_direct(model_of({0, 1, 1}, "cd[1]")), ParityError);
  CHECK_THROWS_AS(model_of({1, 0, 2}, "ad[1]").validate(), ModelError);
  CHECK_THROWS_AS(model_of({1, 0, 2}, "ad[2]*a[2]").validate(), ParameterError);
  CHECK_NOTHROW(model_of({0, 1, 1}, "0.5*cd[1]*c[1]", {"cd[1]"}).validate());
}

TEST_CASE("third-quantized Liouvillian of the Fermi-Bose term") {
  const LindbladModel m = testing_support::fermi_bose_model();
  const SparseMatrix direct = liouvillian_direct(m);
  CHECK(direct.rows() == 64);
  CHECK(max_abs(SparseMatrix(liouvillian_thirdq(m) - direct)) <= liouvillian_tolerance(direct));
}

TEST_CASE("odd Lindblad operators leave a parity factor in the jump term") {
  const LindbladModel m = model_of({0, 1, 1}, "", {"0.5*cd[1]"});
  const std::string text = liouvillian_symbolic(m).to_string(false);
  CHECK(text.find("*P") != std::string::npos);
  const SparseMatrix direct = liouvillian_direct(m);
  CHECK(max_abs(SparseMatrix(liouvillian_thirdq(m) - direct)) <= liouvillian_tolerance(direct));
}

TEST_CASE("quadratic Hamiltonians with linear dissipators give quadratic Liouvillians") {
  const LindbladModel m = model_of({1, 2, 2}, "ad[1]*a[1] + 0.3*cd[1]*c[2] + 0.3*cd[2]*c[1]",
                                   {"0.4*a[1]", "0.2*c[2]", "0.1*cd[1]"});
  CHECK(liouvillian_symbolic(m).degree() == 2);
  const LindbladModel cubic = testing_support::fermi_bose_model();
  CHECK(liouvillian_symbolic(cubic).degree() == 3);
}

TEST_CASE("property: third-quantized and direct Liouvillians agree") {
  Rng rng(2718);
  for (int trial = 0; trial < 40; ++trial) {
    const LindbladModel m = testing_support::random_model(rng, testing_support::random_config(rng, 64));
    const SparseMatrix direct = liouvillian_direct(m);
    CAPTURE(m.hamiltonian.to_string());
    CHECK(max_abs(SparseMatrix(liouvillian_thirdq(m) - direct)) <= liouvillian_tolerance(direct));
    CHECK(trace_preservation_defect(direct) <= 1e-10 * std::max(1.0, max_abs(direct)));
  }
}

TEST_CASE("property: the generator maps Hermitian operators to Hermitian operators") {
  Rng rng(1618);
  for (int trial = 0; trial < 20; ++trial) {
    const LindbladModel m = testing_support::random_model(rng, testing_support::random_config(rng, 32));
    const auto d = static_cast<Eigen::Index>(m.space().dimension());
    const SparseMatrix l = liouvillian_direct(m);
    const CMatrix out = devectorize(CVector(l * vectorize(rng.hermitian(d))));
    CHECK(max_abs(CMatrix(out - out.adjoint())) <= 1e-10);
  }
}

TEST_CASE("evolve: stationary number state") {
  const LindbladModel m = model_of({1, 0, 4}, "ad[1]*a[1]");
  const FockSpace fs = m.space();
  CMatrix rho0 = CMatrix::Zero(5, 5);
  rho0(1, 1) = 1.0;
  std::vector<double> times;
  for (int k = 0; k <= 10; ++k) times.push_back(0.3 * k);
  const EvolutionResult r = evolve(m, rho0, times, {parse_polynomial("ad[1]*a[1]")});
  for (Eigen::Index k = 0; k < r.expectations.cols(); ++k) CHECK(std::abs(r.expectations(0, k) - 1.0) < 1e-12);
  CHECK(max_abs(CMatrix(r.final_state - rho0)) < 1e-12);
}

TEST_CASE("evolve: damped boson decays at twice the coupling rate") {
  const double gamma = 0.5;
  for (int cutoff : {12, 40}) {  // dense exponential, then Krylov
    const LindbladModel m = model_of({1, 0, cutoff}, "", {"0.7071067811865476*a[1]"});
    const FockSpace fs = m.space();
    const auto d = static_cast<Eigen::Index>(fs.dimension());
    CMatrix rho0 = CMatrix::Zero(d, d);
    rho0(3, 3) = 1.0;
    std::vector<double> times;
    for (int k = 0; k <= 40; ++k) times.push_back(0.1 * k);
    const EvolutionResult r = evolve(m, rho0, times, {parse_polynomial("ad[1]*a[1]")});
    CAPTURE(cutoff);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double want = 3.0 * std::exp(-2.0 * gamma * times[k]);
      CHECK(std::abs(r.expectations(0, static_cast<Eigen::Index>(k)).real() - want) <= 1e-6 * want);
    }
    CHECK(r.trace_drift <= 1e-10);
    CHECK(r.min_eigenvalue >= -1e-8);
    CHECK(r.hermiticity_defect <= 1e-10);
  }
}

TEST_CASE("evolve rejects bad input") {
  const LindbladModel m = model_of({1, 0, 2}, "ad[1]*a[1]");
  const CMatrix good = CMatrix::Identity(3, 3) / 3.0;
  CHECK_THROWS_AS(evolve(m, CMatrix::Identity(3, 3), {0.0, 1.0}, {}), ParameterError);
  CMatrix skew = good;
  skew(0, 1) = kI;
  CHECK_THROWS_AS(evolve(m, skew, {0.0, 1.0}, {}), ParameterError);
  CHECK_THROWS_AS(evolve(m, good, {0.0, 1.0, 1.0}, {}), ParameterError);
  CHECK_THROWS_AS(evolve(m, good, {-1.0, 1.0}, {}), ParameterError);
  CHECK_THROWS_AS(evolve(m, CMatrix::Identity(2, 2) / 2.0, {0.0}, {}), DimensionError);
}

TEST_CASE("steady states") {
  const SteadyState boson = steady_state(model_of({1, 0, 12}, "ad[1]*a[1]", {"0.7071067811865476*a[1]"}));
  CHECK(fidelity_with_basis_state(boson.rho, 0) >= 1.0 - 1e-8);
  CHECK(boson.residual <= 1e-10);
  CHECK(boson.second_singular_value > 1e-8);

  const SteadyState damped = steady_state(model_of({0, 1, 1}, "", {"0.8*c[1]"}));
  CHECK(fidelity_with_basis_state(damped.rho, 0) >= 1.0 - 1e-8);

  const SteadyState pumped = steady_state(model_of({0, 1, 1}, "0.5*cd[1]*c[1]", {"cd[1]"}));
  CHECK(fidelity_with_basis_state(pumped.rho, 1) >= 1.0 - 1e-8);
  CHECK(pumped.residual <= 1e-10);
  CHECK(std::abs(pumped.rho.trace() - 1.0) < 1e-12);
  CHECK(max_abs(CMatrix(pumped.rho - pumped.rho.adjoint())) <= 1e-10);

  // Number conservation leaves one stationary state per occupation.
  CHECK_THROWS_AS(steady_state(model_of({1, 0, 3}, "ad[1]*a[1]")), DegenerateSteadyStateError);
  CHECK_THROWS_AS(steady_state(model_of({0, 2, 1}, "", {"c[1]"})), DegenerateSteadyStateError);
}

TEST_CASE("expectation values") {
  const FockSpace fs({1, 0, 3});
  Rng rng(4);
  const CMatrix rho = rng.density(4);
  CHECK(std::abs(expectation(OperatorPolynomial::identity(), rho, fs) - 1.0) < 1e-14);
  CMatrix two = CMatrix::Zero(4, 4);
  two(2, 2) = 1.0;
  CHECK(std::abs(expectation(parse_polynomial("ad[1]*a[1]"), two, fs) - 2.0) < 1e-14);
  CHECK_THROWS_AS(expectation(OperatorPolynomial::identity(), CMatrix::Identity(2, 2), fs), DimensionError);

  const FockSpace mixed({1, 1, 2});
  const OperatorPolynomial obs = parse_polynomial("ad[1]*a[1] + (0.5*cd[1]*a[1]*c[1]) + h.c. + 2*cd[1]*c[1]");
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix h = rng.hermitian(6);
    const Complex got = expectation(obs, h, mixed);
    const Complex want = operator_pairing(vectorize(h), vectorize(mixed.build(obs)));
    CHECK(std::abs(got - want) < 1e-12);
  }
}

#pragma once

#include <vector>

#include "dualspace/fock.hpp"
#include "dualspace/map_expression.hpp"
#include "dualspace/operator_polynomial.hpp"
#include "dualspace/types.hpp"

namespace dualspace {

/// drho/dt = -i[H, rho] + sum_m (2 L_m rho L_m* - {L_m* L_m, rho}).
struct LindbladModel {
  FockConfig config;
  OperatorPolynomial hamiltonian;
  std::vector<OperatorPolynomial> lindblad_ops;
  std::size_t max_dim = kDefaultMaxDimension;

  /// Mode indices (ParameterError), fermionic evenness of H (ParityError),
  /// hermiticity of the built H within 1e-12 (ModelError), size (SizeError).
  void validate() const;
  FockSpace space() const { return FockSpace(config, max_dim); }
};

/// Kronecker assembly straight from the master equation:
/// -i(I (x) H - H^T (x) I) + sum (2 conj(L) (x) L - I (x) L*L - (L*L)^T (x) I).
SparseMatrix liouvillian_direct(const LindbladModel& model);

/// -i H^L + i H^R + sum_m (2 L_m^L (L_m*)^R - (L_m* L_m)^L - (L_m* L_m)^R) in
/// canonical maps. (L* L)^R is the map x -> x L* L.
MapExpression liouvillian_symbolic(const LindbladModel& model);

/// liouvillian_symbolic evaluated on the canonical map matrices.
SparseMatrix liouvillian_thirdq(const LindbladModel& model);

/// max |vec(I)^dagger L|, zero for a trace preserving generator.
double trace_preservation_defect(const SparseMatrix& liouvillian);

/// Tolerance used for "machine exact" equality of two Liouvillians.
double liouvillian_tolerance(const SparseMatrix& reference);

struct EvolutionResult {
  std::vector<double> times;
  /// Row o, column k: expectation of observable o at times[k].
  CMatrix expectations;
  /// |tr rho(t) - 1| at each sample time.
  std::vector<double> trace_errors;
  double trace_drift = 0.0;
  double min_eigenvalue = 0.0;
  double hermiticity_defect = 0.0;
  CMatrix final_state;
};

/// Propagates rho0 through the sample times (strictly increasing, first one
/// >= 0, rho0 taken at t = 0). Uses a dense matrix exponential when D^2 <=
/// 1024 and a Krylov exponential action otherwise.
/// Throws ParameterError for a bad rho0 or time grid and IntegrationError when
/// the trace drifts by more than 1e-6.
EvolutionResult evolve(const LindbladModel& model, const CMatrix& rho0,
                       const std::vector<double>& times,
                       const std::vector<OperatorPolynomial>& observables);

struct SteadyState {
  CMatrix rho;
  /// ||L vec(rho)||_2.
  double residual = 0.0;
  /// Estimate of the second smallest singular value of L.
  double second_singular_value = 0.0;
};

/// Null vector of L by shifted inverse iteration, normalized to unit trace and
/// made Hermitian. Throws DegenerateSteadyStateError when the second smallest
/// singular value is not above 1e-8.
SteadyState steady_state(const LindbladModel& model);

/// tr(rho O) with O built from `obs`.
Complex expectation(const OperatorPolynomial& obs, const CMatrix& rho, const FockSpace& space);

}  // namespace dualspace

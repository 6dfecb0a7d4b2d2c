#pragma once

#include <cstddef>
#include <vector>

#include "dualspace/dual_pair.hpp"
#include "dualspace/types.hpp"

namespace dualspace {

/// Normalized Hermite function phi_m(q) = [2^m m! sqrt(pi)]^{-1/2} e^{-q^2/2} H_m(q),
/// evaluated with the normalized three-term recurrence so that no factorial
/// or H_m(q) is ever formed explicitly.
double hermite_function(int m, double q);

/// phi_0(q) .. phi_max_degree(q) in one pass of the recurrence.
std::vector<double> hermite_functions(int max_degree, double q);

/// Gauss-Hermite rule for the weight e^{-q^2} on the real line.
///
/// `weights` integrate against e^{-q^2}; `scaled_weights` are w_k e^{x_k^2} and
/// integrate plain functions, sum_k scaled_weights[k] f(x_k) ~ int f(q) dq.
/// The scaled weights are computed directly as 1 / sum_m phi_m(x_k)^2, so they
/// never pass through e^{x_k^2}.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;

  std::size_t size() const { return nodes.size(); }
  /// Highest polynomial degree integrated exactly against e^{-q^2}.
  std::size_t exactness_degree() const { return 2 * nodes.size() - 1; }
};

QuadratureRule gauss_hermite_rule(std::size_t n);

/// A(z, q) = pi^{-1/4} exp(-(z^2 + q^2)/2 + sqrt(2) z q).
Complex bargmann_kernel(Complex z, double q);

/// Partial sum sum_{n <= terms} phi_n(q) z^n / sqrt(n!) of the generating series.
Complex bargmann_generating_sum(Complex z, double q, int terms);

struct GeneratingResidual {
  double max_residual = 0.0;
  Complex z{0.0, 0.0};
  double q = 0.0;
};

/// Largest |A(z, q) - partial sum| over Re z, Im z in [-z_extent, z_extent]
/// and q in [-q_extent, q_extent], all on a grid of the given step.
GeneratingResidual generating_identity_residual(int terms, double z_extent = 1.0,
                                                double q_extent = 3.0, double step = 0.25);

/// Element of the Bargmann space expanded in the monomials z^m / sqrt(m!).
class BargmannVector {
 public:
  BargmannVector() = default;
  explicit BargmannVector(CoefficientVector coeffs) : coeffs_(std::move(coeffs)) {}

  const CoefficientVector& coeffs() const { return coeffs_; }
  std::size_t truncation_dim() const { return coeffs_.truncation_dim(); }

  /// F(z) = sum_m c_m z^m / sqrt(m!).
  Complex evaluate(Complex z) const;

 private:
  CoefficientVector coeffs_;
};

/// f(q) = sum_n c_n phi_n(q).
Complex hermite_series(const CoefficientVector& coeffs, double q);

/// Largest entry of |Gram - I| for phi_0..phi_max_degree under the rule.
double hermite_gram_defect(int max_degree, const QuadratureRule& rule);

/// Rows: monomial index m; columns: quadrature node k. Entry m,k is the
/// coefficient of z^m / sqrt(m!) in A(z, x_k), extracted from the kernel by a
/// discrete Cauchy integral on a circle of radius sqrt(m).
CMatrix bargmann_kernel_projection(std::size_t dim, const QuadratureRule& rule);

/// Default node count used when a caller does not supply a rule.
std::size_t default_bargmann_nodes(std::size_t dim);

/// Integral transform with the Bargmann kernel, projected on the monomials.
/// Throws AccuracyError when the rule cannot resolve the Hermite basis of
/// this truncation (Gram defect above 1e-8).
BargmannVector forward_transform(const CoefficientVector& f, const QuadratureRule& rule);

/// Coefficient-level inverse of forward_transform.
CoefficientVector inverse_transform(const BargmannVector& F);

/// <F, G> = int conj(F) G e^{-|z|^2} / pi d^2z = sum_m conj(F_m) G_m.
Complex bargmann_inner_product(const BargmannVector& F, const BargmannVector& G);

/// G[i][j] = pairing of phi_i with z^j / sqrt(j!), computed by transforming
/// phi_i and taking the Bargmann inner product with the monomial.
CMatrix biorthonormality_matrix(std::size_t dim, const QuadratureRule& rule);

}  // namespace dualspace

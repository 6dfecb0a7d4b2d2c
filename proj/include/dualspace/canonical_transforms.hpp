#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>

#include "dualspace/bargmann.hpp"
#include "dualspace/types.hpp"

namespace dualspace {

/// Complex 2x2 matrix [[a, b], [c, d]] with ad - bc = 1 acting on (p, q).
struct SymplecticMatrixC {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  Complex c{0.0, 0.0};
  Complex d{1.0, 0.0};

  /// Validating constructor; throws ParameterError when |ad - bc - 1| > tol.
  static SymplecticMatrixC make(Complex a, Complex b, Complex c, Complex d, double tol = 1e-12);

  static SymplecticMatrixC rotation(double theta);
  static SymplecticMatrixC fourier();
  static SymplecticMatrixC bargmann();

  Complex determinant() const { return a * d - b * c; }
  SymplecticMatrixC operator*(const SymplecticMatrixC& rhs) const;
  double distance(const SymplecticMatrixC& other) const;
};

/// K(q', q) = norm * exp(A q'^2 + B q' q + C q^2).
struct GaussianKernel {
  Complex norm{1.0, 0.0};
  Complex A{0.0, 0.0};
  Complex B{0.0, 0.0};
  Complex C{0.0, 0.0};

  Complex operator()(Complex q_out, Complex q_in) const;
  bool finite() const;
  /// Largest coefficient difference, ignoring norm.
  double shape_distance(const GaussianKernel& other) const;
};

/// Asymptotics exp(beta |r|^nu). Only nu = 2 is supported.
struct GrowthClass {
  double beta = 0.0;
  int nu = 2;
};

enum class Table1Transform { MargenauBrink, Hackenbroich, SunkelWildermuth };

/// Accepts "MB", "H", "SW" (case sensitive). Throws ParameterError otherwise.
Table1Transform parse_table1_name(std::string_view name);
std::string_view table1_name(Table1Transform t);

/// Open interval (lower, upper); upper may be +infinity.
struct Interval {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x > lower && x < upper; }
};

/// (2 pi b)^{-1/2} exp[-(i/2)(q'^2 d/b - 2 q' q / b + q^2 a/b)], principal root.
/// Throws DegenerateKernelError when |b| <= 1e-12.
GaussianKernel kernel_from_matrix(const SymplecticMatrixC& s);

struct MatrixExtraction {
  SymplecticMatrixC matrix;
  /// norm / (2 pi b)^{-1/2}: the phase and normalization left over.
  Complex residual{1.0, 0.0};
};

/// Inverts kernel_from_matrix: b = i/B, d = 2iAb, a = 2iCb, c = (ad - 1)/b.
MatrixExtraction matrix_from_kernel(const GaussianKernel& k);

/// How compose treats a folding integral whose q''^2 coefficient s has
/// Re(s) = 0. Strict rejects it; Oscillatory accepts it as a Fresnel integral
/// (the Re(s) -> 0- limit) as long as s itself is not zero.
enum class FoldingPolicy { Strict, Oscillatory };

/// (K1 o K2)(q', q) = int dq'' K1(q', q'') K2(q'', q), in closed form.
/// Represents the matrix product S1 * S2. Throws DivergentIntegralError when
/// the folding integral does not converge under the policy.
GaussianKernel compose(const GaussianKernel& k1, const GaussianKernel& k2,
                       FoldingPolicy policy = FoldingPolicy::Oscillatory);

GaussianKernel table1_kernel(Table1Transform t, double alpha);

/// Interval for beta in the input asymptotics e^{-beta q'^2} that the table
/// lists as admissible for the transform.
Interval table1_admissible_range(Table1Transform t, double alpha);

/// Output exponent of int K(q', q) e^{beta q'^2} dq', by completing the
/// square: Re(C - B^2 / (4 (A + beta))). Requires Re(A) + beta < 0.
GrowthClass image_decay(const GaussianKernel& k, const GrowthClass& input);

/// Matrix elements of a Gaussian kernel between normalized Hermite functions.
class TruncatedRepresentation {
 public:
  explicit TruncatedRepresentation(CMatrix elements) : elements_(std::move(elements)) {}

  const CMatrix& elements() const { return elements_; }
  std::size_t dim() const { return static_cast<std::size_t>(elements_.rows()); }

  /// max |M^dagger M - I| on the leading block x block corner.
  double isometry_defect(std::size_t block) const;

 private:
  CMatrix elements_;
};

/// M[i][j] = int int phi_i(q') K(q', q) phi_j(q) dq' dq. The q integral is
/// done in closed form (Gaussian times Hermite polynomial), the q' integral
/// with the rule rescaled to the Gaussian envelope of the integrand.
TruncatedRepresentation truncated_matrix_elements(const GaussianKernel& k, std::size_t dim,
                                                  const QuadratureRule& rule);

}  // namespace dualspace

#include "dualspace/canonical_transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dualspace/errors.hpp"

namespace dualspace {

namespace {

constexpr double kDegenerateB = 1e-12;
constexpr double kConvergenceMargin = 1e-10;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

SymplecticMatrixC SymplecticMatrixC::make(Complex a, Complex b, Complex c, Complex d, double tol) {
  SymplecticMatrixC s{a, b, c, d};
  if (!(std::abs(s.determinant() - 1.0) <= tol)) {
    throw ParameterError("matrix is not symplectic: ad - bc = " +
                         std::to_string(s.determinant().real()) + " + " +
                         std::to_string(s.determinant().imag()) + "i");
  }
  return s;
}

SymplecticMatrixC SymplecticMatrixC::rotation(double theta) {
  return {std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta)};
}

SymplecticMatrixC SymplecticMatrixC::fourier() { return {0.0, 1.0, -1.0, 0.0}; }

SymplecticMatrixC SymplecticMatrixC::bargmann() {
  const double r2 = std::sqrt(2.0);
  return {r2, kI / r2, -kI * r2, r2};
}

SymplecticMatrixC SymplecticMatrixC::operator*(const SymplecticMatrixC& r) const {
  return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
}

double SymplecticMatrixC::distance(const SymplecticMatrixC& o) const {
  return std::max({std::abs(a - o.a), std::abs(b - o.b), std::abs(c - o.c), std::abs(d - o.d)});
}

Complex GaussianKernel::operator()(Complex q_out, Complex q_in) const {
  return norm * std::exp(A * q_out * q_out + B * q_out * q_in + C * q_in * q_in);
}

bool GaussianKernel::finite() const {
  return dualspace::finite(norm) && dualspace::finite(A) && dualspace::finite(B) &&
         dualspace::finite(C);
}

double GaussianKernel::shape_distance(const GaussianKernel& o) const {
  return std::max({std::abs(A - o.A), std::abs(B - o.B), std::abs(C - o.C)});
}

Table1Transform parse_table1_name(std::string_view name) {
  if (name == "MB") return Table1Transform::MargenauBrink;
  if (name == "H") return Table1Transform::Hackenbroich;
  if (name == "SW") return Table1Transform::SunkelWildermuth;
  throw ParameterError("unknown transform name '" + std::string(name) + "' (expected MB, H or SW)");
}

std::string_view table1_name(Table1Transform t) {
  switch (t) {
    case Table1Transform::MargenauBrink:
      return "MB";
    case Table1Transform::Hackenbroich:
      return "H";
    case Table1Transform::SunkelWildermuth:
      return "SW";
  }
  return "?";
}

GaussianKernel kernel_from_matrix(const SymplecticMatrixC& s) {
  if (std::abs(s.b) <= kDegenerateB) {
    throw DegenerateKernelError(
        "b = 0: the transformation is a point transformation, not a Gaussian kernel");
  }
  GaussianKernel k;
  k.norm = 1.0 / std::sqrt(2.0 * kPi * s.b);
  k.A = -0.5 * kI * (s.d / s.b);
  k.B = kI / s.b;
  k.C = -0.5 * kI * (s.a / s.b);
  return k;
}

MatrixExtraction matrix_from_kernel(const GaussianKernel& k) {
  if (std::abs(k.B) <= kDegenerateB) {
    throw DegenerateKernelError("kernel has no q'q cross term; no matrix with b != 0 represents it");
  }
  SymplecticMatrixC s;
  s.b = kI / k.B;
  s.d = 2.0 * kI * k.A * s.b;
  s.a = 2.0 * kI * k.C * s.b;
  s.c = (s.a * s.d - 1.0) / s.b;
  return {s, k.norm * std::sqrt(2.0 * kPi * s.b)};
}

GaussianKernel compose(const GaussianKernel& k1, const GaussianKernel& k2, FoldingPolicy policy) {
  const Complex s = k1.C + k2.A;
  const bool decaying = s.real() < -kConvergenceMargin;
  const bool fresnel = std::abs(s.real()) <= kConvergenceMargin &&
                       std::abs(s.imag()) > kConvergenceMargin;
  if (!decaying && !(policy == FoldingPolicy::Oscillatory && fresnel)) {
    throw DivergentIntegralError("folding integral diverges: q''^2 coefficient " +
                                 std::to_string(s.real()) + " + " + std::to_string(s.imag()) +
                                 "i");
  }
  GaussianKernel out;
  out.norm = k1.norm * k2.norm * std::sqrt(kPi / (-s));
  out.A = k1.A - k1.B * k1.B / (4.0 * s);
  out.B = -k1.B * k2.B / (2.0 * s);
  out.C = k2.C - k2.B * k2.B / (4.0 * s);
  return out;
}

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("alpha must be a positive finite number");
  }
}

}  // namespace

GaussianKernel table1_kernel(Table1Transform t, double alpha) {
  require_alpha(alpha);
  switch (t) {
    case Table1Transform::MargenauBrink:  // e^{-alpha (q' - q)^2}
      return {1.0, -alpha, 2.0 * alpha, -alpha};
    case Table1Transform::Hackenbroich:  // e^{-alpha q'^2 / 2 + 2i q' q + (1 - alpha) q^2}
      return {1.0, -0.5 * alpha, 2.0 * kI, 1.0 - alpha};
    case Table1Transform::SunkelWildermuth:  // e^{-alpha (q' - i q)^2}
      return {1.0, -alpha, 2.0 * kI * alpha, alpha};
  }
  throw ParameterError("unknown transform");
}

Interval table1_admissible_range(Table1Transform t, double alpha) {
  require_alpha(alpha);
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (t) {
    case Table1Transform::MargenauBrink:
      return {0.0, alpha};
    case Table1Transform::Hackenbroich:
      return {0.5 * alpha, inf};
    case Table1Transform::SunkelWildermuth:
      return {alpha, inf};
  }
  throw ParameterError("unknown transform");
}

GrowthClass image_decay(const GaussianKernel& k, const GrowthClass& input) {
  if (input.nu != 2) {
    throw ParameterError("only Gaussian growth (nu = 2) is supported, got nu = " +
                         std::to_string(input.nu));
  }
  const Complex quad = k.A + input.beta;
  if (!(quad.real() < -kConvergenceMargin)) {
    throw DivergentIntegralError("q'^2 coefficient Re(A) + beta = " + std::to_string(quad.real()) +
                                 " is not negative");
  }
  const Complex out = k.C - k.B * k.B / (4.0 * quad);
  return {out.real(), 2};
}

double TruncatedRepresentation::isometry_defect(std::size_t block) const {
  const auto b = static_cast<Eigen::Index>(std::min(block, dim()));
  const CMatrix cols = elements_.leftCols(b);
  const CMatrix gram = cols.adjoint() * cols;
  return max_abs(CMatrix(gram - CMatrix::Identity(b, b)));
}

TruncatedRepresentation truncated_matrix_elements(const GaussianKernel& k, std::size_t dim,
                                                  const QuadratureRule& rule) {
  // Inner integral over q with s = C - 1/2:
  //   int e^{C q^2 + B q' q} phi_j(q) dq
  //     = pi^{-1/4} sqrt(pi / -s) e^{-B^2 q'^2 / (4s)} psi_j(lambda),
  // where psi_j are the Hermite polynomials of the generating function
  // e^{lambda w - kappa w^2}, normalized by sqrt(2^j j!), lambda = -B q'/s,
  // kappa = 1 + 1/s.
  const Complex s = k.C - 0.5;
  if (!(s.real() < -kConvergenceMargin)) {
    throw DivergentIntegralError("kernel grows in q faster than the Hermite functions decay");
  }
  const Complex envelope = -0.5 + k.A - k.B * k.B / (4.0 * s);
  if (!(envelope.real() < -kConvergenceMargin)) {
    throw DivergentIntegralError("kernel grows in q' faster than the Hermite functions decay");
  }
  const Complex kappa = 1.0 + 1.0 / s;
  const Complex prefactor = k.norm * std::pow(kPi, -0.25) * std::sqrt(kPi / (-s));

  // Outer integral: rescale q' = t / sigma so the real part of the envelope
  // becomes the e^{-t^2} weight of the rule.
  const double sigma = std::sqrt(-envelope.real());
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix m = CMatrix::Zero(n, n);
  std::vector<double> p(dim);
  std::vector<Complex> psi(dim);
  const double pi_quarter_inv = std::pow(kPi, -0.25);
  for (std::size_t node = 0; node < rule.size(); ++node) {
    const double t = rule.nodes[node];
    const double qp = t / sigma;

    // Orthonormal Hermite polynomials (phi_i without the Gaussian factor).
    p[0] = pi_quarter_inv;
    if (dim > 1) p[1] = std::sqrt(2.0) * qp * p[0];
    for (std::size_t i = 1; i + 1 < dim; ++i) {
      const double id = static_cast<double>(i);
      p[i + 1] = qp * std::sqrt(2.0 / (id + 1.0)) * p[i] - std::sqrt(id / (id + 1.0)) * p[i - 1];
    }

    const Complex lambda = -k.B * qp / s;
    psi[0] = 1.0;
    if (dim > 1) psi[1] = lambda / std::sqrt(2.0);
    for (std::size_t j = 1; j + 1 < dim; ++j) {
      const double jd = static_cast<double>(j);
      psi[j + 1] = lambda / std::sqrt(2.0 * (jd + 1.0)) * psi[j] -
                   kappa * std::sqrt(jd / (jd + 1.0)) * psi[j - 1];
    }

    const Complex w = rule.weights[node] / sigma * prefactor *
                      std::exp(kI * envelope.imag() * qp * qp);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += w * p[i] * psi[j];
      }
    }
  }
  return TruncatedRepresentation(std::move(m));
}

}  // namespace dualspace

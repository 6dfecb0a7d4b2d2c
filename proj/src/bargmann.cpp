#include "dualspace/bargmann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dualspace/errors.hpp"

namespace dualspace {

namespace {

constexpr double kGramTolerance = 1e-8;

const double kPiQuarterInv = std::pow(kPi, -0.25);

}  // namespace

std::vector<double> hermite_functions(int max_degree, double q) {
  if (max_degree < 0) throw ParameterError("Hermite degree must be nonnegative");
  std::vector<double> phi(static_cast<std::size_t>(max_degree) + 1);
  phi[0] = kPiQuarterInv * std::exp(-0.5 * q * q);
  if (max_degree >= 1) phi[1] = std::sqrt(2.0) * q * phi[0];
  for (int m = 1; m < max_degree; ++m) {
    const double md = m;
    phi[m + 1] = q * std::sqrt(2.0 / (md + 1.0)) * phi[m] - std::sqrt(md / (md + 1.0)) * phi[m - 1];
  }
  return phi;
}

double hermite_function(int m, double q) { return hermite_functions(m, q).back(); }

QuadratureRule gauss_hermite_rule(std::size_t n) {
  if (n == 0) throw ParameterError("Gauss-Hermite rule needs at least one node");
  const auto size = static_cast<Eigen::Index>(n);

  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of the
  // orthonormal Hermite polynomials.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index k = 1; k < size; ++k) {
    const double beta = std::sqrt(static_cast<double>(k) / 2.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  std::vector<double> x(solver.eigenvalues().data(), solver.eigenvalues().data() + size);
  std::sort(x.begin(), x.end());

  const int deg = static_cast<int>(n);
  for (auto& node : x) {
    // Newton polish on phi_n, whose zeros are the nodes.
    for (int it = 0; it < 3; ++it) {
      const auto phi = hermite_functions(deg, node);
      const double value = phi[n];
      const double slope = std::sqrt(2.0 * deg) * phi[n - 1] - node * value;
      if (slope == 0.0) break;
      node -= value / slope;
    }
  }
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double s = 0.5 * (x[n - 1 - k] - x[k]);
    x[k] = -s;
    x[n - 1 - k] = s;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;

  QuadratureRule rule;
  rule.nodes = x;
  rule.weights.resize(n);
  rule.scaled_weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto phi = hermite_functions(deg - 1, x[k]);
    double s = 0.0;
    for (double p : phi) s += p * p;
    rule.scaled_weights[k] = 1.0 / s;
    rule.weights[k] = std::exp(-x[k] * x[k]) / s;
  }
  return rule;
}

Complex bargmann_kernel(Complex z, double q) {
  return kPiQuarterInv * std::exp(-0.5 * (z * z + q * q) + std::sqrt(2.0) * z * q);
}

Complex bargmann_generating_sum(Complex z, double q, int terms) {
  const auto phi = hermite_functions(terms, q);
  Complex sum{0.0, 0.0};
  Complex zpow{1.0, 0.0};
  for (int n = 0; n <= terms; ++n) {
    if (n > 0) zpow *= z / std::sqrt(static_cast<double>(n));
    sum += phi[static_cast<std::size_t>(n)] * zpow;
  }
  return sum;
}

GeneratingResidual generating_identity_residual(int terms, double z_extent, double q_extent,
                                                double step) {
  GeneratingResidual worst;
  const auto count = [step](double extent) { return static_cast<int>(std::llround(extent / step)); };
  const int nz = count(z_extent);
  const int nq = count(q_extent);
  for (int ix = -nz; ix <= nz; ++ix) {
    for (int iy = -nz; iy <= nz; ++iy) {
      const Complex z(ix * step, iy * step);
      for (int iq = -nq; iq <= nq; ++iq) {
        const double q = iq * step;
        const double r = std::abs(bargmann_kernel(z, q) - bargmann_generating_sum(z, q, terms));
        if (r > worst.max_residual) worst = {r, z, q};
      }
    }
  }
  return worst;
}

Complex BargmannVector::evaluate(Complex z) const {
  Complex sum{0.0, 0.0};
  Complex zpow{1.0, 0.0};
  const auto& c = coeffs_.entries();
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (m > 0) zpow *= z / std::sqrt(static_cast<double>(m));
    sum += c[m] * zpow;
  }
  return sum;
}

Complex hermite_series(const CoefficientVector& coeffs, double q) {
  if (coeffs.truncation_dim() == 0) return {0.0, 0.0};
  const auto phi = hermite_functions(static_cast<int>(coeffs.truncation_dim()) - 1, q);
  Complex sum{0.0, 0.0};
  for (std::size_t n = 0; n < phi.size(); ++n) sum += coeffs[n] * phi[n];
  return sum;
}

namespace {

// Phi(k, n) = phi_n(x_k).
Eigen::MatrixXd hermite_table(int max_degree, const QuadratureRule& rule) {
  Eigen::MatrixXd table(static_cast<Eigen::Index>(rule.size()), max_degree + 1);
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const auto phi = hermite_functions(max_degree, rule.nodes[k]);
    for (int n = 0; n <= max_degree; ++n) table(static_cast<Eigen::Index>(k), n) = phi[n];
  }
  return table;
}

Eigen::VectorXd scaled_weight_vector(const QuadratureRule& rule) {
  return Eigen::Map<const Eigen::VectorXd>(rule.scaled_weights.data(),
                                           static_cast<Eigen::Index>(rule.size()));
}

void require_resolving_rule(std::size_t dim, const QuadratureRule& rule) {
  if (dim == 0) return;
  const double defect = hermite_gram_defect(static_cast<int>(dim) - 1, rule);
  if (!(defect <= kGramTolerance)) {
    throw AccuracyError("quadrature rule with " + std::to_string(rule.size()) +
                        " nodes cannot resolve " + std::to_string(dim) +
                        " Hermite functions (Gram defect " + std::to_string(defect) + ")");
  }
}

}  // namespace

double hermite_gram_defect(int max_degree, const QuadratureRule& rule) {
  const Eigen::MatrixXd phi = hermite_table(max_degree, rule);
  const Eigen::MatrixXd gram = phi.transpose() * scaled_weight_vector(rule).asDiagonal() * phi;
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

std::size_t default_bargmann_nodes(std::size_t dim) { return std::max<std::size_t>(64, 2 * dim); }

CMatrix bargmann_kernel_projection(std::size_t dim, const QuadratureRule& rule) {
  const auto rows = static_cast<Eigen::Index>(dim);
  const auto cols = static_cast<Eigen::Index>(rule.size());
  CMatrix proj(rows, cols);
  const int points = 128 + 2 * static_cast<int>(dim);
  for (Eigen::Index m = 0; m < rows; ++m) {
    const double md = static_cast<double>(m);
    // |A| on |z| = r is at most pi^{-1/4} e^{r^2/2}; r = sqrt(m) balances that
    // against r^m so the extracted coefficient keeps full relative precision.
    const double radius = m == 0 ? 1.0 : std::sqrt(md);
    const double scale = std::exp(0.5 * std::lgamma(md + 1.0) - md * std::log(radius));
    for (Eigen::Index k = 0; k < cols; ++k) {
      const double q = rule.nodes[static_cast<std::size_t>(k)];
      Complex acc{0.0, 0.0};
      for (int p = 0; p < points; ++p) {
        const double theta = 2.0 * kPi * p / points;
        const Complex z = std::polar(radius, theta);
        acc += bargmann_kernel(z, q) * std::polar(1.0, -md * theta);
      }
      proj(m, k) = scale * acc / static_cast<double>(points);
    }
  }
  return proj;
}

BargmannVector forward_transform(const CoefficientVector& f, const QuadratureRule& rule) {
  const std::size_t dim = f.truncation_dim();
  if (dim == 0) return BargmannVector(CoefficientVector{});
  require_resolving_rule(dim, rule);

  const Eigen::MatrixXd phi = hermite_table(static_cast<int>(dim) - 1, rule);
  const CVector values = phi.cast<Complex>() * f.to_eigen();
  const CVector weighted = scaled_weight_vector(rule).cast<Complex>().cwiseProduct(values);
  const CVector coeffs = bargmann_kernel_projection(dim, rule) * weighted;
  return BargmannVector(CoefficientVector(coeffs));
}

CoefficientVector inverse_transform(const BargmannVector& F) { return F.coeffs(); }

Complex bargmann_inner_product(const BargmannVector& F, const BargmannVector& G) {
  if (F.truncation_dim() != G.truncation_dim()) {
    throw DimensionError("Bargmann vectors of different truncation: " +
                         std::to_string(F.truncation_dim()) + " vs " +
                         std::to_string(G.truncation_dim()));
  }
  Complex sum{0.0, 0.0};
  for (std::size_t m = 0; m < F.truncation_dim(); ++m) {
    sum += std::conj(F.coeffs()[m]) * G.coeffs()[m];
  }
  return sum;
}

CMatrix biorthonormality_matrix(std::size_t dim, const QuadratureRule& rule) {
  if (dim == 0) return CMatrix(0, 0);
  require_resolving_rule(dim, rule);

  // Column i is the transform of phi_i; entry (j, i) is its component along
  // z^j / sqrt(j!). The pairing is the Bargmann inner product with the
  // monomial, which conjugates the transformed side.
  const Eigen::MatrixXd phi = hermite_table(static_cast<int>(dim) - 1, rule);
  const CMatrix transformed = bargmann_kernel_projection(dim, rule) *
                              scaled_weight_vector(rule).cast<Complex>().asDiagonal() *
                              phi.cast<Complex>();
  return transformed.adjoint();
}

}  // namespace dualspace

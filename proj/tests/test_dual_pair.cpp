#include <doctest.h>

#include <cmath>

#include "dualspace/dual_pair.hpp"
#include "dualspace/errors.hpp"
#include "support.hpp"

using namespace dualspace;
using testing_support::Rng;

namespace {

PairedVector on(Side side, const CVector& c) { return {side, CoefficientVector(c)}; }
PairedVector unit(Side side, std::size_t dim, std::size_t i) {
  return {side, CoefficientVector::unit(dim, i)};
}

}  // namespace

TEST_CASE("pairing of basis vectors is the delta") {
  const DualPair pair = DualPair::identity(4);
  CHECK(pairing(unit(Side::V, 4, 0), unit(Side::Y, 4, 0), pair) == Complex(1.0, 0.0));
  CHECK(pairing(unit(Side::V, 4, 0), unit(Side::Y, 4, 1), pair) == Complex(0.0, 0.0));
}

TEST_CASE("pairing of geometric coefficients") {
  std::vector<Complex> c;
  for (int i = 1; i <= 20; ++i) c.emplace_back(std::pow(2.0, -i), 0.0);
  const PairedVector v{Side::V, CoefficientVector(c)};
  const PairedVector y{Side::Y, CoefficientVector(c)};
  // sum_{i=1}^{20} 4^{-i} = (1 - 4^{-20}) / 3
  const double closed = (1.0 - std::pow(4.0, -20)) / 3.0;
  const Complex got = pairing(v, y, DualPair::identity(20));
  CHECK(std::abs(got - closed) < 1e-16);
  CHECK(std::abs(got - 1.0 / 3.0) <= std::pow(4.0, -20));
}

TEST_CASE("pairing is bilinear, not sesquilinear") {
  const DualPair pair = DualPair::identity(2);
  const PairedVector v{Side::V, CoefficientVector(std::vector<Complex>{{0, 1}, {0, 0}})};
  const PairedVector y{Side::Y, CoefficientVector(std::vector<Complex>{{0, 1}, {0, 0}})};
  CHECK(pairing(v, y, pair) == Complex(-1.0, 0.0));
}

TEST_CASE("pairing uses the stored matrix") {
  CMatrix g = CMatrix::Identity(3, 3);
  g(0, 1) = 2.0;
  const DualPair pair(g);
  CHECK(pairing(unit(Side::V, 3, 0), unit(Side::Y, 3, 1), pair) == Complex(2.0, 0.0));
  CHECK(pairing(unit(Side::V, 3, 1), unit(Side::Y, 3, 0), pair) == Complex(0.0, 0.0));
}

TEST_CASE("pairing rejects mismatched input") {
  const DualPair pair = DualPair::identity(3);
  CHECK_THROWS_AS(pairing(unit(Side::V, 2, 0), unit(Side::Y, 3, 0), pair), DimensionError);
  CHECK_THROWS_AS(pairing(unit(Side::Y, 3, 0), unit(Side::Y, 3, 0), pair), SideError);
  CHECK_THROWS_AS(DualPair(CMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("adjoint flips side and conjugates") {
  const PairedVector e = adjoint(unit(Side::V, 3, 0));
  CHECK(e.side == Side::Y);
  CHECK(e.coeffs == CoefficientVector::unit(3, 0));

  std::vector<Complex> c(5, Complex{});
  c[3] = {1.0, 1.0};
  const PairedVector x = adjoint(PairedVector{Side::V, CoefficientVector(c)});
  CHECK(x.side == Side::Y);
  CHECK(x.coeffs[3] == Complex(1.0, -1.0));

  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const PairedVector r = on(trial % 2 ? Side::V : Side::Y, rng.vector(7));
    const PairedVector back = adjoint(adjoint(r));
    CHECK(back.side == r.side);
    CHECK(back.coeffs == r.coeffs);
  }
}

TEST_CASE("scalar products") {
  CHECK(scalar_product(unit(Side::V, 3, 0), unit(Side::V, 3, 0)) == Complex(1.0, 0.0));
  CHECK(scalar_product(unit(Side::V, 3, 0), unit(Side::V, 3, 1)) == Complex(0.0, 0.0));
  const PairedVector x{Side::V, CoefficientVector(std::vector<Complex>{{1, 0}, {0, 1}})};
  CHECK(scalar_product(x, x) == Complex(2.0, 0.0));
  CHECK_THROWS_AS(scalar_product(unit(Side::V, 3, 0), unit(Side::Y, 3, 0)), SideError);
  CHECK_THROWS_AS(scalar_product(unit(Side::V, 3, 0), unit(Side::V, 2, 0)), DimensionError);
}

TEST_CASE("conjugated slot depends on the side") {
  CHECK(conjugated_slot(Side::V) == ConjugatedSlot::Second);
  CHECK(conjugated_slot(Side::Y) == ConjugatedSlot::First);
  const CVector a = CVector::Constant(1, Complex(0.0, 1.0));
  const CVector b = CVector::Constant(1, Complex(1.0, 0.0));
  // V: phi^t conj(chi); Y: conj(omega)^t xi
  CHECK(scalar_product(on(Side::V, a), on(Side::V, b)) == Complex(0.0, 1.0));
  CHECK(scalar_product(on(Side::Y, a), on(Side::Y, b)) == Complex(0.0, -1.0));
}

TEST_CASE("isomorphism maps basis to dual basis") {
  const DualPair pair = DualPair::identity(4);
  for (std::size_t j = 0; j < 4; ++j) {
    const PairedVector t = isomorphism_apply(unit(Side::V, 4, j), pair);
    CHECK(t.side == Side::Y);
    CHECK(t.coeffs == CoefficientVector::unit(4, j));
  }
  CHECK_THROWS_AS(isomorphism_apply(unit(Side::Y, 4, 0), pair), SideError);
  CHECK_THROWS_AS(isomorphism_inverse(unit(Side::V, 4, 0), pair), SideError);

  Rng rng(5);
  const PairedVector v = on(Side::V, rng.vector(4));
  const PairedVector tv = isomorphism_apply(v, pair);
  CHECK(isomorphism_inverse(tv, pair).coeffs == v.coeffs);
  CHECK(std::abs(scalar_product(tv, tv) - scalar_product(v, v)) < 1e-12);
}

TEST_CASE("biorthonormality defect") {
  CHECK(biorthonormality_defect(CMatrix::Identity(5, 5)) == 0.0);
  CMatrix g = CMatrix::Identity(5, 5);
  g(1, 2) = 1e-3;
  CHECK(biorthonormality_defect(g) == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK_THROWS_AS(biorthonormality_defect(CMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("property: bilinearity in both slots") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = rng.integer(1, 12);
    const DualPair pair(rng.matrix(n, n));
    const CVector v1 = rng.vector(n), v2 = rng.vector(n), y1 = rng.vector(n), y2 = rng.vector(n);
    const Complex alpha = rng.complex(), beta = rng.complex();
    const Complex lhs = pairing(on(Side::V, alpha * v1 + beta * v2), on(Side::Y, y1), pair);
    const Complex rhs = alpha * pairing(on(Side::V, v1), on(Side::Y, y1), pair) +
                        beta * pairing(on(Side::V, v2), on(Side::Y, y1), pair);
    CHECK(std::abs(lhs - rhs) < 1e-12);
    const Complex lhs2 = pairing(on(Side::V, v1), on(Side::Y, alpha * y1 + beta * y2), pair);
    const Complex rhs2 = alpha * pairing(on(Side::V, v1), on(Side::Y, y1), pair) +
                         beta * pairing(on(Side::V, v1), on(Side::Y, y2), pair);
    CHECK(std::abs(lhs2 - rhs2) < 1e-12);
  }
}

TEST_CASE("property: v x u* equals v . u, Cauchy-Schwarz, isometry of T") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = rng.integer(1, 16);
    const DualPair pair = DualPair::identity(static_cast<std::size_t>(n));
    const PairedVector v = on(Side::V, rng.vector(n));
    const PairedVector u = on(Side::V, rng.vector(n));
    const PairedVector y = on(Side::Y, rng.vector(n));

    CHECK(std::abs(pairing(v, adjoint(u), pair) - scalar_product(v, u)) < 1e-12);

    const PairedVector yv = adjoint(y);
    const double lhs = std::norm(pairing(v, y, pair));
    const double rhs = scalar_product(v, v).real() * scalar_product(yv, yv).real();
    CHECK(lhs <= rhs * (1.0 + 1e-12));

    const PairedVector tv = isomorphism_apply(v, pair);
    const PairedVector tu = isomorphism_apply(u, pair);
    CHECK(std::abs(scalar_product(tv, tu) - std::conj(scalar_product(v, u))) < 1e-12);
    CHECK(std::abs(scalar_product(tv, tv) - scalar_product(v, v)) < 1e-12);
  }
}

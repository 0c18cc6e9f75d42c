#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ptqm/linalg.hpp"
#include "support/oracles.hpp"

using namespace ptqm;
using ptqm::testing::random_diagonalizable_2x2;
using ptqm::testing::random_matrix;
using ptqm::testing::taylor_exp;

namespace {

const Complex kI(0.0, 1.0);

CMatrix parity() { return CMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }

CMatrix c_matrix(double alpha) {
  const double inv = 1.0 / std::cos(alpha);
  return CMatrix(2, 2, {kI * std::sin(alpha) * inv, Complex(inv), Complex(inv),
                        -kI * std::sin(alpha) * inv});
}

}  // namespace

TEST_CASE("matmul basics") {
  const CMatrix m(2, 2, {Complex(1, 2), Complex(3, -1), Complex(0, 1), Complex(-2, 0)});
  CHECK(max_abs_diff(CMatrix::identity(2) * m, m) == 0.0);

  CHECK(max_abs_diff(parity() * parity(), CMatrix::identity(2)) == 0.0);

  // Hand-multiplied closed form: C(pi/6)^2 = I.
  const CMatrix c = c_matrix(kPi / 6.0);
  CHECK(max_abs_diff(c * c, CMatrix::identity(2)) < 1e-15);

  CHECK_THROWS_AS(matmul(CMatrix(2, 2), CMatrix(4, 4)), std::invalid_argument);
  CHECK_THROWS_AS(matvec(CMatrix(2, 2), CVector(4)), std::invalid_argument);
}

TEST_CASE("non-finite entries are rejected") {
  CHECK_THROWS_AS(CVector({Complex(std::nan(""), 0.0)}), std::invalid_argument);
  CHECK_THROWS_AS(CMatrix(1, 1, {Complex(0.0, INFINITY)}), std::invalid_argument);
}

TEST_CASE("tensor products") {
  CHECK(max_abs_diff(tensor(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4)) ==
        0.0);

  // P_4x4 = P_2x2 (x) I_2x2 swaps the first-factor halves.
  const CMatrix p4 = tensor(parity(), CMatrix::identity(2));
  const CMatrix expected(4, 4,
                         {0, 0, 1, 0,  //
                          0, 0, 0, 1,  //
                          1, 0, 0, 0,  //
                          0, 1, 0, 0});
  CHECK(max_abs_diff(p4, expected) == 0.0);

  // (|0> + i|1>)/sqrt(2) outer-producted and tensored with itself.
  const double r = 1.0 / std::sqrt(2.0);
  const CVector plus_y{r, r * kI};
  const CMatrix proj = tensor(outer(plus_y, plus_y), outer(plus_y, plus_y));
  const CMatrix expected_proj =
      Complex(0.25) * CMatrix(4, 4,
                              {Complex(1), -kI, -kI, Complex(-1),  //
                               kI, Complex(1), Complex(1), -kI,    //
                               kI, Complex(1), Complex(1), -kI,    //
                               Complex(-1), kI, kI, Complex(1)});
  CHECK(max_abs_diff(proj, expected_proj) < 1e-15);
}

TEST_CASE("tensor mixed-product identity") {
  std::mt19937_64 rng(7ULL);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = random_matrix(rng, 2), b = random_matrix(rng, 2);
    const CMatrix c = random_matrix(rng, 2), d = random_matrix(rng, 2);
    CHECK(max_abs_diff(tensor(a, b) * tensor(c, d), tensor(a * c, b * d)) < 1e-14);
  }
}

TEST_CASE("eig_2x2 closed forms") {
  const auto diag = eig_2x2(CMatrix(2, 2, {3.0, 0.0, 0.0, 1.0}));
  CHECK(diag[0].value == Complex(3.0));
  CHECK(diag[1].value == Complex(1.0));
  CHECK(max_abs_diff(diag[0].vector, CVector{1.0, 0.0}) < 1e-15);
  CHECK(max_abs_diff(diag[1].vector, CVector{0.0, 1.0}) < 1e-15);

  // H(s=1, alpha=pi/6) has eigenvalues +-cos(pi/6).
  const double a = kPi / 6.0;
  const CMatrix h(2, 2, {kI * std::sin(a), Complex(1.0), Complex(1.0), -kI * std::sin(a)});
  const auto pairs = eig_2x2(h);
  CHECK(std::abs(pairs[0].value - Complex(std::cos(a))) < 1e-14);
  CHECK(std::abs(pairs[1].value + Complex(std::cos(a))) < 1e-14);

  // Reduced one-qubit density matrix at alpha = pi/4, closed form:
  // eigenvalues (1 +- sqrt(1 - cos^4 a))/2.
  const double s = std::sin(kPi / 4.0), c = std::cos(kPi / 4.0);
  const CMatrix rho =
      Complex(0.5) * CMatrix(2, 2, {Complex(1.0 + s * c), kI * s, -kI * s, Complex(1.0 - s * c)});
  const auto lam = eig_2x2(rho);
  CHECK(std::abs(lam[0].value - Complex(0.9330127018922193)) < 1e-12);
  CHECK(std::abs(lam[1].value - Complex(0.0669872981077807)) < 1e-12);
}

TEST_CASE("eig_2x2 degenerate handling") {
  // Scalar matrix: full eigenspace, standard basis returned.
  const auto pairs = eig_2x2(Complex(2.5) * CMatrix::identity(2));
  CHECK(pairs[0].value == Complex(2.5));
  CHECK(pairs[1].value == Complex(2.5));
  CHECK(max_abs_diff(pairs[0].vector, CVector{1.0, 0.0}) == 0.0);

  // Jordan block: defective.
  CHECK_THROWS_WITH_AS(eig_2x2(CMatrix(2, 2, {1.0, 1.0, 0.0, 1.0})),
                       doctest::Contains("non-diagonalizable"), std::domain_error);

  CHECK_THROWS_AS(eig_2x2(CMatrix(4, 4)), std::invalid_argument);
}

TEST_CASE("eig_2x2 residual and conventions on random matrices") {
  std::mt19937_64 rng(11ULL);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix m = random_diagonalizable_2x2(rng);
    const auto pairs = eig_2x2(m);
    // Ordering: descending real part, ties by imaginary part.
    CHECK(pairs[0].value.real() >= pairs[1].value.real());
    for (const auto& [value, vector] : pairs) {
      CHECK(std::abs(norm(vector) - 1.0) < 1e-12);
      CHECK(max_abs_diff(m * vector, value * vector) < 1e-12);
      // First nonzero component is real positive.
      for (std::size_t i = 0; i < 2; ++i) {
        if (std::abs(vector[i]) > 1e-12) {
          CHECK(vector[i].real() > 0.0);
          CHECK(std::abs(vector[i].imag()) < 1e-12);
          break;
        }
      }
    }
  }
}

TEST_CASE("spectral_exp of the zero matrix is the identity") {
  CHECK(max_abs_diff(spectral_exp(CMatrix(2, 2), Complex(1.0)), CMatrix::identity(2)) < 1e-15);
}

TEST_CASE("spectral_exp eigenphases at the half-period") {
  // exp(-i H tau) with tau = pi/(2 cos a) has eigenphases exp(-+ i pi/2) = -+ i.
  const double a = kPi / 6.0;
  const CMatrix h(2, 2, {kI * std::sin(a), Complex(1.0), Complex(1.0), -kI * std::sin(a)});
  const double tau = kPi / (2.0 * std::cos(a));
  const CMatrix u = spectral_exp(h, Complex(0.0, -tau));
  const auto pairs = eig_2x2(h);
  CHECK(max_abs_diff(u * pairs[0].vector, -kI * pairs[0].vector) < 1e-12);
  CHECK(max_abs_diff(u * pairs[1].vector, kI * pairs[1].vector) < 1e-12);
}

TEST_CASE("spectral_exp agrees with the Taylor-series oracle") {
  std::mt19937_64 rng(23ULL);
  for (int trial = 0; trial < 100; ++trial) {
    const Complex scale(std::cos(0.1 * trial), std::sin(0.07 * trial));
    const CMatrix m2 = random_diagonalizable_2x2(rng);
    CHECK(max_abs_diff(spectral_exp(m2, scale), taylor_exp(m2, scale)) < 1e-12);

    // 4x4 route: eigensystem from the tensor structure.
    const CMatrix a = random_diagonalizable_2x2(rng);
    const CMatrix b = random_diagonalizable_2x2(rng);
    const auto ea = eig_2x2(a), eb = eig_2x2(b);
    const auto pairs = tensor_eigensystem(ea, eb);
    CHECK(max_abs_diff(spectral_exp(pairs, scale), taylor_exp(tensor(a, b), scale)) < 1e-12);
  }
}

TEST_CASE("spectral_exp error paths") {
  CHECK_THROWS_AS(spectral_exp(CMatrix(2, 2, {1.0, 1.0, 0.0, 1.0}), Complex(1.0)),
                  std::domain_error);
  // Repeated eigenvector: singular V.
  const std::vector<Eigenpair> bad = {{Complex(1.0), CVector{1.0, 0.0}},
                                      {Complex(2.0), CVector{1.0, 0.0}}};
  CHECK_THROWS_AS(spectral_exp(bad, Complex(1.0)), std::domain_error);
}

TEST_CASE("partial_trace directions") {
  const CMatrix quarter = Complex(0.25) * CMatrix::identity(4);
  CHECK(max_abs_diff(partial_trace(quarter, Keep::First),
                     Complex(0.5) * CMatrix::identity(2)) < 1e-15);
  CHECK(max_abs_diff(partial_trace(quarter, Keep::Second),
                     Complex(0.5) * CMatrix::identity(2)) < 1e-15);

  // Bell state: both reductions are maximally mixed.
  const double r = 1.0 / std::sqrt(2.0);
  const CVector bell{r, 0.0, 0.0, r};
  const CMatrix rho = outer(bell, bell);
  CHECK(max_abs_diff(partial_trace(rho, Keep::Second), Complex(0.5) * CMatrix::identity(2)) <
        1e-15);
  CHECK(max_abs_diff(partial_trace(rho, Keep::First), Complex(0.5) * CMatrix::identity(2)) <
        1e-15);

  CHECK_THROWS_AS(partial_trace(CMatrix(2, 2), Keep::First), std::invalid_argument);
}

TEST_CASE("partial_trace preserves the trace") {
  std::mt19937_64 rng(37ULL);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix rho = random_matrix(rng, 4);
    for (Keep keep : {Keep::First, Keep::Second}) {
      CHECK(std::abs(trace(partial_trace(rho, keep)) - trace(rho)) < 1e-14);
    }
  }
}

TEST_CASE("inverse") {
  std::mt19937_64 rng(41ULL);
  const CMatrix m = random_matrix(rng, 4);
  CHECK(max_abs_diff(m * inverse(m), CMatrix::identity(4)) < 1e-12);
  CHECK_THROWS_AS(inverse(CMatrix(3, 3)), std::domain_error);
}

#pragma once

// Test-only reference implementations, kept independent of the spectral
// routes they are used to check.

#include <cmath>
#include <random>

#include "ptqm/linalg.hpp"

namespace ptqm::testing {

/// Brute-force matrix exponential: scaling and squaring with a plain Taylor
/// series on the scaled-down matrix.
inline CMatrix taylor_exp(const CMatrix& m, Complex scale) {
  const std::size_t n = m.rows();
  CMatrix a = scale * m;
  int squarings = 0;
  while (max_abs(a) > 0.5) {
    a = Complex(0.5) * a;
    ++squarings;
  }
  CMatrix result = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = Complex(1.0 / k) * (term * a);
    result = result + term;
    if (max_abs(term) < 1e-20) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

inline CMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
  return m;
}

inline CVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Complex(u(rng), u(rng));
  return v;
}

/// Random 2x2 with an eigenvalue gap, so the closed-form solver stays away
/// from the defective region.
inline CMatrix random_diagonalizable_2x2(std::mt19937_64& rng) {
  for (;;) {
    CMatrix m = random_matrix(rng, 2);
    const Complex tr = m(0, 0) + m(1, 1);
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(std::sqrt(tr * tr - 4.0 * det)) > 0.3) return m;
  }
}

}  // namespace ptqm::testing

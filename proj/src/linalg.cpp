#include "ptqm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ptqm {

namespace {

void require_finite(std::span<const Complex> entries, const char* what) {
  for (const Complex& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

}  // namespace

CVector::CVector(std::initializer_list<Complex> entries) : e_(entries) {
  require_finite(e_, "CVector");
}

CVector::CVector(std::vector<Complex> entries) : e_(std::move(entries)) {
  require_finite(e_, "CVector");
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != rows_ * cols_) {
    throw std::invalid_argument("CMatrix: entry count does not match rows*cols");
  }
  require_finite(e_, "CMatrix");
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

CVector matvec(const CMatrix& m, const CVector& v) {
  if (m.cols() != v.dim()) throw std::invalid_argument("matvec: dimension mismatch");
  CVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

CMatrix operator*(Complex z, const CMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = z * m(i, j);
  return out;
}

CVector operator*(Complex z, const CVector& v) {
  CVector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = z * v[i];
  return out;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix add: dimension mismatch");
  }
  CMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  return a + (Complex(-1.0) * b);
}

CVector operator+(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector add: dimension mismatch");
  CVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return out;
}

CVector operator-(const CVector& a, const CVector& b) {
  return a + (Complex(-1.0) * b);
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < b.dim(); ++k) out[i * b.dim() + k] = a[i] * b[k];
  return out;
}

CMatrix conjugate(const CMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = std::conj(m(i, j));
  return out;
}

CVector conjugate(const CVector& v) {
  CVector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = std::conj(v[i]);
  return out;
}

CMatrix transpose(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

CMatrix adjoint(const CMatrix& m) { return transpose(conjugate(m)); }

Complex trace(const CMatrix& m) {
  if (!m.square()) throw std::invalid_argument("trace: matrix not square");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
  return acc;
}

Complex dot(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dot: dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

Complex dot_unconjugated(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dot: dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
  return acc;
}

CMatrix outer(const CVector& x, const CVector& y) {
  CMatrix out(x.dim(), y.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < y.dim(); ++j) out(i, j) = x[i] * std::conj(y[j]);
  return out;
}

CMatrix outer_unconjugated(const CVector& x, const CVector& y) {
  CMatrix out(x.dim(), y.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < y.dim(); ++j) out(i, j) = x[i] * y[j];
  return out;
}

double norm(const CVector& v) { return std::sqrt(dot(v, v).real()); }

double max_abs(const CMatrix& m) {
  double mx = 0.0;
  for (const Complex& z : m.entries()) mx = std::max(mx, std::abs(z));
  return mx;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return max_abs(a - b); }

double max_abs_diff(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double mx = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) mx = std::max(mx, std::abs(a[i] - b[i]));
  return mx;
}

namespace {

// Euclidean-normalize and make the first nonzero component real positive.
CVector normalize_with_phase(CVector v) {
  const double n = norm(v);
  if (n == 0.0) throw std::domain_error("eig_2x2: zero eigenvector");
  for (std::size_t i = 0; i < v.dim(); ++i) v[i] /= n;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const double a = std::abs(v[i]);
    if (a > 1e-12) {
      const Complex phase = std::conj(v[i]) / a;
      for (std::size_t j = 0; j < v.dim(); ++j) v[j] *= phase;
      break;
    }
  }
  return v;
}

}  // namespace

std::array<Eigenpair, 2> eig_2x2(const CMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("eig_2x2: matrix must be 2x2");
  const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const double scale = std::max(max_abs(m), 1.0);

  // Scalar multiple of the identity: any basis diagonalizes.
  if (std::abs(b) + std::abs(c) + std::abs(a - d) <= 1e-14 * scale) {
    return {Eigenpair{a, CVector{1.0, 0.0}}, Eigenpair{a, CVector{0.0, 1.0}}};
  }

  const Complex tr = a + d;
  const Complex det = a * d - b * c;
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  Complex l1 = (tr + disc) / 2.0;
  Complex l2 = (tr - disc) / 2.0;
  if (std::abs(l1 - l2) <= 1e-12 * scale) {
    throw std::domain_error("eig_2x2: non-diagonalizable (defective) matrix");
  }

  auto vector_for = [&](Complex lambda) {
    const CVector v1{b, lambda - a};
    const CVector v2{lambda - d, c};
    return normalize_with_phase(norm(v1) >= norm(v2) ? v1 : v2);
  };

  // Descending real part, ties by descending imaginary part.
  if (l1.real() < l2.real() || (l1.real() == l2.real() && l1.imag() < l2.imag())) {
    std::swap(l1, l2);
  }
  return {Eigenpair{l1, vector_for(l1)}, Eigenpair{l2, vector_for(l2)}};
}

std::vector<Eigenpair> tensor_eigensystem(std::span<const Eigenpair> a,
                                          std::span<const Eigenpair> b) {
  std::vector<Eigenpair> out;
  out.reserve(a.size() * b.size());
  for (const Eigenpair& pa : a)
    for (const Eigenpair& pb : b)
      out.push_back({pa.value * pb.value, tensor(pa.vector, pb.vector)});
  return out;
}

CMatrix spectral_exp(const CMatrix& m, Complex scale) {
  if (m.rows() != 2 || m.cols() != 2) {
    throw std::invalid_argument("spectral_exp: direct form is 2x2 only; pass an eigensystem otherwise");
  }
  const auto pairs = eig_2x2(m);
  return spectral_exp(std::span<const Eigenpair>(pairs.data(), pairs.size()), scale);
}

CMatrix spectral_exp(std::span<const Eigenpair> eigensystem, Complex scale) {
  const std::size_t n = eigensystem.size();
  if (n == 0) throw std::invalid_argument("spectral_exp: empty eigensystem");
  CMatrix v(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (eigensystem[j].vector.dim() != n) {
      throw std::invalid_argument("spectral_exp: eigenvector dimension mismatch");
    }
    for (std::size_t i = 0; i < n; ++i) v(i, j) = eigensystem[j].vector[i];
  }
  const CMatrix vinv = inverse(v);
  CMatrix d(n, n);
  for (std::size_t j = 0; j < n; ++j) d(j, j) = std::exp(scale * eigensystem[j].value);
  CMatrix out = v * d * vinv;
  require_finite(out.entries(), "spectral_exp");
  return out;
}

CMatrix inverse(const CMatrix& m) {
  if (!m.square()) throw std::invalid_argument("inverse: matrix not square");
  const std::size_t n = m.rows();
  CMatrix a = m;
  CMatrix inv = CMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) <= 1e-14 * std::max(max_abs(m), 1.0)) {
      throw std::domain_error("inverse: singular matrix");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Complex p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col);
      if (f == Complex(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

CMatrix partial_trace(const CMatrix& rho, Keep keep) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw std::invalid_argument("partial_trace: density matrix must be 4x4");
  }
  CMatrix out(2, 2);
  if (keep == Keep::First) {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t b = 0; b < 2; ++b) out(i, j) += rho(2 * i + b, 2 * j + b);
  } else {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t a = 0; a < 2; ++a) out(i, j) += rho(2 * a + i, 2 * a + j);
  }
  return out;
}

}  // namespace ptqm

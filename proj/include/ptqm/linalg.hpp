#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ptqm {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Dense complex vector. Dimensions 2 and 4 are the only ones used here.
class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim) : e_(dim) {}
  CVector(std::initializer_list<Complex> entries);
  explicit CVector(std::vector<Complex> entries);

  std::size_t dim() const { return e_.size(); }
  Complex& operator[](std::size_t i) { return e_[i]; }
  const Complex& operator[](std::size_t i) const { return e_[i]; }
  std::span<const Complex> entries() const { return e_; }

 private:
  std::vector<Complex> e_;
};

/// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  std::span<const Complex> entries() const { return e_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Complex> e_;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CVector matvec(const CMatrix& m, const CVector& v);

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }
inline CVector operator*(const CMatrix& m, const CVector& v) { return matvec(m, v); }
CMatrix operator*(Complex z, const CMatrix& m);
CVector operator*(Complex z, const CVector& v);
CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CVector operator+(const CVector& a, const CVector& b);
CVector operator-(const CVector& a, const CVector& b);

/// Kronecker product; the first factor is subsystem A (leftmost index slowest).
CMatrix tensor(const CMatrix& a, const CMatrix& b);
CVector tensor(const CVector& a, const CVector& b);

CMatrix conjugate(const CMatrix& m);
CVector conjugate(const CVector& v);
CMatrix transpose(const CMatrix& m);
CMatrix adjoint(const CMatrix& m);
Complex trace(const CMatrix& m);

/// Hilbert pairing conj(a)^T b.
Complex dot(const CVector& a, const CVector& b);
/// Plain bilinear pairing a^T b (no conjugation).
Complex dot_unconjugated(const CVector& a, const CVector& b);
/// |x><y| = x conj(y)^T.
CMatrix outer(const CVector& x, const CVector& y);
/// x y^T (no conjugation).
CMatrix outer_unconjugated(const CVector& x, const CVector& y);

double norm(const CVector& v);
double max_abs(const CMatrix& m);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CVector& a, const CVector& b);

struct Eigenpair {
  Complex value;
  CVector vector;
};

/// Both eigenpairs of a diagonalizable 2x2 matrix, closed-form quadratic.
/// Eigenvectors have Euclidean unit length with the first nonzero component
/// made real positive. Ordered by descending real part, ties by descending
/// imaginary part. Throws on a defective (single-eigenvector) input.
std::array<Eigenpair, 2> eig_2x2(const CMatrix& m);

/// Eigensystem of tensor(a,b) from the factor eigensystems: values are the
/// pairwise products, vectors the Kronecker products (a-index slowest).
std::vector<Eigenpair> tensor_eigensystem(std::span<const Eigenpair> a,
                                          std::span<const Eigenpair> b);

/// exp(scale * m) through the spectral decomposition of a 2x2 matrix.
CMatrix spectral_exp(const CMatrix& m, Complex scale);
/// V diag(exp(scale * lambda_i)) V^-1 for an explicitly supplied eigensystem
/// (the route for 4x4 operators, whose eigensystems come from the tensor
/// structure). Throws if the eigenvector matrix is singular.
CMatrix spectral_exp(std::span<const Eigenpair> eigensystem, Complex scale);

/// Gauss-Jordan inverse with partial pivoting; throws on singular input.
CMatrix inverse(const CMatrix& m);

enum class Keep { First, Second };

/// Reduce a 4x4 density operator over one qubit of a 2x2 tensor split.
/// Keep::First sums paired second-factor indices, Keep::Second paired
/// first-factor indices (ordering fixed by tensor()).
CMatrix partial_trace(const CMatrix& rho, Keep keep);

}  // namespace ptqm

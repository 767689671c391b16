#pragma once

// Small dense complex matrices and the Hermitian kernels built on them.

#include <complex>
#include <cstddef>
#include <vector>

namespace diagonalis {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

/// Tolerance for hermitian / normal / unitary predicates.
inline constexpr double kMatTol = 1e-10;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  explicit Matrix(std::size_t n) : Matrix(n, n) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vec& d);
  static Matrix diagonal_real(const std::vector<double>& d);
  static Matrix from_rows(const std::vector<std::vector<cplx>>& rows);
  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<Vec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t n() const { return rows_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Vec column(std::size_t j) const;
  void set_column(std::size_t j, const Vec& v);
  Vec diag() const;
  cplx trace() const;
  double frobenius() const;
  /// Largest |imaginary part| relative to the norm is within tol.
  bool is_real(double tol = kMatTol) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(cplx s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vec operator*(const Matrix& a, const Vec& x);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

cplx dot(const Vec& x, const Vec& y);  // x* y
double norm(const Vec& x);
Vec normalized(const Vec& x);
/// <M x, x> = x* M x.
cplx rayleigh(const Matrix& m, const Vec& x);

bool is_hermitian(const Matrix& m, double tol = kMatTol);
bool is_normal(const Matrix& m, double tol = kMatTol);
bool is_unitary(const Matrix& m, double tol = kMatTol);
/// max |(M* M - I)_ij|.
double unitarity_defect(const Matrix& m);

struct HermitianEigen {
  std::vector<double> values;  // nonincreasing
  Matrix vectors;              // column k belongs to values[k]
};

/// Cyclic Jacobi on a Hermitian matrix (sweep cap 30). Throws ConvergenceError past the cap.
HermitianEigen hermitian_eigen(const Matrix& m);

struct NormalEigen {
  Vec values;
  Matrix vectors;  // unitary
};

/// Diagonalizes a normal matrix through a generic combination of its Hermitian parts.
NormalEigen normal_eigen(const Matrix& m);

struct SVD {
  Matrix u;                  // unitary
  std::vector<double> s;     // nonincreasing
  Matrix v;                  // unitary; M = U diag(s) V*
};

/// Singular value decomposition through the Gram matrix M* M.
SVD svd(const Matrix& m);

/// Completes orthonormal columns to a unitary basis (Gram-Schmidt against the standard basis).
Matrix complete_basis(const std::vector<Vec>& columns, std::size_t n);

}  // namespace diagonalis

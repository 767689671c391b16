#include "diagonalis/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "diagonalis/errors.hpp"

namespace diagonalis {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vec& d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::diagonal_real(const std::vector<double>& d) {
  return diagonal(Vec(d.begin(), d.end()));
}

Matrix Matrix::from_rows(const std::vector<std::vector<cplx>>& rows) {
  std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols) {
  std::size_t c = cols.size(), r = c ? cols[0].size() : 0;
  Matrix m(r, c);
  for (std::size_t j = 0; j < c; ++j) m.set_column(j, cols[j]);
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
  if (v.size() != rows_) throw InputError("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Vec Matrix::diag() const {
  Vec d(std::min(rows_, cols_));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*this)(i, i);
  return d;
}

cplx Matrix::trace() const {
  cplx t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius() const {
  double s = 0;
  for (const auto& x : a_) s += std::norm(x);
  return std::sqrt(s);
}

bool Matrix::is_real(double tol) const {
  double scale = std::max(1.0, frobenius());
  return std::all_of(a_.begin(), a_.end(), [&](const cplx& x) { return std::abs(x.imag()) <= tol * scale; });
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& x : a_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw InputError("dimension mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      cplx x = a(i, k);
      if (x == cplx(0)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

Vec operator*(const Matrix& a, const Vec& x) {
  if (a.cols_ != x.size()) throw InputError("dimension mismatch");
  Vec y(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
  return y;
}

cplx dot(const Vec& x, const Vec& y) {
  cplx s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

double norm(const Vec& x) { return std::sqrt(std::max(0.0, dot(x, x).real())); }

Vec normalized(const Vec& x) {
  double n = norm(x);
  if (n == 0) throw InputError("cannot normalize the zero vector");
  Vec y = x;
  for (auto& v : y) v /= n;
  return y;
}

cplx rayleigh(const Matrix& m, const Vec& x) { return dot(x, m * x); }

bool is_hermitian(const Matrix& m, double tol) {
  if (!m.square()) return false;
  return (m - m.adjoint()).frobenius() <= tol * std::max(1.0, m.frobenius());
}

bool is_normal(const Matrix& m, double tol) {
  if (!m.square()) return false;
  Matrix a = m.adjoint();
  double s = std::max(1.0, m.frobenius());
  return (m * a - a * m).frobenius() <= tol * s * s;
}

double unitarity_defect(const Matrix& m) {
  Matrix g = m.adjoint() * m - Matrix::identity(m.cols());
  double worst = 0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) worst = std::max(worst, std::abs(g(i, j)));
  return worst;
}

bool is_unitary(const Matrix& m, double tol) { return m.square() && unitarity_defect(m) <= tol; }

HermitianEigen hermitian_eigen(const Matrix& m) {
  if (!is_hermitian(m)) throw PreconditionError("matrix is not hermitian");
  const std::size_t n = m.n();
  Matrix a = m;
  Matrix v = Matrix::identity(n);
  // Symmetrize so that rounding in the input does not accumulate.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      cplx x = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = x;
      a(j, i) = std::conj(x);
    }
  }
  const double scale = std::max(a.frobenius(), std::numeric_limits<double>::min());
  const double eps = std::numeric_limits<double>::epsilon();
  auto off = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2 * s);
  };
  int sweep = 0;
  for (; sweep < 30 && off() > eps * scale; ++sweep) {
    double threshold = sweep < 3 ? 0.2 * off() / static_cast<double>(n * n) : 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = std::abs(a(p, q));
        if (apq == 0 || apq < threshold) continue;
        double app = a(p, p).real(), aqq = a(q, q).real();
        if (sweep > 3 && apq <= eps * std::abs(app) * 0.5 && apq <= eps * std::abs(aqq) * 0.5) {
          a(p, q) = a(q, p) = 0;
          continue;
        }
        cplx e = a(p, q) / apq;
        double tau = (aqq - app) / (2 * apq);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        double c = 1 / std::sqrt(1 + t * t), s = t * c;
        // R = diag(1, conj e) * [[c, s], [-s, c]] acting on coordinates p, q.
        cplx rpp = c, rpq = s, rqp = -s * std::conj(e), rqq = c * std::conj(e);
        for (std::size_t k = 0; k < n; ++k) {
          cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * rpp + akq * rqp;
          a(k, q) = akp * rpq + akq * rqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(rpp) * apk + std::conj(rqp) * aqk;
          a(q, k) = std::conj(rpq) * apk + std::conj(rqq) * aqk;
        }
        a(p, q) = a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * rpp + vkq * rqp;
          v(k, q) = vkp * rpq + vkq * rqq;
        }
      }
  }
  if (off() > 1e3 * eps * scale) throw ConvergenceError("Jacobi iteration did not converge in 30 sweeps");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  HermitianEigen r;
  r.vectors = Matrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    r.values.push_back(a(idx[k], idx[k]).real());
    r.vectors.set_column(k, v.column(idx[k]));
  }
  return r;
}

NormalEigen normal_eigen(const Matrix& m) {
  if (!is_normal(m, 1e-8)) throw PreconditionError("matrix is not normal");
  const std::size_t n = m.n();
  Matrix h1 = 0.5 * (m + m.adjoint());
  Matrix h2 = cplx(0, -0.5) * (m - m.adjoint());
  // Commuting Hermitian parts; a generic combination separates their joint eigenspaces.
  const double c = 0.5772156649015329;
  HermitianEigen e = hermitian_eigen(h1 + c * h2);
  NormalEigen r;
  r.vectors = e.vectors;
  for (std::size_t k = 0; k < n; ++k) r.values.push_back(rayleigh(m, e.vectors.column(k)));
  return r;
}

Matrix complete_basis(const std::vector<Vec>& columns, std::size_t n) {
  std::vector<Vec> basis;
  auto add = [&](Vec v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        cplx c = dot(b, v);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * b[i];
      }
    double nv = norm(v);
    if (nv < 1e-8) return false;
    for (auto& x : v) x /= nv;
    basis.push_back(std::move(v));
    return true;
  };
  for (const auto& c : columns) add(c);
  for (std::size_t k = 0; k < n && basis.size() < n; ++k) {
    Vec e(n);
    e[k] = 1.0;
    add(e);
  }
  if (basis.size() != n) throw ConvergenceError("basis completion failed");
  return Matrix::from_columns(basis);
}

SVD svd(const Matrix& m) {
  if (!m.square()) throw InputError("svd expects a square matrix");
  const std::size_t n = m.n();
  HermitianEigen g = hermitian_eigen(m.adjoint() * m);
  SVD r;
  r.v = g.vectors;
  std::vector<Vec> ucols;
  double smax = std::sqrt(std::max(0.0, g.values.empty() ? 0.0 : g.values[0]));
  for (std::size_t k = 0; k < n; ++k) {
    double s = std::sqrt(std::max(0.0, g.values[k]));
    r.s.push_back(s);
    if (s > 1e-12 * std::max(1.0, smax)) {
      Vec u = m * g.vectors.column(k);
      for (auto& x : u) x /= s;
      ucols.push_back(u);
    }
  }
  r.u = complete_basis(ucols, n);
  return r;
}

}  // namespace diagonalis

#include "multifid/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace multifid {

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) throw InvariantViolation("negative matrix dimension");
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = std::conj(data_[k]);
  return out;
}

cplx ComplexMatrix::trace() const {
  if (rows_ != cols_) throw InvariantViolation("trace of non-square matrix");
  cplx t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::is_finite() const {
  for (const cplx& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw InvariantViolation("matrix shape mismatch in addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw InvariantViolation("matrix shape mismatch in subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
  for (cplx& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvariantViolation("matrix shape mismatch in product");
  ComplexMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix operator*(cplx scalar, ComplexMatrix m) { return m *= scalar; }

std::vector<cplx> operator*(const ComplexMatrix& a, const std::vector<cplx>& v) {
  if (a.cols() != static_cast<int>(v.size()))
    throw InvariantViolation("matrix/vector shape mismatch");
  std::vector<cplx> out(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const long long rows = static_cast<long long>(a.rows()) * b.rows();
  const long long cols = static_cast<long long>(a.cols()) * b.cols();
  if (rows * cols > (1LL << 26))
    throw InvariantViolation("kron output would exceed the size guard");
  ComplexMatrix out(static_cast<int>(rows), static_cast<int>(cols));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix block_matrix(const std::vector<std::vector<ComplexMatrix>>& blocks) {
  if (blocks.empty()) throw InvariantViolation("empty block grid");
  const std::size_t r = blocks.size();
  int d = -1;
  for (const auto& row : blocks) {
    if (row.size() != r) throw InvariantViolation("block grid is not square");
    for (const auto& blk : row) {
      if (blk.rows() != blk.cols()) throw InvariantViolation("non-square block");
      if (d < 0) d = blk.rows();
      if (blk.rows() != d) throw InvariantViolation("ragged blocks in block_matrix");
    }
  }
  ComplexMatrix out(static_cast<int>(r) * d, static_cast<int>(r) * d);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          out(static_cast<int>(i) * d + a, static_cast<int>(j) * d + b) = blocks[i][j](a, b);
  return out;
}

double vector_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw InvariantViolation("vector length mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

ComplexMatrix outer(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  ComplexMatrix out(static_cast<int>(a.size()), static_cast<int>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out(static_cast<int>(i), static_cast<int>(j)) = a[i] * std::conj(b[j]);
  return out;
}

std::vector<cplx> kron_vec(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

}  // namespace multifid

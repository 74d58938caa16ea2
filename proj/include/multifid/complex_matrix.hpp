#pragma once

#include <complex>
#include <vector>

#include "multifid/errors.hpp"

namespace multifid {

using cplx = std::complex<double>;

// Dense complex matrix, row-major storage.
class ComplexMatrix {
public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(int rows, int cols);

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool is_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scalar);

private:
  int rows_;
  int cols_;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx scalar, ComplexMatrix m);

// Matrix-vector product.
std::vector<cplx> operator*(const ComplexMatrix& a, const std::vector<cplx>& v);

// Kronecker product; guards against absurd output sizes.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Assemble an r x r grid of equally sized d x d blocks into an (rd) x (rd)
// matrix; block (i, j) lands at row/col offset (i*d, j*d).
ComplexMatrix block_matrix(const std::vector<std::vector<ComplexMatrix>>& blocks);

// ---- state vectors -------------------------------------------------------

double vector_norm(const std::vector<cplx>& v);

// <a|b> = sum conj(a_i) b_i
cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b);

// |a><b|
ComplexMatrix outer(const std::vector<cplx>& a, const std::vector<cplx>& b);

std::vector<cplx> kron_vec(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace multifid

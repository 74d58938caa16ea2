#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "multifid/complex_matrix.hpp"

namespace multifid {

struct EigResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, unitary
};

// Hermitian matrix with a lazily filled, shared eigendecomposition cache.
// The constructor symmetrizes M <- (M + M++)/2 after checking that the input
// is Hermitian to within 1e-12 * (1 + max_abs).  Values are immutable after
// construction; copies share the cache, and the fill is idempotent behind a
// once-flag so concurrent readers are safe.
class HermitianMatrix {
public:
  HermitianMatrix() : dim_(0) {}
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix identity(int n) { return HermitianMatrix(ComplexMatrix::identity(n)); }
  static HermitianMatrix zero(int n) { return HermitianMatrix(ComplexMatrix::zero(n, n)); }

  int dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return mat_; }
  const cplx& operator()(int i, int j) const { return mat_(i, j); }

  double trace_real() const { return mat_.trace().real(); }
  double frobenius_norm() const { return mat_.frobenius_norm(); }

  // Cached eigendecomposition (cyclic Jacobi).
  const EigResult& eig() const;

  double min_eigenvalue() const { return eig().eigenvalues.front(); }
  double max_eigenvalue() const { return eig().eigenvalues.back(); }

private:
  int dim_;
  ComplexMatrix mat_;
  struct Cache {
    std::once_flag flag;
    std::optional<EigResult> result;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Cyclic Jacobi eigendecomposition of a Hermitian matrix.  Iteration cap of
// max_sweeps sweeps with off-diagonal tolerance 1e-13 * ||M||_F; throws
// NumericalFailure with the residual if the cap is hit, and verifies the
// reconstruction residual ||M - V diag(l) V+||_F <= 1e-10 * (1 + ||M||_F).
EigResult eig_hermitian(const ComplexMatrix& m, int max_sweeps = 100);

inline EigResult eig_hermitian(const HermitianMatrix& m) { return m.eig(); }

// V f(l + shift) V+.  f must return a finite value on every shifted
// eigenvalue; a non-finite result raises DomainError naming the eigenvalue.
HermitianMatrix matrix_function(const HermitianMatrix& m,
                                const std::function<double(double)>& f,
                                double domain_shift = 0.0);

// Fractional power of a PSD matrix.  Eigenvalues in [-1e-10, 0) are clamped
// to zero (numerical PSD drift); anything more negative is a DomainError.
HermitianMatrix pow_psd(const HermitianMatrix& m, double exponent);
HermitianMatrix sqrt_psd(const HermitianMatrix& m);

// log(M + shift I); every shifted eigenvalue must be strictly positive.
HermitianMatrix log_pd(const HermitianMatrix& m, double domain_shift = 0.0);
HermitianMatrix exp_h(const HermitianMatrix& m);

// Inverse of a positive definite matrix via its eigendecomposition.
HermitianMatrix inverse_pd(const HermitianMatrix& m);

// Sum of singular values (any square complex matrix).
double trace_norm(const ComplexMatrix& m);

// (sum sigma_i^p)^(1/p) for p >= 1.
double schatten_norm(const ComplexMatrix& m, double p);

std::vector<double> singular_values(const ComplexMatrix& m);

// Partial trace of a dA*dB-dimensional operator over one tensor factor.
enum class Keep { A, B };
HermitianMatrix partial_trace(const HermitianMatrix& m, int dim_a, int dim_b, Keep keep);
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Keep keep);

// (M + M+)/2 as a HermitianMatrix, without the Hermiticity pre-check.
HermitianMatrix symmetrize(const ComplexMatrix& m);

}  // namespace multifid

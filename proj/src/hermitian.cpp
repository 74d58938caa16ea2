#include "multifid/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace multifid {

namespace {

double off_diag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw InvariantViolation("HermitianMatrix requires a square matrix");
  if (!m.is_finite()) throw InvariantViolation("HermitianMatrix requires finite entries");
  dim_ = m.rows();
  double dev = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
  if (dev > 1e-12 * (1.0 + m.max_abs()))
    throw InvariantViolation("matrix is not Hermitian (deviation " + std::to_string(dev) + ")");
  mat_ = ComplexMatrix(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      mat_(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
}

const EigResult& HermitianMatrix::eig() const {
  std::call_once(cache_->flag, [this] { cache_->result = eig_hermitian(mat_); });
  return *cache_->result;
}

EigResult eig_hermitian(const ComplexMatrix& m, int max_sweeps) {
  if (m.rows() != m.cols()) throw InvariantViolation("eig_hermitian requires a square matrix");
  const int n = m.rows();
  const double norm_in = m.frobenius_norm();
  const double tol = 1e-13 * norm_in;

  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diag_norm(a) <= tol) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= 1e-300) continue;
        const cplx phase = apq / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx s_ph = s * phase;        // s e^{i phi}
        const cplx s_phc = s * std::conj(phase);  // s e^{-i phi}

        // column update: A <- A U with U_pp = c, U_pq = s e^{i phi},
        //                U_qp = -s e^{-i phi}, U_qq = c
        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - s_phc * akq;
          a(k, q) = s_ph * akp + c * akq;
        }
        // row update: A <- U+ A
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk - s_ph * aqk;
          a(q, k) = s_phc * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);
        for (int k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - s_phc * vkq;
          v(k, q) = s_ph * vkp + c * vkq;
        }
      }
    }
  }
  const double off = off_diag_norm(a);
  if (off > tol && off > 1e-12 * (1.0 + norm_in))
    throw NumericalFailure("Jacobi eigensolver did not converge after " +
                               std::to_string(max_sweeps) + " sweeps",
                           off);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });

  EigResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors = ComplexMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    result.eigenvalues[j] = diag[order[j]];
    for (int i = 0; i < n; ++i) result.eigenvectors(i, j) = v(i, order[j]);
  }

  // reconstruction residual check
  ComplexMatrix recon(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx sum = 0.0;
      for (int k = 0; k < n; ++k)
        sum += result.eigenvectors(i, k) * result.eigenvalues[k] *
               std::conj(result.eigenvectors(j, k));
      recon(i, j) = sum;
    }
  double res = (recon - m).frobenius_norm();
  if (res > 1e-10 * (1.0 + norm_in))
    throw NumericalFailure("eigendecomposition residual too large", res);
  return result;
}

HermitianMatrix matrix_function(const HermitianMatrix& m,
                                const std::function<double(double)>& f,
                                double domain_shift) {
  const EigResult& e = m.eig();
  const int n = m.dim();
  std::vector<double> fe(n);
  for (int i = 0; i < n; ++i) {
    const double x = e.eigenvalues[i] + domain_shift;
    const double y = f(x);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "matrix_function: f undefined at eigenvalue " << x;
      throw DomainError(os.str());
    }
    fe[i] = y;
  }
  ComplexMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      cplx sum = 0.0;
      for (int k = 0; k < n; ++k)
        sum += e.eigenvectors(i, k) * fe[k] * std::conj(e.eigenvectors(j, k));
      out(i, j) = sum;
      out(j, i) = std::conj(sum);
    }
  for (int i = 0; i < n; ++i) out(i, i) = cplx(out(i, i).real(), 0.0);
  return symmetrize(out);
}

HermitianMatrix pow_psd(const HermitianMatrix& m, double exponent) {
  return matrix_function(m, [exponent](double x) -> double {
    if (x < 0.0) {
      if (x >= -1e-10) return 0.0;  // clamp PSD drift
      return std::nan("");
    }
    if (x == 0.0) return exponent == 0.0 ? 1.0 : 0.0;
    return std::pow(x, exponent);
  });
}

HermitianMatrix sqrt_psd(const HermitianMatrix& m) { return pow_psd(m, 0.5); }

HermitianMatrix log_pd(const HermitianMatrix& m, double domain_shift) {
  return matrix_function(
      m, [](double x) -> double { return x > 0.0 ? std::log(x) : std::nan(""); }, domain_shift);
}

HermitianMatrix exp_h(const HermitianMatrix& m) {
  return matrix_function(m, [](double x) { return std::exp(x); });
}

HermitianMatrix inverse_pd(const HermitianMatrix& m) {
  return matrix_function(m, [](double x) -> double { return x > 0.0 ? 1.0 / x : std::nan(""); });
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw InvariantViolation("singular_values requires a square matrix");
  // eigenvalues of M+M are the squared singular values
  ComplexMatrix mm = m.adjoint() * m;
  EigResult e = eig_hermitian(symmetrize(mm).matrix());
  std::vector<double> sv(e.eigenvalues.size());
  for (std::size_t i = 0; i < sv.size(); ++i)
    sv[i] = std::sqrt(std::max(0.0, e.eigenvalues[i]));
  return sv;
}

double trace_norm(const ComplexMatrix& m) {
  std::vector<double> sv = singular_values(m);
  double s = 0.0;
  for (double x : sv) s += x;
  return s;
}

double schatten_norm(const ComplexMatrix& m, double p) {
  if (p < 1.0) throw DomainError("schatten_norm requires p >= 1");
  std::vector<double> sv = singular_values(m);
  double s = 0.0;
  for (double x : sv) s += std::pow(x, p);
  return std::pow(s, 1.0 / p);
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Keep keep) {
  if (m.rows() != m.cols() || m.rows() != dim_a * dim_b)
    throw InvariantViolation("partial_trace: dimension mismatch");
  if (keep == Keep::A) {
    ComplexMatrix out(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j) {
        cplx s = 0.0;
        for (int k = 0; k < dim_b; ++k) s += m(i * dim_b + k, j * dim_b + k);
        out(i, j) = s;
      }
    return out;
  }
  ComplexMatrix out(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < dim_a; ++k) s += m(k * dim_b + i, k * dim_b + j);
      out(i, j) = s;
    }
  return out;
}

HermitianMatrix partial_trace(const HermitianMatrix& m, int dim_a, int dim_b, Keep keep) {
  return symmetrize(partial_trace(m.matrix(), dim_a, dim_b, keep));
}

HermitianMatrix symmetrize(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw InvariantViolation("symmetrize requires a square matrix");
  const int n = m.rows();
  ComplexMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return HermitianMatrix(out);
}

}  // namespace multifid

#include "multifid/bivariate.hpp"

#include <algorithm>
#include <cmath>

namespace multifid {

namespace {

HermitianMatrix shifted(const HermitianMatrix& m, double eps) {
  ComplexMatrix out = m.matrix();
  for (int i = 0; i < m.dim(); ++i) out(i, i) += eps;
  return symmetrize(out);
}

// Aitken delta-squared estimate from the last three schedule values.
LimitValue finalize_limit(const std::vector<double>& values, const EpsSchedule& schedule) {
  LimitValue out;
  out.value = *std::min_element(values.begin(), values.end());
  const std::size_t n = values.size();
  out.eps_used = schedule.eps[n - 1];
  if (n >= 3) {
    const double f0 = values[n - 3], f1 = values[n - 2], f2 = values[n - 1];
    const double denom = f2 - 2.0 * f1 + f0;
    out.extrapolated = std::abs(denom) > 1e-300 ? f2 - (f2 - f1) * (f2 - f1) / denom : f2;
  } else {
    out.extrapolated = values.back();
  }
  return out;
}

}  // namespace

namespace {

// Fractional powers amplify eigenvalue noise at zero (d sqrt/dx -> inf), so
// eigenvalues below a relative floor are treated as exact kernel.
double noise_floor(const std::vector<double>& eigenvalues) {
  double top = 0.0;
  for (double lam : eigenvalues) top = std::max(top, std::abs(lam));
  return 1e-14 * top;
}

}  // namespace

double fid_z(const DensityMatrix& rho, const DensityMatrix& sigma, ZParam z) {
  if (rho.dim() != sigma.dim()) throw InvariantViolation("fid_z: dimension mismatch");
  if (z.flat) return log_euclidean_fid(rho, sigma).value;
  if (z.z < 0.5) throw DomainError("fid_z requires z >= 1/2");
  HermitianMatrix sig_q = pow_psd(sigma.hermitian(), 1.0 / (4.0 * z.z));
  HermitianMatrix rho_h = pow_psd(rho.hermitian(), 1.0 / (2.0 * z.z));
  HermitianMatrix inner = symmetrize(sig_q.matrix() * rho_h.matrix() * sig_q.matrix());
  const auto& lams = inner.eig().eigenvalues;
  const double floor = noise_floor(lams);
  double total = 0.0;
  for (double lam : lams) {
    if (lam <= floor) continue;  // clamped support convention
    total += std::pow(lam, z.z);
  }
  return total;
}

double uhlmann(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw InvariantViolation("uhlmann: dimension mismatch");
  HermitianMatrix root = sqrt_psd(rho.hermitian());
  HermitianMatrix inner = symmetrize(root.matrix() * sigma.matrix() * root.matrix());
  const auto& lams = inner.eig().eigenvalues;
  const double floor = noise_floor(lams);
  double total = 0.0;
  for (double lam : lams)
    if (lam > floor) total += std::sqrt(lam);
  return total;
}

double holevo(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw InvariantViolation("holevo: dimension mismatch");
  HermitianMatrix a = sqrt_psd(rho.hermitian());
  HermitianMatrix b = sqrt_psd(sigma.hermitian());
  return (a.matrix() * b.matrix()).trace().real();
}

LimitValue log_euclidean_fid(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const EpsSchedule& schedule) {
  (void)schedule;
  if (rho.dim() != sigma.dim()) throw InvariantViolation("log_euclidean_fid: dimension mismatch");
  // eps -> 0 limit in closed form: support-restricted logs compressed to the
  // intersection of the two supports (the raw regularized sequence converges
  // only like 1/|ln eps| once the supports differ)
  const double cutoff = 1e-11;
  const int d = rho.dim();
  auto support_data = [&](const HermitianMatrix& m, ComplexMatrix& log_out,
                          ComplexMatrix& kernel_out) {
    const EigResult& e = m.eig();
    const double cut = cutoff * std::max(1.0, std::abs(e.eigenvalues.back()));
    log_out = ComplexMatrix(d, d);
    kernel_out = ComplexMatrix(d, d);
    for (int k = 0; k < d; ++k) {
      const double lam = e.eigenvalues[static_cast<std::size_t>(k)];
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const cplx proj = e.eigenvectors(i, k) * std::conj(e.eigenvectors(j, k));
          if (lam > cut)
            log_out(i, j) += std::log(lam) * proj;
          else
            kernel_out(i, j) += proj;
        }
    }
  };
  ComplexMatrix log_r, ker_r, log_s, ker_s;
  support_data(rho.hermitian(), log_r, ker_r);
  support_data(sigma.hermitian(), log_s, ker_s);
  EigResult ker_eig = eig_hermitian(symmetrize(ker_r + ker_s).matrix());
  int rank = 0;
  for (double lam : ker_eig.eigenvalues)
    if (lam < cutoff) ++rank;
  LimitValue out;
  out.eps_used = cutoff;
  if (rank == 0) {
    out.value = 0.0;
    out.extrapolated = 0.0;
    return out;
  }
  ComplexMatrix basis(d, rank);
  int col = 0;
  for (int k = 0; k < d; ++k) {
    if (ker_eig.eigenvalues[static_cast<std::size_t>(k)] >= cutoff) continue;
    for (int i = 0; i < d; ++i) basis(i, col) = ker_eig.eigenvectors(i, k);
    ++col;
  }
  ComplexMatrix mean = log_r + log_s;
  mean *= cplx(0.5, 0.0);
  out.value = exp_h(symmetrize(basis.adjoint() * mean * basis)).trace_real();
  out.extrapolated = out.value;
  return out;
}

HermitianMatrix geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b) {
  HermitianMatrix a_half = pow_psd(a, 0.5);
  HermitianMatrix a_minus_half = matrix_function(
      a, [](double x) -> double { return x > 0.0 ? 1.0 / std::sqrt(x) : std::nan(""); });
  HermitianMatrix mid = symmetrize(a_minus_half.matrix() * b.matrix() * a_minus_half.matrix());
  HermitianMatrix mid_root = pow_psd(mid, 0.5);
  return symmetrize(a_half.matrix() * mid_root.matrix() * a_half.matrix());
}

LimitValue geometric_fid(const DensityMatrix& rho, const DensityMatrix& sigma,
                         const EpsSchedule& schedule) {
  if (rho.dim() != sigma.dim()) throw InvariantViolation("geometric_fid: dimension mismatch");
  std::vector<double> values;
  values.reserve(schedule.eps.size());
  for (double eps : schedule.eps) {
    HermitianMatrix mean =
        geometric_mean(shifted(rho.hermitian(), eps), shifted(sigma.hermitian(), eps));
    values.push_back(mean.trace_real());
  }
  return finalize_limit(values, schedule);
}

double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double f = std::min(1.0, uhlmann(rho, sigma));
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - f)));
}

double hellinger_distance_q(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double f = std::min(1.0, holevo(rho, sigma));
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - f)));
}

}  // namespace multifid

#include "multifid/quantum.hpp"

#include <algorithm>
#include <cmath>

namespace multifid {

DensityMatrix::DensityMatrix(const HermitianMatrix& m, Validation mode) {
  HermitianMatrix candidate = m;
  if (mode == Validation::Repair) {
    const EigResult& e = m.eig();
    const int n = m.dim();
    std::vector<double> lam(e.eigenvalues);
    double total = 0.0;
    for (double& x : lam) {
      x = std::max(x, 0.0);
      total += x;
    }
    if (total <= 0.0) throw InvariantViolation("DensityMatrix repair: matrix has no positive part");
    ComplexMatrix rebuilt(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cplx s = 0.0;
        for (int k = 0; k < n; ++k)
          s += e.eigenvectors(i, k) * (lam[k] / total) * std::conj(e.eigenvectors(j, k));
        rebuilt(i, j) = s;
      }
    candidate = symmetrize(rebuilt);
  }
  const double tr = candidate.trace_real();
  if (std::abs(tr - 1.0) > 1e-10)
    throw InvariantViolation("DensityMatrix: trace deviates from 1 by " +
                             std::to_string(std::abs(tr - 1.0)));
  if (candidate.min_eigenvalue() < -1e-10)
    throw InvariantViolation("DensityMatrix: negative eigenvalue " +
                             std::to_string(candidate.min_eigenvalue()));
  mat_ = candidate;
}

double DensityMatrix::purity() const {
  double s = 0.0;
  for (double x : mat_.eig().eigenvalues) s += x * x;
  return s;
}

StateTuple::StateTuple(std::vector<DensityMatrix> states) : states_(std::move(states)) {
  if (states_.size() < 2) throw InvariantViolation("StateTuple requires r >= 2 states");
  for (const auto& s : states_)
    if (s.dim() != states_.front().dim())
      throw InvariantViolation("StateTuple requires a common dimension");
}

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvariantViolation("empty probability vector");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw InvariantViolation("negative probability entry");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvariantViolation("probabilities sum to " + std::to_string(total));
}

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw InvariantViolation("channel requires at least one Kraus operator");
  const int din = kraus_.front().cols();
  const int dout = kraus_.front().rows();
  ComplexMatrix sum(din, din);
  for (const auto& k : kraus_) {
    if (k.cols() != din || k.rows() != dout)
      throw InvariantViolation("Kraus operators have mismatched shapes");
    sum += k.adjoint() * k;
  }
  sum -= ComplexMatrix::identity(din);
  if (sum.max_abs() > 1e-10)
    throw InvariantViolation("Kraus completeness violated by " + std::to_string(sum.max_abs()));
}

Povm::Povm(std::vector<HermitianMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw InvariantViolation("POVM requires at least one element");
  const int d = elements_.front().dim();
  ComplexMatrix sum(d, d);
  for (const auto& e : elements_) {
    if (e.dim() != d) throw InvariantViolation("POVM elements have mismatched dimensions");
    if (e.min_eigenvalue() < -1e-10)
      throw InvariantViolation("POVM element not PSD (min eigenvalue " +
                               std::to_string(e.min_eigenvalue()) + ")");
    sum += e.matrix();
  }
  sum -= ComplexMatrix::identity(d);
  if (sum.max_abs() > 1e-10)
    throw InvariantViolation("POVM does not sum to identity, deviation " +
                             std::to_string(sum.max_abs()));
}

std::vector<cplx> canonical_purification(const DensityMatrix& rho) {
  const int d = rho.dim();
  HermitianMatrix root = sqrt_psd(rho.hermitian());
  // (root (x) I) |Gamma> with |Gamma> = sum_i |i>|i>
  std::vector<cplx> out(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(i) * d + j] = root(i, j);
  return out;
}

DensityMatrix random_density(int dim, int rank, Rng& rng) {
  if (rank < 1 || rank > dim) throw InvariantViolation("random_density: rank out of range");
  ComplexMatrix g(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  ComplexMatrix gg = g * g.adjoint();
  const double tr = gg.trace().real();
  gg *= cplx(1.0 / tr, 0.0);
  return DensityMatrix(symmetrize(gg));
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& m) {
  const int rows = m.rows();
  const int cols = m.cols();
  if (rows < cols) throw InvariantViolation("orthonormalize_columns requires rows >= cols");
  ComplexMatrix q = m;
  for (int j = 0; j < cols; ++j) {
    // two rounds of modified Gram-Schmidt for orthogonality at machine level
    for (int round = 0; round < 2; ++round) {
      for (int k = 0; k < j; ++k) {
        cplx proj = 0.0;
        for (int i = 0; i < rows; ++i) proj += std::conj(q(i, k)) * q(i, j);
        for (int i = 0; i < rows; ++i) q(i, j) -= proj * q(i, k);
      }
    }
    double nrm = 0.0;
    for (int i = 0; i < rows; ++i) nrm += std::norm(q(i, j));
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) throw NumericalFailure("orthonormalize_columns: rank-deficient input", nrm);
    for (int i = 0; i < rows; ++i) q(i, j) /= nrm;
  }
  return q;
}

QuantumChannel random_channel(int dim_in, int dim_out, int env_dim, Rng& rng) {
  if (dim_out * env_dim < dim_in)
    throw InvariantViolation("random_channel: dim_out * env_dim must be >= dim_in");
  ComplexMatrix g(dim_out * env_dim, dim_in);
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  ComplexMatrix isometry = orthonormalize_columns(g);
  // rows grouped as (env, out): Kraus_e = <e|_env isometry
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(env_dim));
  for (int e = 0; e < env_dim; ++e) {
    ComplexMatrix k(dim_out, dim_in);
    for (int i = 0; i < dim_out; ++i)
      for (int j = 0; j < dim_in; ++j) k(i, j) = isometry(e * dim_out + i, j);
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(std::move(kraus));
}

Povm random_povm(int dim, int outcomes, Rng& rng) {
  ComplexMatrix g(dim * outcomes, dim);
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  ComplexMatrix isometry = orthonormalize_columns(g);
  std::vector<HermitianMatrix> elems;
  elems.reserve(static_cast<std::size_t>(outcomes));
  for (int y = 0; y < outcomes; ++y) {
    ComplexMatrix block(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) block(i, j) = isometry(y * dim + i, j);
    elems.push_back(symmetrize(block.adjoint() * block));
  }
  return Povm(std::move(elems));
}

DensityMatrix apply_channel(const QuantumChannel& channel, const DensityMatrix& rho) {
  if (channel.dim_in() != rho.dim())
    throw InvariantViolation("apply_channel: dimension mismatch");
  ComplexMatrix out(channel.dim_out(), channel.dim_out());
  for (const auto& k : channel.kraus()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(symmetrize(out), Validation::Repair);
}

ProbabilityVector apply_povm(const Povm& povm, const DensityMatrix& rho) {
  if (povm.dim() != rho.dim()) throw InvariantViolation("apply_povm: dimension mismatch");
  std::vector<double> probs(static_cast<std::size_t>(povm.outcomes()));
  double total = 0.0;
  for (int y = 0; y < povm.outcomes(); ++y) {
    double p = (povm.elements()[static_cast<std::size_t>(y)].matrix() * rho.matrix()).trace().real();
    p = std::max(p, 0.0);
    probs[static_cast<std::size_t>(y)] = p;
    total += p;
  }
  for (double& p : probs) p /= total;
  return ProbabilityVector(std::move(probs));
}

StateTuple commuting_tuple_from_probs(const std::vector<ProbabilityVector>& dists) {
  if (dists.size() < 2) throw InvariantViolation("commuting tuple requires r >= 2 distributions");
  const int n = dists.front().size();
  std::vector<DensityMatrix> states;
  states.reserve(dists.size());
  for (const auto& p : dists) {
    if (p.size() != n) throw InvariantViolation("distributions have mismatched lengths");
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = p[i];
    states.emplace_back(symmetrize(m));
  }
  return StateTuple(std::move(states));
}

DensityMatrix cq_state(const ProbabilityVector& weights,
                       const std::vector<DensityMatrix>& states) {
  if (static_cast<std::size_t>(weights.size()) != states.size())
    throw InvariantViolation("cq_state: weights/states length mismatch");
  const int d = states.front().dim();
  const int x_dim = weights.size();
  ComplexMatrix out(x_dim * d, x_dim * d);
  for (int x = 0; x < x_dim; ++x) {
    if (states[static_cast<std::size_t>(x)].dim() != d)
      throw InvariantViolation("cq_state: block dimension mismatch");
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out(x * d + i, x * d + j) = weights[x] * states[static_cast<std::size_t>(x)](i, j);
  }
  return DensityMatrix(symmetrize(out));
}

std::vector<cplx> random_pure_state(int dim, Rng& rng) {
  std::vector<cplx> v(static_cast<std::size_t>(dim));
  for (auto& z : v) z = cplx(rng.normal(), rng.normal());
  const double nrm = vector_norm(v);
  for (auto& z : v) z /= nrm;
  return v;
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  return orthonormalize_columns(g);
}

}  // namespace multifid

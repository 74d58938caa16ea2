#pragma once

#include <vector>

#include "multifid/hermitian.hpp"
#include "multifid/rng.hpp"

namespace multifid {

// PSD, unit-trace Hermitian matrix.  Strict mode enforces the invariants
// (eigenvalues >= -1e-10, |Tr - 1| <= 1e-10); Repair clamps negative
// eigenvalues and renormalizes the trace before validating.
enum class Validation { Strict, Repair };

class DensityMatrix {
public:
  DensityMatrix() = default;
  explicit DensityMatrix(const HermitianMatrix& m, Validation mode = Validation::Strict);

  int dim() const { return mat_.dim(); }
  const HermitianMatrix& hermitian() const { return mat_; }
  const ComplexMatrix& matrix() const { return mat_.matrix(); }
  const cplx& operator()(int i, int j) const { return mat_(i, j); }

  double purity() const;  // Tr[rho^2]

private:
  HermitianMatrix mat_;
};

// Ordered tuple of r >= 2 states of common dimension.
class StateTuple {
public:
  StateTuple() = default;
  explicit StateTuple(std::vector<DensityMatrix> states);

  int size() const { return static_cast<int>(states_.size()); }
  int dim() const { return states_.empty() ? 0 : states_.front().dim(); }
  const DensityMatrix& operator[](int i) const { return states_[static_cast<std::size_t>(i)]; }
  const std::vector<DensityMatrix>& states() const { return states_; }

private:
  std::vector<DensityMatrix> states_;
};

class ProbabilityVector {
public:
  ProbabilityVector() = default;
  explicit ProbabilityVector(std::vector<double> probs);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& probs() const { return probs_; }

private:
  std::vector<double> probs_;
};

// CPTP map in Kraus form; completeness sum K+K = I enforced to 1e-10.
class QuantumChannel {
public:
  QuantumChannel() = default;
  explicit QuantumChannel(std::vector<ComplexMatrix> kraus);

  int dim_in() const { return kraus_.empty() ? 0 : kraus_.front().cols(); }
  int dim_out() const { return kraus_.empty() ? 0 : kraus_.front().rows(); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

private:
  std::vector<ComplexMatrix> kraus_;
};

// POVM: PSD elements summing to the identity within 1e-10.
class Povm {
public:
  Povm() = default;
  explicit Povm(std::vector<HermitianMatrix> elements);

  int dim() const { return elements_.empty() ? 0 : elements_.front().dim(); }
  int outcomes() const { return static_cast<int>(elements_.size()); }
  const std::vector<HermitianMatrix>& elements() const { return elements_; }

private:
  std::vector<HermitianMatrix> elements_;
};

// |phi> = (rho^{1/2} (x) I) |Gamma>, a unit vector of length d^2 whose
// reduced state on the first factor is rho.
std::vector<cplx> canonical_purification(const DensityMatrix& rho);

// Ginibre-induced random mixed state of the given eigen-rank.
DensityMatrix random_density(int dim, int rank, Rng& rng);
inline DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  Rng g(seed);
  return random_density(dim, rank, g);
}

// Haar-like random channel: QR-orthonormalized Gaussian isometry into
// out (x) env, followed by tracing out the environment.
QuantumChannel random_channel(int dim_in, int dim_out, int env_dim, Rng& rng);
inline QuantumChannel random_channel(int dim_in, int dim_out, int env_dim, std::uint64_t seed) {
  Rng g(seed);
  return random_channel(dim_in, dim_out, env_dim, g);
}

// Random POVM with the requested number of outcomes (Naimark-style blocks
// of a random isometry).
Povm random_povm(int dim, int outcomes, Rng& rng);

DensityMatrix apply_channel(const QuantumChannel& channel, const DensityMatrix& rho);

ProbabilityVector apply_povm(const Povm& povm, const DensityMatrix& rho);

// Diagonal embedding of classical distributions as commuting states.
StateTuple commuting_tuple_from_probs(const std::vector<ProbabilityVector>& dists);

// Block-diagonal classical-quantum state sum_x p(x) |x><x| (x) rho_x.
DensityMatrix cq_state(const ProbabilityVector& weights, const std::vector<DensityMatrix>& states);

// Random pure state vector.
std::vector<cplx> random_pure_state(int dim, Rng& rng);

// Random unitary (QR of a Ginibre matrix, phases fixed).
ComplexMatrix random_unitary(int dim, Rng& rng);

// Gram-Schmidt orthonormalization of the columns of a (rows x cols) matrix,
// rows >= cols; result has orthonormal columns.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& m);

}  // namespace multifid

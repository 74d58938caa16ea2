#pragma once

#include <cmath>
#include <limits>

#include "multifid/bivariate.hpp"
#include "multifid/classical.hpp"
#include "multifid/quantum.hpp"
#include "multifid/sdp.hpp"
#include "multifid/sdp_builders.hpp"

namespace multifid {

enum class Method {
  AvgPairwiseZ,
  FsdpPrimal,
  FsdpDual,
  FsdpBoth,
  Secrecy,
  LogEuclidean,
  LogEuclideanDivergence,
  Oveloh,
  MinDHalf,
  AvgKwiseLogEuclidean,
  Measured,
  KstarPure,
  Kstar,
  GeometricMulti,
  PermLowerBound,
};

struct Certificate {
  double gap = std::numeric_limits<double>::quiet_NaN();
  double eps_used = std::numeric_limits<double>::quiet_NaN();
  double mu = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  bool budget_exhausted = false;
  bool optimal = true;  // SDP-backed values: solver reached its gap criterion
};

// Value of one multivariate fidelity/divergence evaluation.  Fidelities are
// clamped to [0, 1] on report (raw value preserved); divergences are
// nonnegative reals.
struct FidelityValue {
  double value = 0.0;
  double raw_value = 0.0;
  Method method = Method::AvgPairwiseZ;
  Certificate cert;
};

enum class FsdpRoute { Primal, Dual, Both };

std::vector<HermitianMatrix> as_operators(const StateTuple& t);

// (2/r(r-1)) sum_{i<j} F_z(rho_i, rho_j)
FidelityValue avg_pairwise_z(const StateTuple& t, ZParam z);

double avg_pairwise_uhlmann(const StateTuple& t);
double avg_pairwise_holevo(const StateTuple& t);

// Multivariate SDP fidelity.  Dual route: the pinned block-matrix (sup)
// program, robust for any ranks via facial reduction.  Primal route: the
// explicit inf-over-Y program (independent encoding; its optimizer is
// attained for full-rank states).  Both: one pinned solve, midpoint of the
// two sides with the gap as certificate.
FidelityValue f_sdp(const StateTuple& t, FsdpRoute use = FsdpRoute::Dual,
                    const SolveOptions& opts = {});
FidelityValue f_sdp_psd(const std::vector<HermitianMatrix>& operators,
                        FsdpRoute use = FsdpRoute::Dual, const SolveOptions& opts = {});

// Secrecy measure S = sup_sigma (1/r) sum_i F(rho_i, sigma).
double secrecy_measure(const StateTuple& t, const SolveOptions& opts = {});

// F_S = (r S^2 - 1) / (r - 1), clamped at 0 with the raw value recorded.
FidelityValue f_secrecy(const StateTuple& t, const SolveOptions& opts = {});

// Tr exp((1/r) sum_i ln rho_i(eps)), infimum over the schedule.
FidelityValue f_log_euclidean(const StateTuple& t,
                              const EpsSchedule& schedule = EpsSchedule::defaults());

// H_s = -ln Tr exp(sum_i s_i ln rho_i(eps)), the eps -> 0 limit reported.
FidelityValue log_euclidean_divergence(const StateTuple& t, const ProbabilityVector& s,
                                       const EpsSchedule& schedule = EpsSchedule::defaults());

struct OvelohResult {
  FidelityValue divergence;      // O(X;A) = -ln F_log_euclidean
  DensityMatrix optimizer;       // exp((1/r) sum ln rho_i(eps)) / normalization
  double objective_at_optimizer; // (1/r) sum_i D(optimizer || rho_i(eps))
  double descent_improvement;    // best improvement found by direct descent
};

// Oveloh information with a certificate that a direct descent over sigma
// does not beat the closed-form optimizer by more than the stated slack.
OvelohResult oveloh(const StateTuple& t, const EpsSchedule& schedule = EpsSchedule::defaults(),
                    std::uint64_t descent_seed = 0x5eedULL);

// exp[-inf_sigma D_{1/2}(rho_XA || rho_X (x) sigma)] = Tr[(sum_i sqrt(rho_i)/r)^2]
double min_d_half_closed_form(const StateTuple& t);

FidelityValue avg_kwise_log_euclidean(const StateTuple& t, int k,
                                      const EpsSchedule& schedule = EpsSchedule::defaults());

struct MeasuredOptions {
  int n_outcomes = 0;  // 0 -> d^2
  int budget = 4800;   // total objective evaluations across restarts
  int restarts = 8;
  std::uint64_t seed = 0x5eedULL;
};

// Heuristic upper bound on the measured average pairwise fidelity: best
// value of the POVM-optimized classical average pairwise fidelity found by
// restarted Nelder-Mead over a QR-parametrized Naimark isometry.
FidelityValue f_measured(const StateTuple& t, const MeasuredOptions& opts = {});

// (2/r(r-1)) max over permutations of sum_{i <= floor(r/2)} F(rho_pi(i),
// rho_pi(i + floor(r/2))), exhaustive for r <= 6.
double sdp_lower_bound_perm(const StateTuple& t);

// Value of the purification-based (K*) program; equals f_sdp for invertible
// states.
FidelityValue kstar_value(const StateTuple& t, const SolveOptions& opts = {});

// Gram-matrix program for a tuple of pure states.
FidelityValue kstar_pure_value(const std::vector<std::vector<cplx>>& vectors,
                               const SolveOptions& opts = {});

// Multivariate geometric-mean program (Hermitian off-diagonal blocks).
FidelityValue geometric_multi_value(const StateTuple& t, const SolveOptions& opts = {});

// ---- tuple utilities --------------------------------------------------------

StateTuple tensor_power_tuple(const StateTuple& t, int n);

// rho^(eps) = (rho + (eps/d) I) / (1 + eps)
StateTuple epsilon_mixed_tuple(const StateTuple& t, double eps);

DensityMatrix epsilon_mixed(const DensityMatrix& rho, double eps);

StateTuple apply_channel_tuple(const QuantumChannel& channel, const StateTuple& t);

// Quantum relative entropy D(rho || sigma) with the support convention;
// +infinity when supp(rho) is not contained in supp(sigma).
double relative_entropy(const DensityMatrix& rho, const HermitianMatrix& sigma);

}  // namespace multifid

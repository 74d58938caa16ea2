#include "multifid/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "multifid/io.hpp"

namespace multifid {

namespace {

// margins produced by one trial: (property_id, margin, slack)
struct TrialMargin {
  std::string property;
  double margin;
  double slack;
};

using TrialFn = std::function<std::vector<TrialMargin>(std::uint64_t trial_seed)>;
// regenerates the trial's input tuple for failure dumps
using DumpFn = std::function<void(std::uint64_t trial_seed, const std::string& path)>;

struct SuiteDef {
  TrialFn trial;
  DumpFn dump;
};

std::string digest_for(std::uint64_t seed) {
  std::ostringstream os;
  os << "seed=" << seed;
  return os.str();
}

struct TupleShape {
  int r, d;
};

TupleShape shape_for(std::uint64_t seed, int r_lo, int r_hi, int d_lo, int d_hi) {
  Rng rng(seed ^ 0xabcdefULL);
  return TupleShape{rng.uniform_int(r_lo, r_hi), rng.uniform_int(d_lo, d_hi)};
}

SolveOptions suite_solve_options() {
  SolveOptions o;
  o.gap_tol = 1e-9;
  return o;
}

}  // namespace

StateTuple random_tuple(int r, int d, bool full_rank, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DensityMatrix> states;
  states.reserve(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    const int rank = full_rank ? d : rng.uniform_int(1, d);
    states.push_back(random_density(d, rank, rng));
  }
  return StateTuple(std::move(states));
}

ClassicalTuple random_classical_tuple(int r, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ProbabilityVector> dists;
  dists.reserve(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    std::vector<double> p(static_cast<std::size_t>(n));
    double total = 0.0;
    for (double& v : p) {
      v = -std::log(std::max(rng.uniform(), 1e-300));
      total += v;
    }
    // occasionally zero out an entry to exercise support edge cases
    if (rng.uniform() < 0.3) {
      const int kill = rng.uniform_int(0, n - 1);
      total -= p[static_cast<std::size_t>(kill)];
      p[static_cast<std::size_t>(kill)] = 0.0;
    }
    for (double& v : p) v /= total;
    dists.emplace_back(std::move(p));
  }
  return ClassicalTuple(std::move(dists));
}

StateTuple published_qubit_triple() {
  ComplexMatrix r1(2, 2), r2(2, 2), r3(2, 2);
  r1(0, 0) = 0.3465;
  r1(0, 1) = cplx(-0.2036, 0.2643);
  r1(1, 0) = cplx(-0.2036, -0.2643);
  r1(1, 1) = 0.6535;
  r2(0, 0) = 0.6546;
  r2(0, 1) = cplx(-0.3308, -0.2297);
  r2(1, 0) = cplx(-0.3308, 0.2297);
  r2(1, 1) = 0.3454;
  r3(0, 0) = 0.6169;
  r3(0, 1) = cplx(0.0327, -0.0321);
  r3(1, 0) = cplx(0.0327, 0.0321);
  r3(1, 1) = 0.3831;
  return StateTuple({DensityMatrix(symmetrize(r1)), DensityMatrix(symmetrize(r2)),
                     DensityMatrix(symmetrize(r3))});
}

std::vector<std::vector<cplx>> published_pure_triple() {
  std::vector<std::vector<cplx>> psis = {
      {cplx(-0.8954, 0.2791), cplx(0.2061, -0.0805), cplx(0.2418, 0.1135)},
      {cplx(-0.2422, 0.2315), cplx(0.4386, -0.4318), cplx(-0.6928, -0.1704)},
      {cplx(0.2560, 0.5837), cplx(0.4811, -0.3057), cplx(-0.5175, -0.314)},
  };
  for (auto& v : psis) {
    const double nrm = vector_norm(v);
    for (auto& z : v) z /= nrm;
  }
  return psis;
}

std::vector<ProbabilityVector> matusita_zero_vectors() {
  return {ProbabilityVector({0.0, 0.5, 0.5}), ProbabilityVector({0.5, 0.0, 0.5}),
          ProbabilityVector({0.5, 0.5, 0.0})};
}

namespace {

void dump_tuple(const StateTuple& tuple, const std::string& path) {
  write_state_file(path, from_tuple(tuple));
}

// ---- suite definitions -------------------------------------------------------

std::vector<TrialMargin> chain_trial(std::uint64_t seed) {
  const TupleShape shape = shape_for(seed, 2, 5, 2, 4);
  StateTuple t = random_tuple(shape.r, shape.d, false, seed);
  const SolveOptions opts = suite_solve_options();
  const double fh = avg_pairwise_holevo(t);
  const double fs = f_secrecy(t, opts).raw_value;
  const double fsdp = f_sdp(t, FsdpRoute::Dual, opts).raw_value;
  const double fu = avg_pairwise_uhlmann(t);
  const double slack = 1e-7;
  return {
      {"chain.fh-le-fs", fs - fh, slack},
      {"chain.fs-le-fsdp", fsdp - fs, slack},
      {"chain.fsdp-le-fu", fu - fsdp, slack},
      {"chain.fu-le-sqrt-fh", std::sqrt(std::max(fh, 0.0)) - fu, slack},
  };
}

std::vector<TrialMargin> dpi_trial(std::uint64_t seed) {
  const TupleShape shape = shape_for(seed, 2, 4, 2, 3);
  StateTuple t = random_tuple(shape.r, shape.d, false, seed);
  Rng rng(seed ^ 0x77ULL);
  const int d_out = rng.uniform_int(2, 3);
  const int env = rng.uniform_int(2, 3);
  QuantumChannel channel = random_channel(shape.d, d_out, env, rng);
  StateTuple post = apply_channel_tuple(channel, t);
  const SolveOptions opts = suite_solve_options();
  const double slack = 1e-7;
  std::vector<TrialMargin> out;
  out.push_back({"dpi.avg-z-uhlmann",
                 avg_pairwise_z(post, ZParam::of(0.5)).raw_value -
                     avg_pairwise_z(t, ZParam::of(0.5)).raw_value,
                 slack});
  out.push_back({"dpi.avg-z-holevo",
                 avg_pairwise_z(post, ZParam::of(1.0)).raw_value -
                     avg_pairwise_z(t, ZParam::of(1.0)).raw_value,
                 slack});
  out.push_back({"dpi.fsdp",
                 f_sdp(post, FsdpRoute::Dual, opts).raw_value -
                     f_sdp(t, FsdpRoute::Dual, opts).raw_value,
                 slack});
  out.push_back({"dpi.fsecrecy",
                 f_secrecy(post, opts).raw_value - f_secrecy(t, opts).raw_value, slack});
  out.push_back({"dpi.flog",
                 f_log_euclidean(post).raw_value - f_log_euclidean(t).raw_value, slack});
  return out;
}

std::vector<TrialMargin> classical_reduction_trial(std::uint64_t seed) {
  const TupleShape shape = shape_for(seed, 2, 4, 2, 4);
  ClassicalTuple probs = random_classical_tuple(shape.r, shape.d, seed);
  StateTuple t = commuting_tuple_from_probs(probs.dists());
  const SolveOptions opts = suite_solve_options();
  const double classical_pairwise = avg_pairwise_classical(probs);
  const double classical_matusita = matusita(probs);
  std::vector<TrialMargin> out;
  out.push_back({"classical.fsdp",
                 1e-6 - std::abs(f_sdp(t, FsdpRoute::Dual, opts).raw_value - classical_pairwise),
                 0.0});
  out.push_back({"classical.fsecrecy",
                 1e-6 - std::abs(f_secrecy(t, opts).raw_value - classical_pairwise), 0.0});
  out.push_back({"classical.flog",
                 1e-6 - std::abs(f_log_euclidean(t).raw_value - classical_matusita), 0.0});
  const double z_half = avg_pairwise_z(t, ZParam::of(0.5)).raw_value;
  const double z_one = avg_pairwise_z(t, ZParam::of(1.0)).raw_value;
  const double z_four = avg_pairwise_z(t, ZParam::of(4.0)).raw_value;
  const double spread =
      std::max({z_half, z_one, z_four}) - std::min({z_half, z_one, z_four});
  out.push_back({"classical.z-independence", 1e-8 - spread, 0.0});
  return out;
}

std::vector<TrialMargin> duality_trial(std::uint64_t seed) {
  const TupleShape shape = shape_for(seed, 2, 4, 2, 4);
  StateTuple t = random_tuple(shape.r, shape.d, true, seed);
  const SolveOptions opts = suite_solve_options();
  FidelityValue via_dual = f_sdp(t, FsdpRoute::Dual, opts);
  FidelityValue via_primal = f_sdp(t, FsdpRoute::Primal, opts);
  const double diff = std::abs(via_dual.raw_value - via_primal.raw_value);
  std::vector<TrialMargin> out;
  out.push_back(
      {"duality.primal-vs-dual", 2e-8 * (1.0 + std::abs(via_dual.raw_value)) - diff, 0.0});

  // pure tuples: Gram program agrees with the block program
  Rng rng(seed ^ 0x99ULL);
  std::vector<std::vector<cplx>> vecs;
  std::vector<DensityMatrix> pures;
  for (int i = 0; i < shape.r; ++i) {
    std::vector<cplx> v = random_pure_state(shape.d, rng);
    pures.emplace_back(symmetrize(outer(v, v)), Validation::Repair);
    vecs.push_back(std::move(v));
  }
  StateTuple pure_tuple(std::move(pures));
  const double gram = kstar_pure_value(vecs, opts).raw_value;
  const double block = f_sdp(pure_tuple, FsdpRoute::Dual, opts).raw_value;
  out.push_back({"duality.kstar-pure", 1e-6 - std::abs(gram - block), 0.0});
  return out;
}

std::vector<TrialMargin> continuity_trial(std::uint64_t seed) {
  const TupleShape shape = shape_for(seed, 2, 4, 2, 3);
  StateTuple t = random_tuple(shape.r, shape.d, false, seed);
  Rng rng(seed ^ 0x1234ULL);
  const double mix = rng.uniform(0.001, 0.2);
  std::vector<DensityMatrix> perturbed;
  for (const auto& s : t.states()) {
    DensityMatrix noise = random_density(shape.d, shape.d, rng);
    ComplexMatrix mixed = s.matrix();
    mixed *= cplx(1.0 - mix, 0.0);
    ComplexMatrix np = noise.matrix();
    np *= cplx(mix, 0.0);
    mixed += np;
    perturbed.emplace_back(symmetrize(mixed), Validation::Repair);
  }
  StateTuple u(std::move(perturbed));
  const int r = shape.r;
  const SolveOptions opts = suite_solve_options();

  double mean_bures = 0.0, mean_hell = 0.0, mean_fid = 0.0;
  for (int i = 0; i < r; ++i) {
    mean_bures += bures_distance(t[i], u[i]);
    mean_hell += hellinger_distance_q(t[i], u[i]);
    mean_fid += uhlmann(t[i], u[i]);
  }
  mean_bures /= r;
  mean_hell /= r;
  mean_fid /= r;

  std::vector<TrialMargin> out;
  out.push_back({"continuity.pairwise-uhlmann",
                 2.0 * std::sqrt(2.0) * mean_bures -
                     std::abs(avg_pairwise_uhlmann(t) - avg_pairwise_uhlmann(u)),
                 0.0});
  out.push_back({"continuity.pairwise-holevo",
                 2.0 * std::sqrt(2.0) * mean_hell -
                     std::abs(avg_pairwise_holevo(t) - avg_pairwise_holevo(u)),
                 0.0});
  const double eps_fid = std::min(1.0, std::max(0.0, 1.0 - mean_fid));
  out.push_back({"continuity.fsdp",
                 (static_cast<double>(r) / (r - 1)) * std::sqrt(eps_fid * (2.0 - eps_fid)) -
                     std::abs(f_sdp(t, FsdpRoute::Dual, opts).raw_value -
                              f_sdp(u, FsdpRoute::Dual, opts).raw_value),
                 0.0});
  out.push_back({"continuity.fsecrecy",
                 2.0 * std::sqrt(2.0) * (static_cast<double>(r) / (r - 1)) * mean_bures -
                     std::abs(f_secrecy(t, opts).raw_value - f_secrecy(u, opts).raw_value),
                 0.0});

  // classical Matusita bound on measured distributions of the same shapes
  ClassicalTuple p = random_classical_tuple(r, shape.d + 1, seed ^ 0x555ULL);
  Rng prng(seed ^ 0x556ULL);
  std::vector<ProbabilityVector> q_dists;
  double mean_dh2 = 0.0;
  for (int i = 0; i < r; ++i) {
    std::vector<double> q(p[i].probs());
    double total = 0.0;
    const double tmix = prng.uniform(0.0, 0.3);
    for (std::size_t x = 0; x < q.size(); ++x) {
      q[x] = (1.0 - tmix) * q[x] + tmix / q.size();
      total += q[x];
    }
    for (double& v : q) v /= total;
    ProbabilityVector qv(std::move(q));
    const double dh = hellinger_distance(p[i], qv);
    mean_dh2 += dh * dh;
    q_dists.push_back(std::move(qv));
  }
  mean_dh2 /= r;
  ClassicalTuple q(std::move(q_dists));
  out.push_back({"continuity.matusita",
                 r * std::pow(mean_dh2, 1.0 / r) - std::abs(matusita(p) - matusita(q)), 0.0});
  return out;
}

std::vector<TrialMargin> kwise_classical_trial(std::uint64_t seed) {
  const TupleShape shape = shape_for(seed, 3, 5, 3, 6);
  ClassicalTuple t = random_classical_tuple(shape.r, shape.d, seed);
  std::vector<TrialMargin> out;
  double prev = avg_kwise_classical(t, 2);
  for (int k = 3; k <= shape.r; ++k) {
    const double cur = avg_kwise_classical(t, k);
    out.push_back({"kwise-classical.k" + std::to_string(k - 1) + "-ge-k" + std::to_string(k),
                   prev - cur, 1e-9});
    prev = cur;
  }
  // AM-GM endpoint: average pairwise >= Matusita
  out.push_back({"kwise-classical.amgm", avg_pairwise_classical(t) - matusita(t), 1e-9});
  return out;
}

std::vector<TrialMargin> kwise_logeuclidean_trial(std::uint64_t seed) {
  const TupleShape shape = shape_for(seed, 3, 4, 2, 3);
  StateTuple t = random_tuple(shape.r, shape.d, true, seed);
  std::vector<TrialMargin> out;
  double prev = avg_kwise_log_euclidean(t, 2).raw_value;
  for (int k = 3; k <= shape.r; ++k) {
    const double cur = avg_kwise_log_euclidean(t, k).raw_value;
    out.push_back({"kwise-log.k" + std::to_string(k - 1) + "-ge-k" + std::to_string(k),
                   prev - cur, 1e-6});
    prev = cur;
  }
  return out;
}

std::vector<TrialMargin> supermult_avgz_trial(std::uint64_t seed) {
  const TupleShape shape = shape_for(seed, 2, 3, 2, 3);
  StateTuple t = random_tuple(shape.r, shape.d, false, seed);
  StateTuple t2 = tensor_power_tuple(t, 2);
  std::vector<TrialMargin> out;
  for (double z : {0.5, 1.0}) {
    const double base = avg_pairwise_z(t, ZParam::of(z)).raw_value;
    const double squared = avg_pairwise_z(t2, ZParam::of(z)).raw_value;
    out.push_back({"supermult.avg-z" + format_double(z), squared - base * base, 1e-8});
  }
  return out;
}

std::vector<TrialMargin> oveloh_trial(std::uint64_t seed) {
  const TupleShape shape = shape_for(seed, 2, 4, 2, 4);
  StateTuple t = random_tuple(shape.r, shape.d, true, seed);
  OvelohResult ov = oveloh(t, EpsSchedule::defaults(), seed ^ 0xdeadULL);
  const double flat = f_log_euclidean(t).raw_value;
  std::vector<TrialMargin> out;
  out.push_back(
      {"oveloh.identity", 1e-8 - std::abs(std::exp(-ov.divergence.raw_value) - flat), 0.0});
  const int r = t.size();
  const double lhs = min_d_half_closed_form(t);
  const double rhs = 1.0 / r + (static_cast<double>(r - 1) / r) * std::exp(-ov.divergence.raw_value);
  out.push_back({"oveloh.holevo-corollary", lhs - rhs, 1e-7});
  out.push_back({"oveloh.descent-certificate", 1e-5 - ov.descent_improvement, 0.0});
  return out;
}

std::vector<TrialMargin> direct_sum_trial(std::uint64_t seed) {
  Rng rng(seed);
  const int r = rng.uniform_int(2, 3);
  const int d = 2;
  const int blocks = 2;
  // weights
  std::vector<double> w(static_cast<std::size_t>(blocks));
  double total = 0.0;
  for (double& v : w) {
    v = rng.uniform(0.2, 1.0);
    total += v;
  }
  for (double& v : w) v /= total;
  ProbabilityVector weights(w);

  // blockwise tuples
  std::vector<StateTuple> block_tuples;
  for (int x = 0; x < blocks; ++x)
    block_tuples.push_back(random_tuple(r, d, true, derive_seed(seed, 100 + x)));

  std::vector<DensityMatrix> embedded;
  for (int i = 0; i < r; ++i) {
    std::vector<DensityMatrix> slots;
    for (int x = 0; x < blocks; ++x) slots.push_back(block_tuples[static_cast<std::size_t>(x)][i]);
    embedded.push_back(cq_state(weights, slots));
  }
  StateTuple cq(std::move(embedded));

  const SolveOptions opts = suite_solve_options();
  auto weighted = [&](const std::function<double(const StateTuple&)>& f) {
    double s = 0.0;
    for (int x = 0; x < blocks; ++x) s += weights[x] * f(block_tuples[static_cast<std::size_t>(x)]);
    return s;
  };

  std::vector<TrialMargin> out;
  out.push_back({"direct-sum.avg-uhlmann",
                 1e-7 - std::abs(avg_pairwise_uhlmann(cq) - weighted(avg_pairwise_uhlmann)), 0.0});
  out.push_back({"direct-sum.fsdp",
                 1e-7 - std::abs(f_sdp(cq, FsdpRoute::Dual, opts).raw_value -
                                 weighted([&](const StateTuple& s) {
                                   return f_sdp(s, FsdpRoute::Dual, opts).raw_value;
                                 })),
                 0.0});
  out.push_back({"direct-sum.fsecrecy",
                 1e-7 - std::abs(f_secrecy(cq, opts).raw_value -
                                 weighted([&](const StateTuple& s) {
                                   return f_secrecy(s, opts).raw_value;
                                 })),
                 0.0});
  out.push_back({"direct-sum.flog",
                 1e-7 - std::abs(f_log_euclidean(cq).raw_value - weighted([&](const StateTuple& s) {
                                   return f_log_euclidean(s).raw_value;
                                 })),
                 0.0});
  return out;
}

std::vector<TrialMargin> eps_monotonicity_trial(std::uint64_t seed) {
  const TupleShape shape = shape_for(seed, 2, 3, 2, 3);
  StateTuple t = random_tuple(shape.r, shape.d, false, seed);
  const SolveOptions opts = suite_solve_options();
  const double eps[] = {0.0, 1e-3, 1e-2};
  double values[3];
  for (int i = 0; i < 3; ++i) {
    StateTuple mixed = eps[i] == 0.0 ? t : epsilon_mixed_tuple(t, eps[i]);
    values[i] = (1.0 + eps[i]) * f_sdp(mixed, FsdpRoute::Dual, opts).raw_value;
  }
  std::vector<TrialMargin> out;
  out.push_back({"eps-monotonicity.0-le-1e3", values[1] - values[0], 1e-8});
  out.push_back({"eps-monotonicity.1e3-le-1e2", values[2] - values[1], 1e-8});
  return out;
}

std::vector<TrialMargin> scale_invariance_trial(std::uint64_t seed) {
  const TupleShape shape = shape_for(seed, 2, 3, 2, 3);
  StateTuple t = random_tuple(shape.r, shape.d, false, seed);
  Rng rng(seed ^ 0x31ULL);
  const double c = rng.uniform(0.2, 3.0);
  const SolveOptions opts = suite_solve_options();
  std::vector<HermitianMatrix> scaled;
  for (const auto& s : t.states()) {
    ComplexMatrix m = s.matrix();
    m *= cplx(c, 0.0);
    scaled.push_back(symmetrize(m));
  }
  const double base = f_sdp(t, FsdpRoute::Dual, opts).raw_value;
  SdpSolution sol = solve(build_fsdp_dual(scaled), opts);
  const double rel = std::abs(sol.primal_value - c * base) / (1.0 + std::abs(c * base));
  return {{"scale-invariance.fsdp", 1e-8 - rel, 0.0}};
}

std::vector<TrialMargin> kstar_equivalence_trial(std::uint64_t seed) {
  const TupleShape shape = shape_for(seed, 2, 4, 2, 3);
  StateTuple t = random_tuple(shape.r, shape.d, true, seed);
  const SolveOptions opts = suite_solve_options();
  const double via_kstar = kstar_value(t, opts).raw_value;
  const double via_fsdp = f_sdp(t, FsdpRoute::Dual, opts).raw_value;
  return {{"kstar.equivalence", 1e-6 - std::abs(via_kstar - via_fsdp), 0.0}};
}

std::vector<TrialMargin> coarse_graining_trial(std::uint64_t seed) {
  Rng rng(seed ^ 0x17ULL);
  const int r = rng.uniform_int(2, 3);
  const int m_extra = rng.uniform_int(1, 2);
  const int d = rng.uniform_int(2, 3);
  StateTuple big = random_tuple(r + m_extra, d, false, seed);
  std::vector<DensityMatrix> head(big.states().begin(), big.states().begin() + r);
  StateTuple small(std::move(head));
  const SolveOptions opts = suite_solve_options();
  const double scale = (static_cast<double>(r + m_extra) * (r + m_extra - 1)) /
                       (static_cast<double>(r) * (r - 1));
  std::vector<TrialMargin> out;
  for (double z : {0.5, 1.0}) {
    out.push_back({"coarse.avg-z" + format_double(z),
                   scale * avg_pairwise_z(big, ZParam::of(z)).raw_value -
                       avg_pairwise_z(small, ZParam::of(z)).raw_value,
                   1e-9});
  }
  out.push_back({"coarse.fsdp",
                 scale * f_sdp(big, FsdpRoute::Dual, opts).raw_value -
                     f_sdp(small, FsdpRoute::Dual, opts).raw_value,
                 1e-7});
  out.push_back({"coarse.fsecrecy",
                 scale * f_secrecy(big, opts).raw_value +
                     static_cast<double>(m_extra) / (static_cast<double>(r) * (r - 1)) -
                     f_secrecy(small, opts).raw_value,
                 1e-7});
  return out;
}

std::vector<TrialMargin> permutation_trial(std::uint64_t seed) {
  const TupleShape shape = shape_for(seed, 3, 4, 2, 3);
  StateTuple t = random_tuple(shape.r, shape.d, false, seed);
  Rng rng(seed ^ 0x71ULL);
  std::vector<int> perm(static_cast<std::size_t>(shape.r));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = shape.r - 1; i > 0; --i)
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
  std::vector<DensityMatrix> shuffled;
  for (int i = 0; i < shape.r; ++i) shuffled.push_back(t[perm[static_cast<std::size_t>(i)]]);
  StateTuple u(std::move(shuffled));
  const SolveOptions opts = suite_solve_options();
  std::vector<TrialMargin> out;
  out.push_back({"perm.avg-uhlmann",
                 1e-9 - std::abs(avg_pairwise_uhlmann(t) - avg_pairwise_uhlmann(u)), 0.0});
  out.push_back({"perm.fsdp",
                 1e-8 - std::abs(f_sdp(t, FsdpRoute::Dual, opts).raw_value -
                                 f_sdp(u, FsdpRoute::Dual, opts).raw_value),
                 0.0});
  out.push_back({"perm.fsecrecy",
                 1e-8 - std::abs(f_secrecy(t, opts).raw_value - f_secrecy(u, opts).raw_value),
                 0.0});
  out.push_back({"perm.flog",
                 1e-9 - std::abs(f_log_euclidean(t).raw_value - f_log_euclidean(u).raw_value),
                 0.0});
  return out;
}

std::vector<TrialMargin> selftest_fail_trial(std::uint64_t seed) {
  (void)seed;
  return {{"selftest.always-fail", -1.0, 0.0}};
}

const std::map<std::string, SuiteDef>& suite_registry() {
  static const std::map<std::string, SuiteDef> registry = [] {
    std::map<std::string, SuiteDef> reg;
    auto tuple_dump = [](int r_lo, int r_hi, int d_lo, int d_hi, bool full_rank) {
      return [=](std::uint64_t seed, const std::string& path) {
        const TupleShape shape = shape_for(seed, r_lo, r_hi, d_lo, d_hi);
        dump_tuple(random_tuple(shape.r, shape.d, full_rank, seed), path);
      };
    };
    reg["inequality-chain"] = SuiteDef{chain_trial, tuple_dump(2, 5, 2, 4, false)};
    reg["dpi-all"] = SuiteDef{dpi_trial, tuple_dump(2, 4, 2, 3, false)};
    reg["classical-reduction"] = SuiteDef{classical_reduction_trial, [](std::uint64_t seed, const std::string& path) {
      const TupleShape shape = shape_for(seed, 2, 4, 2, 4);
      ClassicalTuple probs = random_classical_tuple(shape.r, shape.d, seed);
      dump_tuple(commuting_tuple_from_probs(probs.dists()), path);
    }};
    reg["duality-cert"] = SuiteDef{duality_trial, tuple_dump(2, 4, 2, 4, true)};
    reg["continuity"] = SuiteDef{continuity_trial, tuple_dump(2, 4, 2, 3, false)};
    reg["kwise-ordering-classical"] = SuiteDef{kwise_classical_trial, [](std::uint64_t seed, const std::string& path) {
      const TupleShape shape = shape_for(seed, 3, 5, 3, 6);
      ClassicalTuple probs = random_classical_tuple(shape.r, shape.d, seed);
      dump_tuple(commuting_tuple_from_probs(probs.dists()), path);
    }};
    reg["kwise-ordering-logeuclidean"] =
        SuiteDef{kwise_logeuclidean_trial, tuple_dump(3, 4, 2, 3, true)};
    reg["supermult-avgz"] = SuiteDef{supermult_avgz_trial, tuple_dump(2, 3, 2, 3, false)};
    reg["oveloh"] = SuiteDef{oveloh_trial, tuple_dump(2, 4, 2, 4, true)};
    reg["direct-sum"] = SuiteDef{direct_sum_trial, [](std::uint64_t seed, const std::string& path) {
      Rng rng(seed);
      const int r = rng.uniform_int(2, 3);
      const int d = 2;
      std::vector<double> w = {rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0)};
      const double total = w[0] + w[1];
      ProbabilityVector weights({w[0] / total, w[1] / total});
      std::vector<StateTuple> block_tuples;
      for (int x = 0; x < 2; ++x)
        block_tuples.push_back(random_tuple(r, d, true, derive_seed(seed, 100 + x)));
      std::vector<DensityMatrix> embedded;
      for (int i = 0; i < r; ++i)
        embedded.push_back(cq_state(weights, {block_tuples[0][i], block_tuples[1][i]}));
      dump_tuple(StateTuple(std::move(embedded)), path);
    }};
    reg["eps-monotonicity"] = SuiteDef{eps_monotonicity_trial, tuple_dump(2, 3, 2, 3, false)};
    reg["scale-invariance"] = SuiteDef{scale_invariance_trial, tuple_dump(2, 3, 2, 3, false)};
    reg["kstar-equivalence"] = SuiteDef{kstar_equivalence_trial, tuple_dump(2, 4, 2, 3, true)};
    reg["coarse-graining"] = SuiteDef{coarse_graining_trial, [](std::uint64_t seed, const std::string& path) {
      Rng rng(seed ^ 0x17ULL);
      const int r = rng.uniform_int(2, 3);
      const int m_extra = rng.uniform_int(1, 2);
      const int d = rng.uniform_int(2, 3);
      dump_tuple(random_tuple(r + m_extra, d, false, seed), path);
    }};
    reg["permutation-invariance"] = SuiteDef{permutation_trial, tuple_dump(3, 4, 2, 3, false)};
    reg["selftest-always-fail"] = SuiteDef{selftest_fail_trial, [](std::uint64_t seed, const std::string& path) {
      dump_tuple(random_tuple(2, 2, true, seed), path);
    }};
    return reg;
  }();
  return registry;
}

}  // namespace

std::vector<std::string> known_suites() {
  std::vector<std::string> out;
  for (const auto& [name, def] : suite_registry()) out.push_back(name);
  return out;
}

std::vector<PropertyReport> run_property_suite(const std::string& suite_id,
                                               const SuiteOptions& options) {
  const auto it = suite_registry().find(suite_id);
  if (it == suite_registry().end())
    throw InvariantViolation("unknown suite '" + suite_id + "'");
  const SuiteDef& suite = it->second;
  const int trials = std::max(1, options.trials);

  const auto start = std::chrono::steady_clock::now();

  std::vector<std::vector<TrialMargin>> results(static_cast<std::size_t>(trials));
  int n_threads = options.threads > 0
                      ? options.threads
                      : std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  n_threads = std::min(n_threads, trials);

  auto worker = [&](int tid) {
    for (int trial = tid; trial < trials; trial += n_threads) {
      const std::uint64_t trial_seed = derive_seed(options.seed, static_cast<std::uint64_t>(trial));
      results[static_cast<std::size_t>(trial)] = suite.trial(trial_seed);
    }
  };
  if (n_threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int tid = 0; tid < n_threads; ++tid) pool.emplace_back(worker, tid);
    for (auto& th : pool) th.join();
  }

  // deterministic aggregation by trial index
  std::vector<std::string> order;
  std::map<std::string, PropertyReport> agg;
  int dump_count = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(options.seed, static_cast<std::uint64_t>(trial));
    for (const auto& m : results[static_cast<std::size_t>(trial)]) {
      auto [pos, inserted] = agg.try_emplace(m.property);
      PropertyReport& rep = pos->second;
      if (inserted) {
        order.push_back(m.property);
        rep.property_id = m.property;
        rep.slack = m.slack;
        rep.worst_margin = m.margin;
        rep.worst_input_digest = digest_for(trial_seed);
      }
      rep.trials += 1;
      if (m.margin < rep.worst_margin) {
        rep.worst_margin = m.margin;
        rep.worst_input_digest = digest_for(trial_seed);
      }
      if (m.margin < -m.slack) {
        rep.failures += 1;
        if (options.dump_failures && dump_count < 16) {
          const std::string dir = options.dump_dir.empty() ? std::string(".") : options.dump_dir;
          const std::string path = dir + "/multifid-fail-" + suite_id + "-" +
                                   std::to_string(trial) + ".states";
          try {
            suite.dump(trial_seed, path);
          } catch (const Error&) {
            // dumping is best effort
          }
          ++dump_count;
        }
      }
    }
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::vector<PropertyReport> reports;
  for (const auto& name : order) {
    PropertyReport rep = agg[name];
    rep.elapsed_seconds = elapsed;
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<PropertyReport> reproduce_published_counterexamples() {
  std::vector<PropertyReport> reports;
  const auto start = std::chrono::steady_clock::now();
  const SolveOptions opts = suite_solve_options();

  auto add = [&](const std::string& id, double margin, double slack, const std::string& digest) {
    PropertyReport rep;
    rep.property_id = id;
    rep.trials = 1;
    rep.slack = slack;
    rep.worst_margin = margin;
    rep.failures = margin < -slack ? 1 : 0;
    rep.worst_input_digest = digest;
    reports.push_back(std::move(rep));
  };

  // published super-multiplicativity violation
  {
    auto vectors = published_pure_triple();
    const double f1 = kstar_pure_value(vectors, opts).raw_value;
    std::vector<std::vector<cplx>> squared;
    for (const auto& v : vectors) squared.push_back(kron_vec(v, v));
    const double f2 = kstar_pure_value(squared, opts).raw_value;
    add("published-supermult.f2-value", 1e-3 - std::abs(f1 * f1 - 0.4075), 0.0,
        "published pure triple, F_SDP^2 computed " + format_double(f1 * f1));
    add("published-supermult.tensor-value", 1e-3 - std::abs(f2 - 0.3820), 0.0,
        "published pure triple, F_SDP(tensor square) computed " + format_double(f2));
    add("published-supermult.direction", f1 * f1 - f2, 0.0,
        "published pure triple, violation margin " + format_double(f1 * f1 - f2));
  }

  // measured-vs-SDP gap on the published qubit triple
  {
    StateTuple t = published_qubit_triple();
    const double fu = avg_pairwise_uhlmann(t);
    const double fsdp = f_sdp(t, FsdpRoute::Dual, opts).raw_value;
    add("published-measured-gap.fu-minus-fsdp", (fu - fsdp) - 1e-3, 0.0,
        "published qubit triple, gap " + format_double(fu - fsdp));
    MeasuredOptions mo;
    mo.seed = 0x1234ULL;
    const double fm = f_measured(t, mo).raw_value;
    add("published-measured-gap.fm-ge-fu", fm - fu + 1e-6, 0.0,
        "published qubit triple, F_M " + format_double(fm));
    add("published-measured-gap.fm-gt-fsdp", (fm - fsdp) - 1e-3, 0.0,
        "published qubit triple, F_M - F_SDP " + format_double(fm - fsdp));
  }

  // Matusita zero without disjoint supports
  {
    auto vecs = matusita_zero_vectors();
    ClassicalTuple t(vecs);
    add("published-matusita.zero", -std::abs(matusita(t)), 0.0, "published probability triple");
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        add("published-matusita.overlap-" + std::to_string(i) + std::to_string(j),
            1e-12 - std::abs(bhattacharyya(vecs[static_cast<std::size_t>(i)],
                                           vecs[static_cast<std::size_t>(j)]) -
                             0.5),
            0.0, "published probability triple");
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (auto& rep : reports) rep.elapsed_seconds = elapsed;
  return reports;
}

std::string report_digest(const std::vector<PropertyReport>& reports) {
  // FNV-1a over the elapsed-independent fields
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  for (const auto& rep : reports) {
    mix(rep.property_id);
    mix(std::to_string(rep.trials));
    mix(std::to_string(rep.failures));
    mix(format_double(rep.worst_margin));
    mix(rep.worst_input_digest);
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::vector<SearchCandidate> search_counterexamples(const SearchConfig& config) {
  if (config.trials < 1) throw InvariantViolation("search requires at least one trial");
  const SolveOptions opts = suite_solve_options();
  std::vector<SearchCandidate> candidates;
  candidates.reserve(static_cast<std::size_t>(config.trials));

  for (int trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(trial));
    Rng rng(seed);
    const int r = rng.uniform_int(config.r_min, config.r_max);
    const int d = rng.uniform_int(config.d_min, config.d_max);
    SearchCandidate cand;
    cand.trial_seed = seed;
    cand.r = r;
    cand.d = d;

    if (config.target == "supermult-fsdp") {
      std::vector<std::vector<cplx>> vecs;
      for (int i = 0; i < r; ++i) vecs.push_back(random_pure_state(d, rng));
      const double f1 = kstar_pure_value(vecs, opts).raw_value;
      std::vector<std::vector<cplx>> squared;
      for (const auto& v : vecs) squared.push_back(kron_vec(v, v));
      const double f2 = kstar_pure_value(squared, opts).raw_value;
      cand.margin = f1 * f1 - f2;
      cand.description = "F^2=" + format_double(f1 * f1) + " F(ox2)=" + format_double(f2);
    } else if (config.target == "fu-vs-fsdp-strict") {
      StateTuple t = random_tuple(r, d, false, seed);
      const double fu = avg_pairwise_uhlmann(t);
      const double fsdp = f_sdp(t, FsdpRoute::Dual, opts).raw_value;
      cand.margin = fu - fsdp;
      cand.description = "F_U=" + format_double(fu) + " F_SDP=" + format_double(fsdp);
    } else if (config.target == "chain") {
      StateTuple t = random_tuple(r, d, false, seed);
      const double fh = avg_pairwise_holevo(t);
      const double fs = f_secrecy(t, opts).raw_value;
      const double fsdp = f_sdp(t, FsdpRoute::Dual, opts).raw_value;
      const double fu = avg_pairwise_uhlmann(t);
      const double link = std::min({fs - fh, fsdp - fs, fu - fsdp,
                                    std::sqrt(std::max(fh, 0.0)) - fu});
      cand.margin = -link;  // positive would be a violation of the theorem
      cand.description = "tightest link margin " + format_double(link);
    } else {
      throw InvariantViolation("unknown search target '" + config.target + "'");
    }
    candidates.push_back(std::move(cand));
  }

  std::sort(candidates.begin(), candidates.end(), [](const SearchCandidate& a,
                                                     const SearchCandidate& b) {
    if (a.margin != b.margin) return a.margin > b.margin;
    if (a.d != b.d) return a.d < b.d;
    if (a.r != b.r) return a.r < b.r;
    return a.trial_seed < b.trial_seed;
  });
  if (static_cast<int>(candidates.size()) > config.top_k)
    candidates.resize(static_cast<std::size_t>(config.top_k));
  return candidates;
}

}  // namespace multifid

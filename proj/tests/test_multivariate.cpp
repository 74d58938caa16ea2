#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "multifid/harness.hpp"
#include "multifid/multivariate.hpp"

using namespace multifid;

namespace {

SolveOptions tight() {
  SolveOptions o;
  o.gap_tol = 1e-9;
  return o;
}

DensityMatrix pure_state(const std::vector<cplx>& v) {
  return DensityMatrix(symmetrize(outer(v, v)), Validation::Repair);
}

StateTuple orthogonal_pures(int r, int d) {
  std::vector<DensityMatrix> states;
  for (int i = 0; i < r; ++i) {
    std::vector<cplx> e(static_cast<std::size_t>(d), 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    states.push_back(pure_state(e));
  }
  return StateTuple(std::move(states));
}

}  // namespace

TEST_CASE("average pairwise z-fidelity") {
  Rng rng(3);
  DensityMatrix rho = random_density(3, 3, rng);
  StateTuple same({rho, rho, rho});
  CHECK(avg_pairwise_z(same, ZParam::of(0.5)).value == doctest::Approx(1.0).epsilon(1e-9));

  StateTuple ortho = orthogonal_pures(3, 3);
  CHECK(avg_pairwise_z(ortho, ZParam::of(1.0)).value == doctest::Approx(0.0).epsilon(1e-10));

  // commuting triple matches the classical average pairwise value for any z
  ClassicalTuple probs = random_classical_tuple(3, 3, 77);
  StateTuple t = commuting_tuple_from_probs(probs.dists());
  const double classical = avg_pairwise_classical(probs);
  for (double z : {0.5, 1.0, 4.0})
    CHECK(avg_pairwise_z(t, ZParam::of(z)).value == doctest::Approx(classical).epsilon(1e-9));
}

TEST_CASE("published qubit triple: strict F_U > F_SDP gap") {
  StateTuple t = published_qubit_triple();
  const double fu = avg_pairwise_uhlmann(t);
  const double fsdp = f_sdp(t, FsdpRoute::Dual, tight()).raw_value;
  CHECK(fu - fsdp > 1e-3);
  CHECK(fsdp == doctest::Approx(0.84630659).epsilon(1e-6));
  CHECK(fu == doctest::Approx(0.85039452).epsilon(1e-6));
}

TEST_CASE("f_sdp on commuting and identical tuples") {
  ClassicalTuple probs = random_classical_tuple(3, 3, 11);
  StateTuple t = commuting_tuple_from_probs(probs.dists());
  CHECK(f_sdp(t, FsdpRoute::Dual, tight()).value ==
        doctest::Approx(avg_pairwise_classical(probs)).epsilon(1e-6));

  Rng rng(13);
  DensityMatrix rho = random_density(2, 2, rng);
  StateTuple same({rho, rho});
  FidelityValue both = f_sdp(same, FsdpRoute::Both, tight());
  CHECK(both.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::isfinite(both.cert.gap));
}

TEST_CASE("f_secrecy basics") {
  Rng rng(17);
  DensityMatrix rho = random_density(2, 2, rng);
  StateTuple same({rho, rho, rho});
  CHECK(f_secrecy(same, tight()).value == doctest::Approx(1.0).epsilon(1e-6));

  // orthogonal pure pair: S = 1/sqrt(2), so F_S = 0
  StateTuple ortho = orthogonal_pures(2, 2);
  FidelityValue fs = f_secrecy(ortho, tight());
  CHECK(fs.value == doctest::Approx(0.0).epsilon(1e-6));

  // F_H <= F_S on random triples
  for (int trial = 0; trial < 20; ++trial) {
    StateTuple t = random_tuple(3, 2, false, rng.next_u64());
    CHECK(avg_pairwise_holevo(t) <= f_secrecy(t, tight()).raw_value + 1e-7);
  }
}

TEST_CASE("log-Euclidean fidelity and divergence") {
  // commuting tuple reduces to the Matusita fidelity
  ClassicalTuple probs = random_classical_tuple(3, 3, 19);
  StateTuple t = commuting_tuple_from_probs(probs.dists());
  CHECK(f_log_euclidean(t).value == doctest::Approx(matusita(probs)).epsilon(1e-6));

  Rng rng(23);
  DensityMatrix rho = random_density(3, 3, rng);
  StateTuple same({rho, rho, rho});
  CHECK(f_log_euclidean(same).value == doctest::Approx(1.0).epsilon(1e-7));

  // uniform weights give -ln of the fidelity
  StateTuple u = random_tuple(3, 2, true, 29);
  ProbabilityVector uniform({1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(log_euclidean_divergence(u, uniform).value ==
        doctest::Approx(-std::log(f_log_euclidean(u).raw_value)).epsilon(1e-9));

  // point mass on a full-rank state gives zero divergence
  ProbabilityVector point({1.0, 0.0, 0.0});
  CHECK(log_euclidean_divergence(u, point).value == doctest::Approx(0.0).epsilon(1e-7));

  // commuting states: -ln of the Hellinger transform of the spectra
  ProbabilityVector s({0.5, 0.25, 0.25});
  CHECK(log_euclidean_divergence(t, s).value ==
        doctest::Approx(-std::log(hellinger_transform(probs, s))).epsilon(1e-6));
}

TEST_CASE("oveloh information") {
  Rng rng(31);
  DensityMatrix rho = random_density(2, 2, rng);
  StateTuple same({rho, rho});
  OvelohResult ov = oveloh(same);
  CHECK(ov.divergence.value == doctest::Approx(0.0).epsilon(1e-6));

  // identity exp(-O) = F_log_euclidean
  StateTuple t = random_tuple(3, 3, true, 37);
  OvelohResult ov2 = oveloh(t);
  CHECK(std::exp(-ov2.divergence.raw_value) ==
        doctest::Approx(f_log_euclidean(t).raw_value).epsilon(1e-8));
  CHECK(ov2.descent_improvement < 1e-5);

  // commuting pair with full supports: 1-D grid oracle over diagonal sigma
  std::vector<ProbabilityVector> dists = {ProbabilityVector({0.35, 0.65}),
                                          ProbabilityVector({0.6, 0.4})};
  StateTuple pair = commuting_tuple_from_probs(dists);
  OvelohResult ov3 = oveloh(pair);
  double best = 1e300;
  for (int i = 1; i < 20000; ++i) {
    const double w = i / 20000.0;
    double total = 0.0;
    for (int s = 0; s < 2; ++s)
      total += w * std::log(w / dists[static_cast<std::size_t>(s)][0]) +
               (1.0 - w) * std::log((1.0 - w) / dists[static_cast<std::size_t>(s)][1]);
    best = std::min(best, total / 2.0);
  }
  CHECK(ov3.divergence.value == doctest::Approx(best).epsilon(1e-4));
}

TEST_CASE("closed form for the optimized Petz divergence of order 1/2") {
  Rng rng(43);
  DensityMatrix rho = random_density(3, 3, rng);
  StateTuple same({rho, rho, rho});
  CHECK(min_d_half_closed_form(same) == doctest::Approx(1.0).epsilon(1e-9));

  StateTuple ortho = orthogonal_pures(2, 2);
  CHECK(min_d_half_closed_form(ortho) == doctest::Approx(0.5).epsilon(1e-10));

  // direct matrix oracle on a random triple
  StateTuple t = random_tuple(3, 3, false, 47);
  ComplexMatrix mean(3, 3);
  for (const auto& s : t.states()) {
    ComplexMatrix root = sqrt_psd(s.hermitian()).matrix();
    root *= cplx(1.0 / 3.0, 0.0);
    mean += root;
  }
  const double oracle = (mean * mean).trace().real();
  CHECK(min_d_half_closed_form(t) == doctest::Approx(oracle).epsilon(1e-12));

  // Holevo-oveloh corollary
  for (int trial = 0; trial < 20; ++trial) {
    StateTuple u = random_tuple(3, 2, true, 1000 + trial);
    const double lhs = min_d_half_closed_form(u);
    const double rhs = 1.0 / 3.0 + (2.0 / 3.0) * std::exp(-oveloh(u).divergence.raw_value);
    CHECK(lhs >= rhs - 1e-7);
  }
}

TEST_CASE("average k-wise log-Euclidean fidelities") {
  StateTuple t = random_tuple(4, 2, true, 53);
  // endpoints
  CHECK(avg_kwise_log_euclidean(t, 4).value ==
        doctest::Approx(f_log_euclidean(t).value).epsilon(1e-10));
  // descending chain
  double prev = avg_kwise_log_euclidean(t, 2).raw_value;
  for (int k = 3; k <= 4; ++k) {
    const double cur = avg_kwise_log_euclidean(t, k).raw_value;
    CHECK(prev >= cur - 1e-6);
    prev = cur;
  }
  CHECK_THROWS_AS(avg_kwise_log_euclidean(t, 5), InvariantViolation);
}

TEST_CASE("measured average pairwise fidelity") {
  // commuting tuple: the common eigenbasis measurement is optimal
  ClassicalTuple probs = random_classical_tuple(3, 2, 59);
  StateTuple commuting = commuting_tuple_from_probs(probs.dists());
  MeasuredOptions mo;
  mo.seed = 61;
  FidelityValue fm = f_measured(commuting, mo);
  CHECK(fm.value == doctest::Approx(avg_pairwise_classical(probs)).epsilon(1e-3));
  CHECK(fm.value >= avg_pairwise_classical(probs) - 1e-9);

  // two states: the measured fidelity reaches the Uhlmann fidelity
  Rng rng(67);
  DensityMatrix rho = random_density(2, 2, rng);
  DensityMatrix sigma = random_density(2, 2, rng);
  StateTuple pair({rho, sigma});
  const double target = uhlmann(rho, sigma);
  FidelityValue fm2 = f_measured(pair, mo);
  CHECK(fm2.value == doctest::Approx(target).epsilon(1e-3));
  CHECK(fm2.value >= target - 1e-6);

  // the published qubit triple separates the measured value from F_SDP
  StateTuple t = published_qubit_triple();
  const double found = f_measured(t, mo).value;
  const double fu = avg_pairwise_uhlmann(t);
  const double fsdp = f_sdp(t, FsdpRoute::Dual, tight()).raw_value;
  CHECK(found >= fu - 1e-6);
  CHECK(found - fsdp > 1e-3);

  CHECK_THROWS_AS(f_measured(t, MeasuredOptions{1, 100, 1, 1}), InvariantViolation);
}

TEST_CASE("permutation lower bound") {
  Rng rng(71);
  DensityMatrix rho = random_density(2, 2, rng);
  DensityMatrix sigma = random_density(2, 2, rng);
  StateTuple pair({rho, sigma});
  CHECK(sdp_lower_bound_perm(pair) == doctest::Approx(uhlmann(rho, sigma)).epsilon(1e-10));

  StateTuple same({rho, rho, rho});
  CHECK(sdp_lower_bound_perm(same) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

  for (int trial = 0; trial < 10; ++trial) {
    StateTuple t = random_tuple(3, 2, false, 5000 + trial);
    CHECK(sdp_lower_bound_perm(t) <= f_sdp(t, FsdpRoute::Dual, tight()).raw_value + 1e-7);
  }
}

TEST_CASE("inequality chain on a small random sample") {
  for (int trial = 0; trial < 25; ++trial) {
    Rng shape_rng(900 + trial);
    const int r = shape_rng.uniform_int(2, 4);
    const int d = shape_rng.uniform_int(2, 3);
    StateTuple t = random_tuple(r, d, false, 900 + trial);
    const double fh = avg_pairwise_holevo(t);
    const double fs = f_secrecy(t, tight()).raw_value;
    const double fsdp = f_sdp(t, FsdpRoute::Dual, tight()).raw_value;
    const double fu = avg_pairwise_uhlmann(t);
    CHECK(fs >= fh - 1e-7);
    CHECK(fsdp >= fs - 1e-7);
    CHECK(fu >= fsdp - 1e-7);
    CHECK(std::sqrt(fh) >= fu - 1e-7);
  }
}

TEST_CASE("super-multiplicativity holds for avg pairwise and fails for f_sdp") {
  // average pairwise z-fidelity is super-multiplicative
  for (int trial = 0; trial < 10; ++trial) {
    StateTuple t = random_tuple(3, 2, false, 1100 + trial);
    StateTuple t2 = tensor_power_tuple(t, 2);
    for (double z : {0.5, 1.0}) {
      const double base = avg_pairwise_z(t, ZParam::of(z)).raw_value;
      const double doubled = avg_pairwise_z(t2, ZParam::of(z)).raw_value;
      CHECK(doubled >= base * base - 1e-8);
    }
  }

  // a violating pure triple for F_SDP exists and the search finds one
  SearchConfig cfg;
  cfg.target = "supermult-fsdp";
  cfg.trials = 64;
  cfg.seed = 7;
  auto found = search_counterexamples(cfg);
  REQUIRE(!found.empty());
  CHECK(found.front().margin > 1e-3);
}

TEST_CASE("coarse graining") {
  for (int trial = 0; trial < 5; ++trial) {
    StateTuple big = random_tuple(4, 2, false, 1300 + trial);
    std::vector<DensityMatrix> head(big.states().begin(), big.states().begin() + 2);
    StateTuple small(std::move(head));
    const double scale = (4.0 * 3.0) / (2.0 * 1.0);
    CHECK(avg_pairwise_z(small, ZParam::of(0.5)).raw_value <=
          scale * avg_pairwise_z(big, ZParam::of(0.5)).raw_value + 1e-9);
    CHECK(f_sdp(small, FsdpRoute::Dual, tight()).raw_value <=
          scale * f_sdp(big, FsdpRoute::Dual, tight()).raw_value + 1e-7);
    CHECK(f_secrecy(small, tight()).raw_value <=
          scale * f_secrecy(big, tight()).raw_value + 2.0 / 2.0 + 1e-7);
  }
}

TEST_CASE("direct-sum property of the multivariate fidelities") {
  SuiteOptions opts;
  opts.trials = 5;
  opts.seed = 77;
  opts.dump_failures = false;
  auto reports = run_property_suite("direct-sum", opts);
  for (const auto& rep : reports) {
    INFO(rep.property_id);
    CHECK(rep.failures == 0);
  }
}

TEST_CASE("primal-route breakdown on unattained programs raises") {
  // rank-one states make the explicit inf-over-Y optimizer unattained; the
  // primal encoding must fail loudly rather than return garbage
  StateTuple singular = orthogonal_pures(2, 3);
  bool clean_or_failed = false;
  try {
    FidelityValue v = f_sdp(singular, FsdpRoute::Primal, tight());
    clean_or_failed = std::abs(v.raw_value) < 1e-4;  // true value is 0
  } catch (const NumericalFailure&) {
    clean_or_failed = true;
  }
  CHECK(clean_or_failed);
  // the robust dual route handles the same input exactly
  CHECK(f_sdp(singular, FsdpRoute::Dual, tight()).value == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("tuple utilities") {
  Rng rng(79);
  DensityMatrix rho = random_density(2, 2, rng);
  StateTuple t({rho, rho});
  StateTuple squared = tensor_power_tuple(t, 2);
  CHECK(squared.dim() == 4);
  CHECK(squared[0].hermitian().trace_real() == doctest::Approx(1.0).epsilon(1e-10));

  DensityMatrix mixed = epsilon_mixed(rho, 0.1);
  CHECK(mixed.hermitian().trace_real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mixed.hermitian().min_eigenvalue() > 0.0);
}

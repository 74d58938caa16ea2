#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "multifid/bivariate.hpp"
#include "multifid/classical.hpp"
#include "multifid/harness.hpp"
#include "multifid/multivariate.hpp"
#include "multifid/sdp.hpp"
#include "multifid/sdp_builders.hpp"

using namespace multifid;

namespace {

SolveOptions tight() {
  SolveOptions o;
  o.gap_tol = 1e-9;
  return o;
}

}  // namespace

TEST_CASE("minimal trace problem") {
  SdpProblem p;
  p.block_dims = {2};
  p.objective.add(0, 0, 0, 1.0);
  p.objective.add(0, 1, 1, 1.0);
  SparseSym a;
  a.add(0, 0, 0, 1.0);
  a.add(0, 1, 1, 1.0);
  p.constraints.push_back(a);
  p.rhs.push_back(1.0);
  SdpSolution sol = solve(p);
  CHECK(sol.status == SdpSolution::Status::Optimal);
  CHECK(sol.primal_value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sol.dual_value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(sol.gap) <= 1e-8 * (1.0 + std::abs(sol.primal_value)));
  CHECK(sol.x.min_eigenvalue() >= -1e-9);
}

TEST_CASE("bivariate fidelity SDP matches the closed form") {
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    DensityMatrix rho = random_density(3, 3, rng);
    DensityMatrix sigma = random_density(3, 1 + trial % 3, rng);
    const double closed = uhlmann(rho, sigma);
    SdpSolution sol = solve(build_fsdp_dual({rho.hermitian(), sigma.hermitian()}), tight());
    CHECK(std::abs(sol.primal_value - closed) < 1e-6);
  }
}

TEST_CASE("self-duality of the two fidelity SDP encodings") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const int r = 2 + trial % 3;
    const int d = 2 + trial % 3;
    StateTuple t = random_tuple(r, d, true, rng.next_u64());
    SdpSolution a = solve(build_fsdp_dual(as_operators(t)), tight());
    SdpSolution b = solve(build_fsdp_primal(as_operators(t)), tight());
    CHECK(std::abs(a.primal_value - b.primal_value) <=
          2e-8 * (1.0 + std::abs(a.primal_value)));
  }
}

TEST_CASE("complex-to-real embedding duplicates the spectrum") {
  // real input: two identical copies
  ComplexMatrix real_m(2, 2);
  real_m(0, 0) = 1.0;
  real_m(1, 1) = 2.0;
  real_m(0, 1) = real_m(1, 0) = 0.5;
  std::vector<double> emb = complex_to_real_matrix(real_m);
  std::vector<double> vals, vecs;
  sym_eig(emb, 4, vals, vecs);
  EigResult orig = eig_hermitian(real_m);
  CHECK(vals[0] == doctest::Approx(orig.eigenvalues[0]).epsilon(1e-12));
  CHECK(vals[1] == doctest::Approx(orig.eigenvalues[0]).epsilon(1e-12));
  CHECK(vals[2] == doctest::Approx(orig.eigenvalues[1]).epsilon(1e-12));
  CHECK(vals[3] == doctest::Approx(orig.eigenvalues[1]).epsilon(1e-12));

  // Pauli Y (purely imaginary off-diagonals)
  ComplexMatrix pauli_y(2, 2);
  pauli_y(0, 1) = cplx(0.0, -1.0);
  pauli_y(1, 0) = cplx(0.0, 1.0);
  emb = complex_to_real_matrix(pauli_y);
  sym_eig(emb, 4, vals, vecs);
  CHECK(vals[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(vals[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(vals[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vals[3] == doctest::Approx(1.0).epsilon(1e-12));

  // random Hermitian
  Rng rng(11);
  DensityMatrix rho = random_density(3, 3, rng);
  emb = complex_to_real_matrix(rho.matrix());
  sym_eig(emb, 6, vals, vecs);
  const auto& expect = rho.hermitian().eig().eigenvalues;
  for (int i = 0; i < 3; ++i) {
    CHECK(vals[2 * i] == doctest::Approx(expect[static_cast<std::size_t>(i)]).epsilon(1e-10));
    CHECK(vals[2 * i + 1] == doctest::Approx(expect[static_cast<std::size_t>(i)]).epsilon(1e-10));
  }
}

TEST_CASE("fsdp reduces to the classical average pairwise fidelity on commuting tuples") {
  Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    ClassicalTuple probs = random_classical_tuple(3, 3, rng.next_u64());
    StateTuple t = commuting_tuple_from_probs(probs.dists());
    SdpSolution sol = solve(build_fsdp_dual(as_operators(t)), tight());
    CHECK(std::abs(sol.primal_value - avg_pairwise_classical(probs)) < 1e-6);
  }
}

TEST_CASE("fsdp faithfulness") {
  Rng rng(17);
  DensityMatrix rho = random_density(3, 3, rng);
  StateTuple t({rho, rho, rho});
  SdpSolution sol = solve(build_fsdp_dual(as_operators(t)), tight());
  CHECK(sol.primal_value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("secrecy SDP") {
  Rng rng(19);
  // all states equal: sigma = rho attains S = 1
  DensityMatrix rho = random_density(2, 2, rng);
  StateTuple equal({rho, rho, rho});
  CHECK(solve(build_secrecy_sdp(as_operators(equal)), tight()).primal_value ==
        doctest::Approx(1.0).epsilon(1e-7));

  // orthogonal pure pair: S = 1/sqrt(2), verified against a Bloch-ball grid
  ComplexMatrix p0(2, 2), p1(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  StateTuple ortho({DensityMatrix(symmetrize(p0)), DensityMatrix(symmetrize(p1))});
  const double s = solve(build_secrecy_sdp(as_operators(ortho)), tight()).primal_value;
  CHECK(s == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-7));
  {
    double best = 0.0;
    const int steps = 24;
    for (int ix = 0; ix <= steps; ++ix)
      for (int iy = 0; iy <= steps; ++iy)
        for (int iz = 0; iz <= steps; ++iz) {
          const double bx = -1.0 + 2.0 * ix / steps;
          const double by = -1.0 + 2.0 * iy / steps;
          const double bz = -1.0 + 2.0 * iz / steps;
          if (bx * bx + by * by + bz * bz > 1.0) continue;
          ComplexMatrix sig(2, 2);
          sig(0, 0) = 0.5 * (1.0 + bz);
          sig(1, 1) = 0.5 * (1.0 - bz);
          sig(0, 1) = 0.5 * cplx(bx, -by);
          sig(1, 0) = 0.5 * cplx(bx, by);
          DensityMatrix sigma(symmetrize(sig), Validation::Repair);
          const double avg = 0.5 * (uhlmann(ortho[0], sigma) + uhlmann(ortho[1], sigma));
          best = std::max(best, avg);
        }
    CHECK(s >= best - 1e-6);
    CHECK(s <= best + 0.01);  // grid resolution
  }

  // primal and dual sides of the secrecy program agree
  StateTuple t = random_tuple(3, 2, true, 12345);
  SdpSolution sol = solve(build_secrecy_sdp(as_operators(t)), tight());
  CHECK(std::abs(sol.gap) <= 2e-8 * (1.0 + std::abs(sol.primal_value)));
}

TEST_CASE("kstar pure program") {
  // two vectors reduce to the overlap magnitude
  Rng rng(23);
  std::vector<cplx> a = random_pure_state(3, rng);
  std::vector<cplx> b = random_pure_state(3, rng);
  const double val = solve(build_kstar_pure({a, b}), tight()).primal_value;
  CHECK(val == doctest::Approx(std::abs(inner(a, b))).epsilon(1e-7));

  // orthonormal triple gives zero
  std::vector<cplx> e0 = {1.0, 0.0, 0.0};
  std::vector<cplx> e1 = {0.0, 1.0, 0.0};
  std::vector<cplx> e2 = {0.0, 0.0, 1.0};
  CHECK(solve(build_kstar_pure({e0, e1, e2}), tight()).primal_value ==
        doctest::Approx(0.0).epsilon(1e-7));

  CHECK_THROWS_AS(build_kstar_pure({{cplx(2.0, 0.0), cplx(0.0, 0.0)}, {cplx(0.0, 0.0), cplx(1.0, 0.0)}}),
                  InvariantViolation);
}

TEST_CASE("kstar purification program equals fsdp for invertible states") {
  Rng rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    StateTuple t = random_tuple(2 + trial % 2, 2 + trial % 2, true, rng.next_u64());
    const double via_kstar = solve(build_kstar(as_operators(t)), tight()).primal_value;
    const double via_fsdp = solve(build_fsdp_dual(as_operators(t)), tight()).primal_value;
    CHECK(std::abs(via_kstar - via_fsdp) < 1e-6);
  }
}

TEST_CASE("geometric multivariate program") {
  Rng rng(31);
  // r = 2 equals the matrix-geometric-mean fidelity
  for (int trial = 0; trial < 3; ++trial) {
    DensityMatrix rho = random_density(2, 2, rng);
    DensityMatrix sigma = random_density(2, 2, rng);
    StateTuple t({rho, sigma});
    const double via_sdp = solve(build_geometric_multi_sdp(as_operators(t)), tight()).primal_value;
    const double via_mean = geometric_fid(rho, sigma).value;
    CHECK(std::abs(via_sdp - via_mean) < 1e-5);
  }

  // identical full-rank states give 1
  DensityMatrix rho = random_density(3, 3, rng);
  StateTuple same({rho, rho, rho});
  CHECK(solve(build_geometric_multi_sdp(as_operators(same)), tight()).primal_value ==
        doctest::Approx(1.0).epsilon(1e-6));

  // never exceeds the multivariate SDP fidelity (collected as evidence)
  int leq = 0;
  for (int trial = 0; trial < 10; ++trial) {
    StateTuple t = random_tuple(3, 2, true, rng.next_u64());
    const double geo = solve(build_geometric_multi_sdp(as_operators(t)), tight()).primal_value;
    const double fsdp = solve(build_fsdp_dual(as_operators(t)), tight()).primal_value;
    if (geo <= fsdp + 1e-7) ++leq;
  }
  MESSAGE("geometric <= fsdp held in ", leq, "/10 trials");
}

TEST_CASE("epsilon-regularized monotonicity") {
  Rng rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    StateTuple t = random_tuple(2 + trial % 2, 2, false, rng.next_u64());
    double values[3];
    const double eps[3] = {0.0, 1e-3, 1e-2};
    for (int i = 0; i < 3; ++i) {
      StateTuple mixed = eps[i] == 0.0 ? t : epsilon_mixed_tuple(t, eps[i]);
      values[i] = (1.0 + eps[i]) *
                  solve(build_fsdp_dual(as_operators(mixed)), tight()).primal_value;
    }
    CHECK(values[0] <= values[1] + 1e-8);
    CHECK(values[1] <= values[2] + 1e-8);
  }
}

TEST_CASE("scaling property for PSD tuples") {
  Rng rng(41);
  for (double c : {0.5, 2.0}) {
    StateTuple t = random_tuple(2, 3, false, rng.next_u64());
    std::vector<HermitianMatrix> scaled;
    for (const auto& s : t.states()) {
      ComplexMatrix m = s.matrix();
      m *= cplx(c, 0.0);
      scaled.push_back(symmetrize(m));
    }
    const double base = solve(build_fsdp_dual(as_operators(t)), tight()).primal_value;
    const double big = solve(build_fsdp_dual(scaled), tight()).primal_value;
    CHECK(big == doctest::Approx(c * base).epsilon(1e-8));
  }
}

TEST_CASE("linearly dependent constraints are rejected") {
  SdpProblem p;
  p.block_dims = {2};
  p.objective.add(0, 0, 0, 1.0);
  SparseSym a;
  a.add(0, 0, 0, 1.0);
  SparseSym b;
  b.add(0, 0, 0, 2.0);  // scalar multiple of the first
  p.constraints.push_back(a);
  p.constraints.push_back(b);
  p.rhs = {1.0, 2.0};
  CHECK_THROWS_AS(solve(p), InvariantViolation);
}

TEST_CASE("solver error paths") {
  // mismatched constraint/rhs lengths
  SdpProblem p;
  p.block_dims = {2};
  SparseSym a;
  a.add(0, 0, 0, 1.0);
  p.constraints.push_back(a);
  CHECK_THROWS_AS(solve(p), InvariantViolation);

  // infeasible problem: Tr X = -1 with X >= 0
  SdpProblem q;
  q.block_dims = {2};
  q.objective.add(0, 0, 0, 1.0);
  SparseSym b;
  b.add(0, 0, 0, 1.0);
  b.add(0, 1, 1, 1.0);
  q.constraints.push_back(b);
  q.rhs.push_back(-1.0);
  SdpSolution sol = solve(q);
  CHECK(sol.status != SdpSolution::Status::Optimal);
}

TEST_CASE("diagnostic trace output") {
  SdpProblem p;
  p.block_dims = {2};
  p.objective.add(0, 0, 0, 1.0);
  p.objective.add(0, 1, 1, 1.0);
  SparseSym a;
  a.add(0, 0, 0, 1.0);
  a.add(0, 1, 1, 1.0);
  p.constraints.push_back(a);
  p.rhs.push_back(1.0);
  std::ostringstream trace;
  SolveOptions opts;
  opts.trace = &trace;
  solve(p, opts);
  CHECK(trace.str().find("iter=0") != std::string::npos);
  CHECK(trace.str().find("mu=") != std::string::npos);
}

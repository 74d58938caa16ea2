#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "multifid/classical.hpp"
#include "multifid/harness.hpp"

using namespace multifid;

namespace {

ClassicalTuple random_full_tuple(int r, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ProbabilityVector> dists;
  for (int i = 0; i < r; ++i) {
    std::vector<double> p(static_cast<std::size_t>(n));
    double total = 0.0;
    for (double& v : p) {
      v = rng.uniform(0.01, 1.0);
      total += v;
    }
    for (double& v : p) v /= total;
    dists.emplace_back(std::move(p));
  }
  return ClassicalTuple(std::move(dists));
}

}  // namespace

TEST_CASE("bhattacharyya basics") {
  ProbabilityVector u({0.25, 0.25, 0.25, 0.25});
  CHECK(bhattacharyya(u, u) == doctest::Approx(1.0).epsilon(1e-14));
  ProbabilityVector a({1.0, 0.0});
  ProbabilityVector b({0.0, 1.0});
  CHECK(bhattacharyya(a, b) == 0.0);
  ProbabilityVector p({0.5, 0.5});
  ProbabilityVector q({0.25, 0.75});
  CHECK(bhattacharyya(p, q) ==
        doctest::Approx(std::sqrt(0.125) + std::sqrt(0.375)).epsilon(1e-14));
}

TEST_CASE("matusita fidelity") {
  ClassicalTuple equal({ProbabilityVector({0.2, 0.8}), ProbabilityVector({0.2, 0.8}),
                        ProbabilityVector({0.2, 0.8})});
  CHECK(matusita(equal) == doctest::Approx(1.0).epsilon(1e-14));

  // the published triple: zero fidelity with pairwise-overlapping supports
  ClassicalTuple zero(matusita_zero_vectors());
  CHECK(matusita(zero) == 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      CHECK(bhattacharyya(zero[i], zero[j]) == doctest::Approx(0.5).epsilon(1e-14));

  // extended-precision product oracle on a random triple
  ClassicalTuple t = random_full_tuple(3, 5, 7);
  long double direct = 0.0L;
  for (int x = 0; x < 5; ++x) {
    long double prod = 1.0L;
    for (int i = 0; i < 3; ++i) prod *= static_cast<long double>(t[i][x]);
    direct += powl(prod, 1.0L / 3.0L);
  }
  CHECK(matusita(t) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-13));
}

TEST_CASE("average pairwise fidelity") {
  ClassicalTuple zero(matusita_zero_vectors());
  // every pair overlaps by 1/2, so the mean is 1/2
  CHECK(avg_pairwise_classical(zero) == doctest::Approx(0.5).epsilon(1e-14));

  ClassicalTuple pair({ProbabilityVector({0.5, 0.5}), ProbabilityVector({0.25, 0.75})});
  CHECK(avg_pairwise_classical(pair) ==
        doctest::Approx(bhattacharyya(pair[0], pair[1])).epsilon(1e-14));
}

TEST_CASE("average k-wise endpoints and subset oracle") {
  ClassicalTuple t = random_full_tuple(4, 4, 11);
  CHECK(avg_kwise_classical(t, 2) == doctest::Approx(avg_pairwise_classical(t)).epsilon(1e-13));
  CHECK(avg_kwise_classical(t, 4) == doctest::Approx(matusita(t)).epsilon(1e-13));
  CHECK_THROWS_AS(avg_kwise_classical(t, 1), InvariantViolation);
  CHECK_THROWS_AS(avg_kwise_classical(t, 5), InvariantViolation);

  // explicit subset enumeration for r=4, k=3
  double oracle = 0.0;
  const int subsets[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (const auto& s : subsets)
    oracle += matusita(ClassicalTuple({t[s[0]], t[s[1]], t[s[2]]}));
  CHECK(avg_kwise_classical(t, 3) == doctest::Approx(oracle / 4.0).epsilon(1e-13));
}

TEST_CASE("hellinger transform") {
  ClassicalTuple t = random_full_tuple(3, 4, 13);
  // uniform weights reduce to Matusita
  ProbabilityVector uniform({1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(hellinger_transform(t, uniform) == doctest::Approx(matusita(t)).epsilon(1e-12));

  // point mass on the first argument sums p_1 = 1
  ProbabilityVector point({1.0, 0.0, 0.0});
  CHECK(hellinger_transform(t, point) == doctest::Approx(1.0).epsilon(1e-12));

  // rational weights match the repeated-argument Matusita identity:
  // s = (1/4, 3/4) on (p, q) equals F_4(p, q, q, q)
  ClassicalTuple pq({t[0], t[1]});
  ProbabilityVector s({0.25, 0.75});
  ClassicalTuple repeated({t[0], t[1], t[1], t[1]});
  CHECK(hellinger_transform(pq, s) == doctest::Approx(matusita(repeated)).epsilon(1e-12));
}

TEST_CASE("hellinger distance and the fidelity relation") {
  ProbabilityVector p({0.3, 0.7});
  CHECK(hellinger_distance(p, p) == 0.0);
  ProbabilityVector a({1.0, 0.0});
  ProbabilityVector b({0.0, 1.0});
  CHECK(hellinger_distance(a, b) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    ClassicalTuple t = random_full_tuple(2, 5, rng.next_u64());
    const double d = hellinger_distance(t[0], t[1]);
    const double f = bhattacharyya(t[0], t[1]);
    CHECK(d * d == doctest::Approx(2.0 * (1.0 - f)).epsilon(1e-12));
  }
}

TEST_CASE("k-wise ordering chain") {
  Rng rng(19);
  for (int trial = 0; trial < 1000; ++trial) {
    const int r = 3 + static_cast<int>(rng.next_u64() % 3);
    ClassicalTuple t = random_classical_tuple(r, 4, rng.next_u64());
    double prev = avg_kwise_classical(t, 2);
    for (int k = 3; k <= r; ++k) {
      const double cur = avg_kwise_classical(t, k);
      CHECK(prev >= cur - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("arithmetic-geometric mean bound") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    ClassicalTuple t = random_classical_tuple(3 + trial % 2, 5, rng.next_u64());
    CHECK(avg_pairwise_classical(t) >= matusita(t) - 1e-12);
  }
}

TEST_CASE("data processing under stochastic maps") {
  Rng rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4, m = 3;
    ClassicalTuple t = random_classical_tuple(3, n, rng.next_u64());
    // random column-stochastic matrix
    std::vector<std::vector<double>> s(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(n)));
    for (int col = 0; col < n; ++col) {
      double total = 0.0;
      for (int row = 0; row < m; ++row) {
        s[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = rng.uniform(0.0, 1.0);
        total += s[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
      }
      for (int row = 0; row < m; ++row)
        s[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] /= total;
    }
    std::vector<ProbabilityVector> mapped;
    for (int i = 0; i < 3; ++i) {
      std::vector<double> q(static_cast<std::size_t>(m), 0.0);
      for (int row = 0; row < m; ++row)
        for (int col = 0; col < n; ++col)
          q[static_cast<std::size_t>(row)] +=
              s[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] * t[i][col];
      double total = 0.0;
      for (double v : q) total += v;
      for (double& v : q) v /= total;
      mapped.emplace_back(std::move(q));
    }
    ClassicalTuple u(std::move(mapped));
    CHECK(matusita(u) >= matusita(t) - 1e-10);
    CHECK(avg_pairwise_classical(u) >= avg_pairwise_classical(t) - 1e-10);
    CHECK(avg_kwise_classical(u, 3) >= avg_kwise_classical(t, 3) - 1e-10);
  }
}

TEST_CASE("matusita uniform continuity bound") {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int r = 3;
    ClassicalTuple p = random_classical_tuple(r, 5, rng.next_u64());
    std::vector<ProbabilityVector> q_dists;
    double mean_dh2 = 0.0;
    for (int i = 0; i < r; ++i) {
      std::vector<double> q(p[i].probs());
      const double mix = rng.uniform(0.0, 0.5);
      double total = 0.0;
      for (double& v : q) {
        v = (1.0 - mix) * v + mix / q.size();
        total += v;
      }
      for (double& v : q) v /= total;
      ProbabilityVector qv(std::move(q));
      const double dh = hellinger_distance(p[i], qv);
      mean_dh2 += dh * dh;
      q_dists.push_back(std::move(qv));
    }
    mean_dh2 /= r;
    ClassicalTuple q(std::move(q_dists));
    CHECK(std::abs(matusita(p) - matusita(q)) <= r * std::pow(mean_dh2, 1.0 / r) + 1e-12);
  }
}

TEST_CASE("permutation invariance") {
  ClassicalTuple t = random_full_tuple(4, 5, 37);
  ClassicalTuple rotated({t[1], t[2], t[3], t[0]});
  CHECK(matusita(t) == matusita(rotated));
  CHECK(avg_pairwise_classical(t) == doctest::Approx(avg_pairwise_classical(rotated)).epsilon(1e-15));
  CHECK(avg_kwise_classical(t, 3) == doctest::Approx(avg_kwise_classical(rotated, 3)).epsilon(1e-15));
}

TEST_CASE("direct-sum property") {
  Rng rng(41);
  ClassicalTuple a = random_full_tuple(3, 4, rng.next_u64());
  ClassicalTuple b = random_full_tuple(3, 4, rng.next_u64());
  const double w = 0.3;
  // concatenated weighted blocks
  std::vector<ProbabilityVector> joined;
  for (int i = 0; i < 3; ++i) {
    std::vector<double> v;
    for (int x = 0; x < 4; ++x) v.push_back(w * a[i][x]);
    for (int x = 0; x < 4; ++x) v.push_back((1.0 - w) * b[i][x]);
    joined.emplace_back(std::move(v));
  }
  ClassicalTuple big(std::move(joined));
  for (auto f : {matusita, avg_pairwise_classical}) {
    CHECK(f(big) == doctest::Approx(w * f(a) + (1.0 - w) * f(b)).epsilon(1e-12));
  }
}

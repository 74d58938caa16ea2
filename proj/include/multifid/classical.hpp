#pragma once

#include <vector>

#include "multifid/quantum.hpp"

namespace multifid {

// Tuple of r >= 2 distributions of equal length.
class ClassicalTuple {
public:
  ClassicalTuple() = default;
  explicit ClassicalTuple(std::vector<ProbabilityVector> dists);

  int size() const { return static_cast<int>(dists_.size()); }
  int length() const { return dists_.empty() ? 0 : dists_.front().size(); }
  const ProbabilityVector& operator[](int i) const { return dists_[static_cast<std::size_t>(i)]; }
  const std::vector<ProbabilityVector>& dists() const { return dists_; }

private:
  std::vector<ProbabilityVector> dists_;
};

// sum_x sqrt(p(x) q(x))
double bhattacharyya(const ProbabilityVector& p, const ProbabilityVector& q);

// sum_x (p_1(x) ... p_r(x))^{1/r}; a term vanishes as soon as one factor is 0.
double matusita(const ClassicalTuple& t);

// (2 / r(r-1)) sum_{i<j} bhattacharyya(p_i, p_j)
double avg_pairwise_classical(const ClassicalTuple& t);

// Average of order-k Matusita values over all size-k subsets, 2 <= k <= r.
double avg_kwise_classical(const ClassicalTuple& t, int k);

// sum_x prod_i p_i(x)^{s_i}, with p^0 := 1 and 0^s := 0 for s > 0.
double hellinger_transform(const ClassicalTuple& t, const ProbabilityVector& s);

// || sqrt(p) - sqrt(q) ||_2
double hellinger_distance(const ProbabilityVector& p, const ProbabilityVector& q);

// Enumerate all size-k index subsets of {0,..,n-1} in lexicographic order.
std::vector<std::vector<int>> index_subsets(int n, int k);

}  // namespace multifid

#include "multifid/classical.hpp"

#include <cmath>

namespace multifid {

ClassicalTuple::ClassicalTuple(std::vector<ProbabilityVector> dists) : dists_(std::move(dists)) {
  if (dists_.size() < 2) throw InvariantViolation("ClassicalTuple requires r >= 2 distributions");
  for (const auto& p : dists_)
    if (p.size() != dists_.front().size())
      throw InvariantViolation("ClassicalTuple requires uniform length");
}

double bhattacharyya(const ProbabilityVector& p, const ProbabilityVector& q) {
  if (p.size() != q.size()) throw InvariantViolation("bhattacharyya: length mismatch");
  double s = 0.0;
  for (int x = 0; x < p.size(); ++x) s += std::sqrt(p[x] * q[x]);
  return s;
}

double matusita(const ClassicalTuple& t) {
  const int r = t.size();
  double total = 0.0;
  for (int x = 0; x < t.length(); ++x) {
    double log_sum = 0.0;
    bool zero = false;
    for (int i = 0; i < r; ++i) {
      const double p = t[i][x];
      if (p <= 0.0) {
        zero = true;
        break;
      }
      log_sum += std::log(p);
    }
    if (!zero) total += std::exp(log_sum / r);
  }
  return total;
}

double avg_pairwise_classical(const ClassicalTuple& t) {
  const int r = t.size();
  double s = 0.0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) s += bhattacharyya(t[i], t[j]);
  return 2.0 * s / (static_cast<double>(r) * (r - 1));
}

std::vector<std::vector<int>> index_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++cur[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i)
      cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

double avg_kwise_classical(const ClassicalTuple& t, int k) {
  const int r = t.size();
  if (k < 2 || k > r) throw InvariantViolation("avg_kwise_classical: k out of range");
  double total = 0.0;
  const auto subsets = index_subsets(r, k);
  for (const auto& subset : subsets) {
    std::vector<ProbabilityVector> sub;
    sub.reserve(subset.size());
    for (int idx : subset) sub.push_back(t[idx]);
    total += matusita(ClassicalTuple(std::move(sub)));
  }
  return total / static_cast<double>(subsets.size());
}

double hellinger_transform(const ClassicalTuple& t, const ProbabilityVector& s) {
  if (s.size() != t.size()) throw InvariantViolation("hellinger_transform: weight length mismatch");
  double total = 0.0;
  for (int x = 0; x < t.length(); ++x) {
    double log_sum = 0.0;
    bool zero = false;
    for (int i = 0; i < t.size(); ++i) {
      const double w = s[i];
      if (w == 0.0) continue;  // p^0 = 1
      const double p = t[i][x];
      if (p <= 0.0) {
        zero = true;
        break;
      }
      log_sum += w * std::log(p);
    }
    if (!zero) total += std::exp(log_sum);
  }
  return total;
}

double hellinger_distance(const ProbabilityVector& p, const ProbabilityVector& q) {
  if (p.size() != q.size()) throw InvariantViolation("hellinger_distance: length mismatch");
  double s = 0.0;
  for (int x = 0; x < p.size(); ++x) {
    const double diff = std::sqrt(p[x]) - std::sqrt(q[x]);
    s += diff * diff;
  }
  return std::sqrt(s);
}

}  // namespace multifid

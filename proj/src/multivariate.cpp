#include "multifid/multivariate.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace multifid {

namespace {

FidelityValue clamp_fidelity(double raw, Method method, Certificate cert = {}) {
  FidelityValue out;
  out.raw_value = raw;
  out.value = std::min(1.0, std::max(0.0, raw));
  out.method = method;
  out.cert = cert;
  return out;
}

FidelityValue divergence_value(double raw, Method method, Certificate cert = {}) {
  FidelityValue out;
  out.raw_value = raw;
  out.value = std::max(0.0, raw);
  out.method = method;
  out.cert = cert;
  return out;
}

Certificate cert_from(const SdpSolution& sol) {
  Certificate c;
  c.gap = sol.gap;
  c.mu = sol.mu;
  c.iterations = sol.iterations;
  c.optimal = sol.status == SdpSolution::Status::Optimal;
  return c;
}

void require_solved(const SdpSolution& sol, const char* what) {
  if (sol.status == SdpSolution::Status::InfeasibleSuspect)
    throw NumericalFailure(std::string(what) + ": interior-point iterates diverged "
                           "(the program's optimizer may be unattained for this input)");
}

HermitianMatrix shifted(const HermitianMatrix& m, double eps) {
  ComplexMatrix out = m.matrix();
  for (int i = 0; i < m.dim(); ++i) out(i, i) += eps;
  return symmetrize(out);
}

constexpr double kSupportCutoff = 1e-11;

// ln restricted to the support (zero on the kernel).
ComplexMatrix support_log(const HermitianMatrix& m, double cutoff) {
  const EigResult& e = m.eig();
  const int d = m.dim();
  const double cut = cutoff * std::max(1.0, std::abs(e.eigenvalues.back()));
  ComplexMatrix out(d, d);
  for (int k = 0; k < d; ++k) {
    const double lam = e.eigenvalues[static_cast<std::size_t>(k)];
    if (lam <= cut) continue;
    const double lg = std::log(lam);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out(i, j) += lg * e.eigenvectors(i, k) * std::conj(e.eigenvectors(j, k));
  }
  return out;
}

// Isometry onto the intersection of the supports of the weighted operators
// (kernel of the sum of kernel projectors); zero columns when empty.
ComplexMatrix intersection_isometry(const std::vector<const HermitianMatrix*>& mats,
                                    const std::vector<double>& weights, double cutoff) {
  const int d = mats.front()->dim();
  ComplexMatrix kernel_sum(d, d);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (weights[i] == 0.0) continue;
    const EigResult& e = mats[i]->eig();
    const double cut = cutoff * std::max(1.0, std::abs(e.eigenvalues.back()));
    for (int k = 0; k < d; ++k) {
      if (e.eigenvalues[static_cast<std::size_t>(k)] > cut) continue;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          kernel_sum(a, b) += e.eigenvectors(a, k) * std::conj(e.eigenvectors(b, k));
    }
  }
  EigResult e = eig_hermitian(symmetrize(kernel_sum).matrix());
  int rank = 0;
  for (double lam : e.eigenvalues)
    if (lam < cutoff) ++rank;
  ComplexMatrix basis(d, rank);
  int col = 0;
  for (int k = 0; k < d; ++k) {
    if (e.eigenvalues[static_cast<std::size_t>(k)] >= cutoff) continue;
    for (int i = 0; i < d; ++i) basis(i, col) = e.eigenvectors(i, k);
    ++col;
  }
  return basis;
}

// The eps -> 0 limit of Tr exp(sum_i w_i ln(rho_i + eps I)): the weighted
// support-restricted logs compressed to the intersection of the supports.
// (The raw regularized sequence approaches this limit only at a 1/|ln eps|
// rate once supports differ, far too slowly to evaluate directly.)
double trexp_log_mean_limit(const std::vector<const HermitianMatrix*>& mats,
                            const std::vector<double>& weights) {
  ComplexMatrix basis = intersection_isometry(mats, weights, kSupportCutoff);
  if (basis.cols() == 0) return 0.0;
  const int d = mats.front()->dim();
  ComplexMatrix mean(d, d);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (weights[i] == 0.0) continue;
    ComplexMatrix lg = support_log(*mats[i], kSupportCutoff);
    lg *= cplx(weights[i], 0.0);
    mean += lg;
  }
  ComplexMatrix compressed = basis.adjoint() * mean * basis;
  return exp_h(symmetrize(compressed)).trace_real();
}

}  // namespace

std::vector<HermitianMatrix> as_operators(const StateTuple& t) {
  std::vector<HermitianMatrix> ops;
  ops.reserve(static_cast<std::size_t>(t.size()));
  for (const auto& s : t.states()) ops.push_back(s.hermitian());
  return ops;
}

FidelityValue avg_pairwise_z(const StateTuple& t, ZParam z) {
  const int r = t.size();
  double total = 0.0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) total += fid_z(t[i], t[j], z);
  return clamp_fidelity(2.0 * total / (static_cast<double>(r) * (r - 1)), Method::AvgPairwiseZ);
}

double avg_pairwise_uhlmann(const StateTuple& t) {
  const int r = t.size();
  double total = 0.0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) total += uhlmann(t[i], t[j]);
  return 2.0 * total / (static_cast<double>(r) * (r - 1));
}

double avg_pairwise_holevo(const StateTuple& t) {
  const int r = t.size();
  double total = 0.0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) total += holevo(t[i], t[j]);
  return 2.0 * total / (static_cast<double>(r) * (r - 1));
}

FidelityValue f_sdp_psd(const std::vector<HermitianMatrix>& operators, FsdpRoute use,
                        const SolveOptions& opts) {
  switch (use) {
    case FsdpRoute::Dual: {
      SdpSolution sol = solve(build_fsdp_dual(operators), opts);
      return clamp_fidelity(sol.primal_value, Method::FsdpDual, cert_from(sol));
    }
    case FsdpRoute::Primal: {
      SdpSolution sol = solve(build_fsdp_primal(operators), opts);
      require_solved(sol, "f_sdp (primal encoding)");
      return clamp_fidelity(sol.primal_value, Method::FsdpPrimal, cert_from(sol));
    }
    case FsdpRoute::Both:
    default: {
      SdpSolution sol = solve(build_fsdp_dual(operators), opts);
      return clamp_fidelity(0.5 * (sol.primal_value + sol.dual_value), Method::FsdpBoth,
                            cert_from(sol));
    }
  }
}

FidelityValue f_sdp(const StateTuple& t, FsdpRoute use, const SolveOptions& opts) {
  FidelityValue v = f_sdp_psd(as_operators(t), use, opts);
  return v;
}

double secrecy_measure(const StateTuple& t, const SolveOptions& opts) {
  SdpSolution sol = solve(build_secrecy_sdp(as_operators(t)), opts);
  return sol.primal_value;
}

FidelityValue f_secrecy(const StateTuple& t, const SolveOptions& opts) {
  SdpSolution sol = solve(build_secrecy_sdp(as_operators(t)), opts);
  const double s = sol.primal_value;
  const int r = t.size();
  const double raw = (r * s * s - 1.0) / (r - 1.0);
  return clamp_fidelity(raw, Method::Secrecy, cert_from(sol));
}

FidelityValue f_log_euclidean(const StateTuple& t, const EpsSchedule& schedule) {
  (void)schedule;  // the limit is evaluated in closed form; see trexp_log_mean_limit
  std::vector<const HermitianMatrix*> mats;
  std::vector<double> weights(static_cast<std::size_t>(t.size()), 1.0 / t.size());
  for (const auto& s : t.states()) mats.push_back(&s.hermitian());
  Certificate cert;
  cert.eps_used = kSupportCutoff;
  return clamp_fidelity(trexp_log_mean_limit(mats, weights), Method::LogEuclidean, cert);
}

FidelityValue log_euclidean_divergence(const StateTuple& t, const ProbabilityVector& s,
                                       const EpsSchedule& schedule) {
  (void)schedule;
  if (s.size() != t.size())
    throw InvariantViolation("log_euclidean_divergence: weight length mismatch");
  std::vector<const HermitianMatrix*> mats;
  for (const auto& st : t.states()) mats.push_back(&st.hermitian());
  const double trexp = trexp_log_mean_limit(mats, s.probs());
  Certificate cert;
  cert.eps_used = kSupportCutoff;
  const double value =
      trexp > 0.0 ? -std::log(trexp) : std::numeric_limits<double>::infinity();
  return divergence_value(value, Method::LogEuclideanDivergence, cert);
}

double relative_entropy(const DensityMatrix& rho, const HermitianMatrix& sigma) {
  const EigResult& er = rho.hermitian().eig();
  const EigResult& es = sigma.eig();
  const int d = rho.dim();
  // supp(rho) subset of supp(sigma)?
  const double sig_cut = 1e-12 * std::max(1.0, std::abs(es.eigenvalues.back()));
  for (int k = 0; k < d; ++k) {
    if (es.eigenvalues[static_cast<std::size_t>(k)] > sig_cut) continue;
    // sigma kernel direction: rho must vanish on it
    double overlap = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        overlap += std::real(std::conj(es.eigenvectors(i, k)) * rho.matrix()(i, j) *
                             es.eigenvectors(j, k));
    if (overlap > 1e-10) return std::numeric_limits<double>::infinity();
  }
  double entropy_term = 0.0;
  for (double lam : er.eigenvalues)
    if (lam > 1e-15) entropy_term += lam * std::log(lam);
  HermitianMatrix log_sigma = matrix_function(
      sigma, [sig_cut](double x) { return x > sig_cut ? std::log(x) : 0.0; });
  const double cross = (rho.matrix() * log_sigma.matrix()).trace().real();
  return entropy_term - cross;
}

OvelohResult oveloh(const StateTuple& t, const EpsSchedule& schedule, std::uint64_t descent_seed) {
  OvelohResult result;
  FidelityValue fid = f_log_euclidean(t, schedule);
  result.divergence = divergence_value(
      fid.raw_value > 0.0 ? -std::log(fid.raw_value) : std::numeric_limits<double>::infinity(),
      Method::Oveloh, fid.cert);

  const int d = t.dim();
  std::vector<const HermitianMatrix*> mats;
  std::vector<double> weights(static_cast<std::size_t>(t.size()), 1.0 / t.size());
  for (const auto& s : t.states()) mats.push_back(&s.hermitian());
  ComplexMatrix basis = intersection_isometry(mats, weights, kSupportCutoff);
  if (basis.cols() == 0) {
    // no common support: the infimum runs off to +infinity and there is no
    // optimizer to certify
    result.objective_at_optimizer = std::numeric_limits<double>::infinity();
    result.descent_improvement = 0.0;
    return result;
  }
  ComplexMatrix mean(d, d);
  for (const auto& s : t.states()) {
    ComplexMatrix lg = support_log(s.hermitian(), kSupportCutoff);
    lg *= cplx(1.0 / t.size(), 0.0);
    mean += lg;
  }
  HermitianMatrix compressed = exp_h(symmetrize(basis.adjoint() * mean * basis));
  ComplexMatrix lifted = basis * compressed.matrix() * basis.adjoint();
  lifted *= cplx(1.0 / compressed.trace_real(), 0.0);
  result.optimizer = DensityMatrix(symmetrize(lifted), Validation::Repair);

  auto objective = [&](const DensityMatrix& sigma) {
    double total = 0.0;
    for (const auto& s : t.states()) total += relative_entropy(sigma, s.hermitian());
    return total / t.size();
  };
  result.objective_at_optimizer = objective(result.optimizer);

  // direct-descent certificate: mixtures toward random states of the common
  // support must not improve the objective
  Rng rng(descent_seed);
  const int k = basis.cols();
  double best_improvement = 0.0;
  for (int trial = 0; trial < 48; ++trial) {
    DensityMatrix small = random_density(k, k, rng);
    ComplexMatrix direction = basis * small.matrix() * basis.adjoint();
    for (double step : {1e-1, 1e-2, 1e-3}) {
      ComplexMatrix mix = result.optimizer.matrix();
      mix *= cplx(1.0 - step, 0.0);
      ComplexMatrix dir = direction;
      dir *= cplx(step, 0.0);
      mix += dir;
      const double val = objective(DensityMatrix(symmetrize(mix), Validation::Repair));
      best_improvement = std::max(best_improvement, result.objective_at_optimizer - val);
    }
  }
  result.descent_improvement = best_improvement;
  return result;
}

double min_d_half_closed_form(const StateTuple& t) {
  const int d = t.dim();
  ComplexMatrix mean(d, d);
  for (const auto& s : t.states()) {
    ComplexMatrix root = sqrt_psd(s.hermitian()).matrix();
    root *= cplx(1.0 / t.size(), 0.0);
    mean += root;
  }
  return (mean * mean).trace().real();
}

FidelityValue avg_kwise_log_euclidean(const StateTuple& t, int k, const EpsSchedule& schedule) {
  const int r = t.size();
  if (k < 2 || k > r) throw InvariantViolation("avg_kwise_log_euclidean: k out of range");
  double total = 0.0;
  double eps_used = 0.0;
  const auto subsets = index_subsets(r, k);
  for (const auto& subset : subsets) {
    std::vector<DensityMatrix> sub;
    sub.reserve(subset.size());
    for (int idx : subset) sub.push_back(t[idx]);
    FidelityValue v = f_log_euclidean(StateTuple(std::move(sub)), schedule);
    total += v.raw_value;
    eps_used = v.cert.eps_used;
  }
  Certificate cert;
  cert.eps_used = eps_used;
  return clamp_fidelity(total / static_cast<double>(subsets.size()),
                        Method::AvgKwiseLogEuclidean, cert);
}

namespace {

// Nelder-Mead minimization; returns best value found within the evaluation
// budget.
double nelder_mead(std::vector<double>& x0, const std::function<double(const std::vector<double>&)>& f,
                   int budget, Rng& rng) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    simplex[i + 1][i] += 0.1 * (rng.uniform() > 0.5 ? 1.0 : -1.0);
  int evals = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    values[i] = f(simplex[i]);
    ++evals;
  }
  auto order = [&] {
    std::vector<std::size_t> idx(n + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<double>> s2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      s2[i] = simplex[idx[i]];
      v2[i] = values[idx[i]];
    }
    simplex.swap(s2);
    values.swap(v2);
  };
  order();
  while (evals < budget) {
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);
    auto affine = [&](double coeff) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = centroid[j] + coeff * (simplex[n][j] - centroid[j]);
      return p;
    };
    std::vector<double> reflected = affine(-1.0);
    const double fr = f(reflected);
    ++evals;
    if (fr < values[0]) {
      std::vector<double> expanded = affine(-2.0);
      const double fe = f(expanded);
      ++evals;
      if (fe < fr) {
        simplex[n] = expanded;
        values[n] = fe;
      } else {
        simplex[n] = reflected;
        values[n] = fr;
      }
    } else if (fr < values[n - 1]) {
      simplex[n] = reflected;
      values[n] = fr;
    } else {
      std::vector<double> contracted = affine(0.5);
      const double fc = f(contracted);
      ++evals;
      if (fc < values[n]) {
        simplex[n] = contracted;
        values[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j)
            simplex[i][j] = 0.5 * (simplex[i][j] + simplex[0][j]);
          values[i] = f(simplex[i]);
          ++evals;
        }
      }
    }
    order();
    if (std::abs(values[n] - values[0]) < 1e-12) break;
  }
  x0 = simplex[0];
  return values[0];
}

std::vector<double> params_from_basis(const ComplexMatrix& basis, int n_outcomes, int d) {
  // block y of the isometry = |0><v_y| for y < d, ~0 beyond
  std::vector<double> params(static_cast<std::size_t>(2 * n_outcomes * d * d), 0.0);
  for (int y = 0; y < d; ++y)
    for (int b = 0; b < d; ++b) {
      const cplx v = std::conj(basis(b, y));
      const std::size_t base = 2 * (static_cast<std::size_t>(y) * d * d + b);
      params[base] = v.real();
      params[base + 1] = v.imag();
    }
  return params;
}

}  // namespace

FidelityValue f_measured(const StateTuple& t, const MeasuredOptions& opts) {
  const int d = t.dim();
  const int r = t.size();
  const int n_out = opts.n_outcomes > 0 ? opts.n_outcomes : d * d;
  if (n_out < d) throw InvariantViolation("f_measured: n_outcomes must be >= d");

  auto objective = [&](const std::vector<double>& params) -> double {
    ComplexMatrix a(n_out * d, d);
    for (int row = 0; row < n_out * d; ++row)
      for (int col = 0; col < d; ++col) {
        const std::size_t base = 2 * (static_cast<std::size_t>(row) * d + col);
        a(row, col) = cplx(params[base], params[base + 1]);
      }
    ComplexMatrix q;
    try {
      q = orthonormalize_columns(a);
    } catch (const NumericalFailure&) {
      return 2.0;  // degenerate parametrization
    }
    // probabilities p_i[y] = Tr[B_y^+ B_y rho_i]
    std::vector<std::vector<double>> probs(static_cast<std::size_t>(r),
                                           std::vector<double>(static_cast<std::size_t>(n_out)));
    for (int y = 0; y < n_out; ++y) {
      ComplexMatrix block(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) block(i, j) = q(y * d + i, j);
      ComplexMatrix element = block.adjoint() * block;
      for (int s = 0; s < r; ++s) {
        const double p = (element * t[s].matrix()).trace().real();
        probs[static_cast<std::size_t>(s)][static_cast<std::size_t>(y)] = std::max(0.0, p);
      }
    }
    double total = 0.0;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        double pair = 0.0;
        for (int y = 0; y < n_out; ++y)
          pair += std::sqrt(probs[static_cast<std::size_t>(i)][static_cast<std::size_t>(y)] *
                            probs[static_cast<std::size_t>(j)][static_cast<std::size_t>(y)]);
        total += pair;
      }
    return 2.0 * total / (static_cast<double>(r) * (r - 1));
  };

  Rng rng(opts.seed);
  const int per_restart = std::max(200, opts.budget / std::max(1, opts.restarts));

  std::vector<std::vector<double>> starts;
  // computational basis
  starts.push_back(params_from_basis(ComplexMatrix::identity(d), n_out, d));
  // joint eigenbasis of the average state (exact common basis when commuting)
  {
    ComplexMatrix avg(d, d);
    for (const auto& s : t.states()) avg += s.matrix();
    starts.push_back(params_from_basis(symmetrize(avg).eig().eigenvectors, n_out, d));
  }
  // Fuchs-Caves observable basis of the first pair
  {
    HermitianMatrix rho_reg = shifted(t[0].hermitian(), 1e-9);
    HermitianMatrix inv_root = matrix_function(
        rho_reg, [](double x) -> double { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; });
    HermitianMatrix root = sqrt_psd(rho_reg);
    HermitianMatrix mid = symmetrize(root.matrix() * t[1].matrix() * root.matrix());
    HermitianMatrix fc = symmetrize(inv_root.matrix() * sqrt_psd(mid).matrix() * inv_root.matrix());
    starts.push_back(params_from_basis(fc.eig().eigenvectors, n_out, d));
  }
  while (static_cast<int>(starts.size()) < opts.restarts) {
    std::vector<double> p(static_cast<std::size_t>(2 * n_out * d * d));
    for (double& v : p) v = rng.normal();
    starts.push_back(std::move(p));
  }

  double best = 2.0;
  for (auto& start : starts) {
    const double v0 = objective(start);
    best = std::min(best, v0);
    std::vector<double> x = start;
    const double v = nelder_mead(x, objective, per_restart, rng);
    best = std::min(best, v);
  }

  Certificate cert;
  cert.budget_exhausted = true;  // the optimizer always runs to its budget
  cert.iterations = opts.budget;
  return clamp_fidelity(best, Method::Measured, cert);
}

double sdp_lower_bound_perm(const StateTuple& t) {
  const int r = t.size();
  if (r > 6) throw InvariantViolation("sdp_lower_bound_perm: exhaustive enumeration capped at r = 6");
  const int half = r / 2;
  // pairwise Uhlmann table
  std::vector<std::vector<double>> fid(static_cast<std::size_t>(r),
                                       std::vector<double>(static_cast<std::size_t>(r), 0.0));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const double f = uhlmann(t[i], t[j]);
      fid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f;
      fid[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = f;
    }
  for (int i = 0; i < r; ++i) fid[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;

  std::vector<int> perm(static_cast<std::size_t>(r));
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0.0;
  do {
    double sum = 0.0;
    for (int i = 0; i < half; ++i)
      sum += fid[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]
                [static_cast<std::size_t>(perm[static_cast<std::size_t>(i + half)])];
    best = std::max(best, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return 2.0 * best / (static_cast<double>(r) * (r - 1));
}

FidelityValue kstar_value(const StateTuple& t, const SolveOptions& opts) {
  SdpSolution sol = solve(build_kstar(as_operators(t)), opts);
  return clamp_fidelity(sol.primal_value, Method::Kstar, cert_from(sol));
}

FidelityValue kstar_pure_value(const std::vector<std::vector<cplx>>& vectors,
                               const SolveOptions& opts) {
  SdpSolution sol = solve(build_kstar_pure(vectors), opts);
  return clamp_fidelity(sol.primal_value, Method::KstarPure, cert_from(sol));
}

FidelityValue geometric_multi_value(const StateTuple& t, const SolveOptions& opts) {
  SdpSolution sol = solve(build_geometric_multi_sdp(as_operators(t)), opts);
  return clamp_fidelity(sol.primal_value, Method::GeometricMulti, cert_from(sol));
}

StateTuple tensor_power_tuple(const StateTuple& t, int n) {
  if (n < 1) throw InvariantViolation("tensor_power_tuple: n must be >= 1");
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(t.size()));
  for (const auto& s : t.states()) {
    ComplexMatrix acc = s.matrix();
    for (int k = 1; k < n; ++k) acc = kron(acc, s.matrix());
    out.emplace_back(symmetrize(acc), Validation::Repair);
  }
  return StateTuple(std::move(out));
}

DensityMatrix epsilon_mixed(const DensityMatrix& rho, double eps) {
  const int d = rho.dim();
  ComplexMatrix out = rho.matrix();
  for (int i = 0; i < d; ++i) out(i, i) += eps / d;
  out *= cplx(1.0 / (1.0 + eps), 0.0);
  return DensityMatrix(symmetrize(out));
}

StateTuple epsilon_mixed_tuple(const StateTuple& t, double eps) {
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(t.size()));
  for (const auto& s : t.states()) out.push_back(epsilon_mixed(s, eps));
  return StateTuple(std::move(out));
}

StateTuple apply_channel_tuple(const QuantumChannel& channel, const StateTuple& t) {
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(t.size()));
  for (const auto& s : t.states()) out.push_back(apply_channel(channel, s));
  return StateTuple(std::move(out));
}

}  // namespace multifid

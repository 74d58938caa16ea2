#include "multifid/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace multifid {

BlockMatrix BlockMatrix::zeros(const std::vector<int>& dims) {
  BlockMatrix m;
  m.dims = dims;
  m.blocks.reserve(dims.size());
  for (int d : dims) m.blocks.emplace_back(static_cast<std::size_t>(d) * d, 0.0);
  return m;
}

BlockMatrix BlockMatrix::identity(const std::vector<int>& dims, double scale) {
  BlockMatrix m = zeros(dims);
  for (std::size_t b = 0; b < dims.size(); ++b)
    for (int i = 0; i < dims[b]; ++i) m.at(static_cast<int>(b), i, i) = scale;
  return m;
}

int BlockMatrix::total_dim() const {
  int n = 0;
  for (int d : dims) n += d;
  return n;
}

double BlockMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& blk : blocks)
    for (double v : blk) s += v * v;
  return std::sqrt(s);
}

void SparseSym::add(int block, int row, int col, double value) {
  if (value == 0.0) return;
  if (row > col) std::swap(row, col);
  entries.push_back(SparseSymEntry{block, row, col, value});
}

double SparseSym::dot(const BlockMatrix& x) const {
  double s = 0.0;
  for (const auto& e : entries) {
    const double v = x.at(e.block, e.row, e.col);
    s += (e.row == e.col) ? e.value * v : 2.0 * e.value * v;
  }
  return s;
}

void SparseSym::add_to(BlockMatrix& x, double scale) const {
  for (const auto& e : entries) {
    x.at(e.block, e.row, e.col) += scale * e.value;
    if (e.row != e.col) x.at(e.block, e.col, e.row) += scale * e.value;
  }
}

double SparseSym::frobenius_norm() const {
  double s = 0.0;
  for (const auto& e : entries)
    s += (e.row == e.col) ? e.value * e.value : 2.0 * e.value * e.value;
  return std::sqrt(s);
}

namespace {

// ---- dense real symmetric kernels (single block) ---------------------------

void dense_mul(const std::vector<double>& a, const std::vector<double>& b,
               std::vector<double>& out, int n) {
  out.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double* arow = a.data() + static_cast<std::size_t>(i) * n;
    double* orow = out.data() + static_cast<std::size_t>(i) * n;
    for (int k = 0; k < n; ++k) {
      const double aik = arow[k];
      if (aik == 0.0) continue;
      const double* brow = b.data() + static_cast<std::size_t>(k) * n;
      for (int j = 0; j < n; ++j) orow[j] += aik * brow[j];
    }
  }
}

void dense_symmetrize(std::vector<double>& a, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (a[static_cast<std::size_t>(i) * n + j] +
                              a[static_cast<std::size_t>(j) * n + i]);
      a[static_cast<std::size_t>(i) * n + j] = v;
      a[static_cast<std::size_t>(j) * n + i] = v;
    }
}

bool dense_cholesky(const std::vector<double>& a, int n, std::vector<double>& l) {
  l.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    double diag = a[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) {
      const double ljk = l[static_cast<std::size_t>(j) * n + k];
      diag -= ljk * ljk;
    }
    if (diag <= 0.0 || !std::isfinite(diag)) return false;
    const double root = std::sqrt(diag);
    l[static_cast<std::size_t>(j) * n + j] = root;
    for (int i = j + 1; i < n; ++i) {
      double v = a[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        v -= l[static_cast<std::size_t>(i) * n + k] * l[static_cast<std::size_t>(j) * n + k];
      l[static_cast<std::size_t>(i) * n + j] = v / root;
    }
  }
  return true;
}

// ---- block-level helpers ----------------------------------------------------

BlockMatrix block_mul(const BlockMatrix& a, const BlockMatrix& b) {
  BlockMatrix out = BlockMatrix::zeros(a.dims);
  for (std::size_t k = 0; k < a.blocks.size(); ++k)
    dense_mul(a.blocks[k], b.blocks[k], out.blocks[k], a.dims[k]);
  return out;
}

void block_axpy(BlockMatrix& y, const BlockMatrix& x, double alpha) {
  for (std::size_t k = 0; k < y.blocks.size(); ++k)
    for (std::size_t i = 0; i < y.blocks[k].size(); ++i) y.blocks[k][i] += alpha * x.blocks[k][i];
}

void block_scale(BlockMatrix& y, double alpha) {
  for (auto& blk : y.blocks)
    for (double& v : blk) v *= alpha;
}

double block_dot(const BlockMatrix& a, const BlockMatrix& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.blocks.size(); ++k)
    for (std::size_t i = 0; i < a.blocks[k].size(); ++i) s += a.blocks[k][i] * b.blocks[k][i];
  return s;
}

void block_symmetrize(BlockMatrix& a) {
  for (std::size_t k = 0; k < a.blocks.size(); ++k) dense_symmetrize(a.blocks[k], a.dims[k]);
}

bool block_is_finite(const BlockMatrix& a) {
  for (const auto& blk : a.blocks)
    for (double v : blk)
      if (!std::isfinite(v)) return false;
  return true;
}

BlockMatrix block_sym_function(const BlockMatrix& a, double (*f)(double)) {
  BlockMatrix out = BlockMatrix::zeros(a.dims);
  std::vector<double> vals, vecs;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    const int n = a.dims[k];
    sym_eig(a.blocks[k], n, vals, vecs);
    for (double& v : vals) v = f(v);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int t = 0; t < n; ++t)
          s += vecs[static_cast<std::size_t>(i) * n + t] * vals[static_cast<std::size_t>(t)] *
               vecs[static_cast<std::size_t>(j) * n + t];
        out.blocks[k][static_cast<std::size_t>(i) * n + j] = s;
        out.blocks[k][static_cast<std::size_t>(j) * n + i] = s;
      }
  }
  return out;
}

// Largest alpha in (0, 1] keeping m + alpha dm in the cone (bisection on
// Cholesky feasibility; the step-fraction cap makes exactness unnecessary).
double step_to_boundary(const BlockMatrix& m, const BlockMatrix& dm) {
  std::vector<double> trial, l;
  auto feasible = [&](double alpha) {
    for (std::size_t k = 0; k < m.blocks.size(); ++k) {
      const int n = m.dims[k];
      trial = m.blocks[k];
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += alpha * dm.blocks[k][i];
      if (!dense_cholesky(trial, n, l)) return false;
    }
    return true;
  };
  if (feasible(1.0)) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double inv_sqrt_clamped(double x) { return x > 1e-300 ? 1.0 / std::sqrt(x) : 0.0; }
double sqrt_clamped(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }
double inv_clamped(double x) { return x > 1e-300 ? 1.0 / x : 0.0; }

// Cholesky factorization of the Schur matrix with escalating jitter, plus
// iterative refinement against the unjittered matrix on every solve (the
// late-iteration Schur complement is severely ill-conditioned and a plain
// solve loses enough digits to stall the duality gap).
class SchurFactor {
public:
  SchurFactor(const std::vector<double>& m, int dim) : m_(m), dim_(dim) {
    double jitter = 0.0;
    double scale = 0.0;
    for (int i = 0; i < dim; ++i)
      scale = std::max(scale, m[static_cast<std::size_t>(i) * dim + i]);
    if (scale <= 0.0) scale = 1.0;
    for (int attempt = 0; attempt < 10; ++attempt) {
      std::vector<double> work = m;
      if (jitter > 0.0)
        for (int i = 0; i < dim; ++i) work[static_cast<std::size_t>(i) * dim + i] += jitter;
      if (dense_cholesky(work, dim, l_)) return;
      jitter = (jitter == 0.0) ? 1e-14 * scale : jitter * 100.0;
    }
    throw NumericalFailure("Schur complement factorization broke down");
  }

  void solve(std::vector<double>& rhs) const {
    std::vector<double> x = rhs;
    back_substitute(x);
    for (int round = 0; round < 2; ++round) {
      std::vector<double> resid(static_cast<std::size_t>(dim_));
      for (int i = 0; i < dim_; ++i) {
        double v = rhs[static_cast<std::size_t>(i)];
        for (int k = 0; k < dim_; ++k)
          v -= m_[static_cast<std::size_t>(i) * dim_ + k] * x[static_cast<std::size_t>(k)];
        resid[static_cast<std::size_t>(i)] = v;
      }
      back_substitute(resid);
      for (int i = 0; i < dim_; ++i) x[static_cast<std::size_t>(i)] += resid[static_cast<std::size_t>(i)];
    }
    rhs.swap(x);
  }

private:
  void back_substitute(std::vector<double>& v) const {
    for (int i = 0; i < dim_; ++i) {
      double t = v[static_cast<std::size_t>(i)];
      for (int k = 0; k < i; ++k)
        t -= l_[static_cast<std::size_t>(i) * dim_ + k] * v[static_cast<std::size_t>(k)];
      v[static_cast<std::size_t>(i)] = t / l_[static_cast<std::size_t>(i) * dim_ + i];
    }
    for (int i = dim_ - 1; i >= 0; --i) {
      double t = v[static_cast<std::size_t>(i)];
      for (int k = i + 1; k < dim_; ++k)
        t -= l_[static_cast<std::size_t>(k) * dim_ + i] * v[static_cast<std::size_t>(k)];
      v[static_cast<std::size_t>(i)] = t / l_[static_cast<std::size_t>(i) * dim_ + i];
    }
  }

  const std::vector<double>& m_;
  int dim_;
  std::vector<double> l_;
};

}  // namespace

void sym_eig(const std::vector<double>& a_in, int n, std::vector<double>& values,
             std::vector<double>& vectors) {
  std::vector<double> a = a_in;
  vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) vectors[static_cast<std::size_t>(i) * n + i] = 1.0;

  double norm_in = 0.0;
  for (double v : a) norm_in += v * v;
  norm_in = std::sqrt(norm_in);
  const double tol = 1e-14 * (norm_in > 0.0 ? norm_in : 1.0);

  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = a[static_cast<std::size_t>(i) * n + j];
        off += 2.0 * v * v;
      }
    if (std::sqrt(off) <= tol) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[static_cast<std::size_t>(p) * n + q];
        if (std::abs(apq) <= 1e-300) continue;
        const double app = a[static_cast<std::size_t>(p) * n + p];
        const double aqq = a[static_cast<std::size_t>(q) * n + q];
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[static_cast<std::size_t>(k) * n + p];
          const double akq = a[static_cast<std::size_t>(k) * n + q];
          a[static_cast<std::size_t>(k) * n + p] = c * akp - s * akq;
          a[static_cast<std::size_t>(k) * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[static_cast<std::size_t>(p) * n + k];
          const double aqk = a[static_cast<std::size_t>(q) * n + k];
          a[static_cast<std::size_t>(p) * n + k] = c * apk - s * aqk;
          a[static_cast<std::size_t>(q) * n + k] = s * apk + c * aqk;
        }
        a[static_cast<std::size_t>(p) * n + q] = 0.0;
        a[static_cast<std::size_t>(q) * n + p] = 0.0;
        for (int k = 0; k < n; ++k) {
          const double vkp = vectors[static_cast<std::size_t>(k) * n + p];
          const double vkq = vectors[static_cast<std::size_t>(k) * n + q];
          vectors[static_cast<std::size_t>(k) * n + p] = c * vkp - s * vkq;
          vectors[static_cast<std::size_t>(k) * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return a[static_cast<std::size_t>(x) * n + x] < a[static_cast<std::size_t>(y) * n + y];
  });
  values.resize(static_cast<std::size_t>(n));
  std::vector<double> sorted_vecs(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    values[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(order[j]) * n + order[j]];
    for (int i = 0; i < n; ++i)
      sorted_vecs[static_cast<std::size_t>(i) * n + j] =
          vectors[static_cast<std::size_t>(i) * n + order[j]];
  }
  vectors.swap(sorted_vecs);
}

double BlockMatrix::min_eigenvalue() const {
  double mn = 0.0;
  bool first = true;
  std::vector<double> vals, vecs;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    sym_eig(blocks[k], dims[k], vals, vecs);
    if (first || vals.front() < mn) mn = vals.front();
    first = false;
  }
  return mn;
}

SdpSolution solve(const SdpProblem& problem, const SolveOptions& options) {
  const int m = static_cast<int>(problem.constraints.size());
  if (m != static_cast<int>(problem.rhs.size()))
    throw InvariantViolation("SdpProblem: constraints/rhs length mismatch");
  const bool maximize = problem.sense == SdpProblem::Sense::Max;

  SparseSym c_int = problem.objective;
  if (maximize)
    for (auto& e : c_int.entries) e.value = -e.value;

  const double gap_tol = options.gap_tol;
  const double feas_tol = options.feas_tol > 0.0 ? options.feas_tol : gap_tol;
  const int n_total = [&] {
    int n = 0;
    for (int d : problem.block_dims) n += d;
    return n;
  }();

  BlockMatrix x = BlockMatrix::identity(problem.block_dims);
  BlockMatrix s = BlockMatrix::identity(problem.block_dims);
  std::vector<double> y(static_cast<std::size_t>(m), 0.0);

  double b_norm = 0.0;
  for (double v : problem.rhs) b_norm += v * v;
  b_norm = std::sqrt(b_norm);
  const double c_norm = c_int.frobenius_norm();

  SdpSolution sol;
  sol.x = x;
  sol.s = s;
  sol.y = y;

  auto finish = [&](SdpSolution::Status status, int iterations, double pv_int, double pres,
                    double dres, double mu) {
    sol.status = status;
    sol.iterations = iterations;
    sol.primal_residual = pres;
    sol.dual_residual = dres;
    sol.mu = mu;
    double dv_int = 0.0;
    for (int k = 0; k < m; ++k)
      dv_int += problem.rhs[static_cast<std::size_t>(k)] * sol.y[static_cast<std::size_t>(k)];
    sol.primal_value = maximize ? -pv_int : pv_int;
    sol.dual_value = maximize ? -dv_int : dv_int;
    sol.gap = sol.primal_value - sol.dual_value;
    if (maximize)
      for (double& v : sol.y) v = -v;
    return sol;
  };

  std::vector<double> schur(static_cast<std::size_t>(m) * m);
  std::vector<double> rhs_vec(static_cast<std::size_t>(m));
  BlockMatrix w_buf = BlockMatrix::zeros(problem.block_dims);

  // Gram matrix of the constraints, used to re-project X onto the affine
  // manifold each iteration.  Well-conditioned (constraints independent), so
  // the projection restores A(X) = b to machine precision; without it the
  // formation error of the Schur matrix leaves a primal residual that couples
  // to ||y|| and caps the attainable accuracy of the objective value.
  std::vector<double> gram(static_cast<std::size_t>(m) * m, 0.0);
  {
    BlockMatrix acc = BlockMatrix::zeros(problem.block_dims);
    for (int k = 0; k < m; ++k) {
      for (auto& blk : acc.blocks) std::fill(blk.begin(), blk.end(), 0.0);
      problem.constraints[static_cast<std::size_t>(k)].add_to(acc, 1.0);
      for (int l = 0; l <= k; ++l) {
        const double v = problem.constraints[static_cast<std::size_t>(l)].dot(acc);
        gram[static_cast<std::size_t>(k) * m + l] = v;
        gram[static_cast<std::size_t>(l) * m + k] = v;
      }
    }
  }
  if (m > 0) {
    // linear independence of the constraints, rank tolerance 1e-10
    std::vector<double> l;
    double gmax = 0.0;
    for (int i = 0; i < m; ++i)
      gmax = std::max(gmax, gram[static_cast<std::size_t>(i) * m + i]);
    if (!dense_cholesky(gram, m, l))
      throw InvariantViolation("SdpProblem: constraints are linearly dependent");
    for (int i = 0; i < m; ++i) {
      const double pivot = l[static_cast<std::size_t>(i) * m + i];
      if (pivot * pivot < 1e-20 * gmax)
        throw InvariantViolation("SdpProblem: constraints are linearly dependent");
    }
  }
  SchurFactor gram_factor(gram, m);

  auto project_feasible = [&](BlockMatrix& target) {
    std::vector<double> resid(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
      resid[static_cast<std::size_t>(k)] = problem.rhs[static_cast<std::size_t>(k)] -
                                           problem.constraints[static_cast<std::size_t>(k)].dot(target);
    gram_factor.solve(resid);
    BlockMatrix candidate = target;
    for (int k = 0; k < m; ++k)
      problem.constraints[static_cast<std::size_t>(k)].add_to(candidate,
                                                              resid[static_cast<std::size_t>(k)]);
    return candidate;
  };

  double pres = 0.0, dres = 0.0, mu = 1.0;
  double best_pres = 1e300;
  int value_stall = 0;
  int pres_stall = 0;
  int iter = 0;
  for (; iter < options.max_iter; ++iter) {
    std::vector<double> rp(static_cast<std::size_t>(m));
    pres = 0.0;
    for (int k = 0; k < m; ++k) {
      rp[static_cast<std::size_t>(k)] = problem.rhs[static_cast<std::size_t>(k)] -
                                        problem.constraints[static_cast<std::size_t>(k)].dot(x);
      pres += rp[static_cast<std::size_t>(k)] * rp[static_cast<std::size_t>(k)];
    }
    pres = std::sqrt(pres) / (1.0 + b_norm);

    BlockMatrix rd = BlockMatrix::zeros(problem.block_dims);
    c_int.add_to(rd, 1.0);
    block_axpy(rd, s, -1.0);
    for (int k = 0; k < m; ++k)
      problem.constraints[static_cast<std::size_t>(k)].add_to(rd, -y[static_cast<std::size_t>(k)]);
    dres = rd.frobenius_norm() / (1.0 + c_norm);

    mu = block_dot(x, s) / n_total;

    // objective reported from the affine projection of X: A(X_rep) = b holds
    // to machine precision, so the value does not inherit the |y . rp| noise
    // that appears when the other side's optimizer is unattained
    BlockMatrix x_rep = project_feasible(x);
    const double pv = c_int.dot(x_rep);
    double dv = 0.0;
    for (int k = 0; k < m; ++k)
      dv += problem.rhs[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(k)];
    const double rel_gap = std::abs(pv - dv) / (1.0 + std::abs(pv));
    const double rel_value = (mu * n_total) / (1.0 + std::abs(pv));

    if (options.trace) {
      double ynorm = 0.0;
      for (double v : y) ynorm += v * v;
      (*options.trace) << "iter=" << iter << " mu=" << mu << " gap=" << rel_gap << " pres=" << pres
                       << " dres=" << dres << " ynorm=" << std::sqrt(ynorm) << "\n";
    }

    sol.x = x;
    sol.s = s;
    sol.y = y;
    if (rel_gap <= gap_tol && pres <= feas_tol && dres <= feas_tol)
      return finish(SdpSolution::Status::Optimal, iter, pv, pres, dres, mu);

    // One side's optimizer can be unattained (rank-deficient data), in which
    // case y drifts and pv - dv never reaches gap_tol even though the
    // projected primal value has converged.  Stop once the value criterion
    // holds and feasibility has either converged or stopped improving, with
    // an honest non-optimal status.
    const bool value_ok = rel_value <= gap_tol && dres <= feas_tol;
    if (value_ok && pres <= feas_tol) {
      if (++value_stall >= 3)
        return finish(SdpSolution::Status::MaxIter, iter, pv, pres, dres, mu);
    } else if (value_ok && pres >= 0.9 * best_pres) {
      if (++pres_stall >= 6)
        return finish(SdpSolution::Status::MaxIter, iter, pv, pres, dres, mu);
    } else {
      value_stall = 0;
      pres_stall = 0;
    }
    best_pres = std::min(best_pres, pres);

    double y_norm = 0.0;
    for (double v : y) y_norm = std::max(y_norm, std::abs(v));
    if (iter > 40 && y_norm > 1e10 && pres > 1e-4)
      return finish(SdpSolution::Status::InfeasibleSuspect, iter, pv, pres, dres, mu);

    // Nesterov-Todd scaling point: W S W = X
    BlockMatrix s_half = block_sym_function(s, sqrt_clamped);
    BlockMatrix s_inv_half = block_sym_function(s, inv_sqrt_clamped);
    BlockMatrix s_inv = block_sym_function(s, inv_clamped);
    BlockMatrix t = block_mul(block_mul(s_half, x), s_half);
    block_symmetrize(t);
    BlockMatrix t_half = block_sym_function(t, sqrt_clamped);
    BlockMatrix w = block_mul(block_mul(s_inv_half, t_half), s_inv_half);
    block_symmetrize(w);
    BlockMatrix w_half = block_sym_function(w, sqrt_clamped);
    BlockMatrix w_inv_half = block_sym_function(w, inv_sqrt_clamped);
    if (!block_is_finite(w) || !block_is_finite(w_half))
      throw NumericalFailure("NT scaling produced non-finite values");

    // Schur complement M_kl = <A_k, W A_l W>; constraint sparsity keeps this cheap.
    for (int k = 0; k < m; ++k) {
      const auto& ak = problem.constraints[static_cast<std::size_t>(k)];
      for (auto& blk : w_buf.blocks) std::fill(blk.begin(), blk.end(), 0.0);
      for (const auto& e : ak.entries) {
        const int n = problem.block_dims[static_cast<std::size_t>(e.block)];
        const auto& wb = w.blocks[static_cast<std::size_t>(e.block)];
        auto& out = w_buf.blocks[static_cast<std::size_t>(e.block)];
        for (int i = 0; i < n; ++i) {
          const double wir = wb[static_cast<std::size_t>(i) * n + e.row];
          const double wic = wb[static_cast<std::size_t>(i) * n + e.col];
          double* orow = out.data() + static_cast<std::size_t>(i) * n;
          if (e.row == e.col) {
            for (int j = 0; j < n; ++j)
              orow[j] += e.value * wir * wb[static_cast<std::size_t>(j) * n + e.col];
          } else {
            for (int j = 0; j < n; ++j)
              orow[j] += e.value * (wir * wb[static_cast<std::size_t>(j) * n + e.col] +
                                    wic * wb[static_cast<std::size_t>(j) * n + e.row]);
          }
        }
      }
      for (int l = 0; l <= k; ++l) {
        const double v = problem.constraints[static_cast<std::size_t>(l)].dot(w_buf);
        schur[static_cast<std::size_t>(k) * m + l] = v;
        schur[static_cast<std::size_t>(l) * m + k] = v;
      }
    }

    SchurFactor factor(schur, m);

    auto solve_direction = [&](const BlockMatrix& rc, std::vector<double>& dy, BlockMatrix& dx,
                               BlockMatrix& ds) {
      BlockMatrix wrdw = block_mul(block_mul(w, rd), w);
      block_symmetrize(wrdw);
      for (int k = 0; k < m; ++k)
        rhs_vec[static_cast<std::size_t>(k)] =
            rp[static_cast<std::size_t>(k)] -
            problem.constraints[static_cast<std::size_t>(k)].dot(rc) +
            problem.constraints[static_cast<std::size_t>(k)].dot(wrdw);
      dy = rhs_vec;
      factor.solve(dy);
      ds = rd;
      for (int k = 0; k < m; ++k)
        problem.constraints[static_cast<std::size_t>(k)].add_to(ds,
                                                                -dy[static_cast<std::size_t>(k)]);
      BlockMatrix wdsw = block_mul(block_mul(w, ds), w);
      dx = rc;
      block_axpy(dx, wdsw, -1.0);
      block_symmetrize(dx);
    };

    // predictor (affine direction)
    BlockMatrix rc_aff = x;
    block_scale(rc_aff, -1.0);
    std::vector<double> dy_aff;
    BlockMatrix dx_aff, ds_aff;
    solve_direction(rc_aff, dy_aff, dx_aff, ds_aff);

    const double a_aff = std::min(step_to_boundary(x, dx_aff), step_to_boundary(s, ds_aff));
    BlockMatrix x_aff = x;
    block_axpy(x_aff, dx_aff, a_aff);
    BlockMatrix s_aff = s;
    block_axpy(s_aff, ds_aff, a_aff);
    const double mu_aff = block_dot(x_aff, s_aff) / n_total;
    double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3.0);
    sigma = std::min(1.0, std::max(sigma, 1e-10));

    // Mehrotra corrector posed in the scaled space: the complementarity target
    // is sigma mu S^{-1} - X - W^{1/2} sym(V^{-1} sym(Dx Ds)) W^{1/2}, with
    // Dx = W^{-1/2} dX_aff W^{-1/2}, Ds = W^{1/2} dS_aff W^{1/2}, V = W^{1/2} S W^{1/2}.
    BlockMatrix dx_scaled = block_mul(block_mul(w_inv_half, dx_aff), w_inv_half);
    BlockMatrix ds_scaled = block_mul(block_mul(w_half, ds_aff), w_half);
    BlockMatrix prod = block_mul(dx_scaled, ds_scaled);
    block_symmetrize(prod);
    BlockMatrix v_mat = block_mul(block_mul(w_half, s), w_half);
    block_symmetrize(v_mat);
    BlockMatrix v_inv = block_sym_function(v_mat, inv_clamped);
    BlockMatrix q = block_mul(v_inv, prod);
    block_symmetrize(q);
    BlockMatrix second_order = block_mul(block_mul(w_half, q), w_half);
    block_symmetrize(second_order);

    BlockMatrix rc = BlockMatrix::zeros(problem.block_dims);
    block_axpy(rc, x, -1.0);
    block_axpy(rc, s_inv, sigma * mu);
    block_axpy(rc, second_order, -1.0);

    std::vector<double> dy;
    BlockMatrix dx, ds;
    solve_direction(rc, dy, dx, ds);

    double bound = std::min(step_to_boundary(x, dx), step_to_boundary(s, ds));
    double alpha = std::min(1.0, options.step_fraction * bound);
    if (!std::isfinite(alpha) || alpha <= 0.0) alpha = 1e-4;
    if (options.trace)
      (*options.trace) << "iter=" << iter << " sigma=" << sigma << " alpha=" << alpha << "\n";

    block_axpy(x, dx, alpha);
    block_axpy(s, ds, alpha);
    for (int k = 0; k < m; ++k)
      y[static_cast<std::size_t>(k)] += alpha * dy[static_cast<std::size_t>(k)];

    if (!block_is_finite(x) || !block_is_finite(s))
      throw NumericalFailure("interior-point iterate diverged");
    if (x.frobenius_norm() > 1e14 || s.frobenius_norm() > 1e14)
      return finish(SdpSolution::Status::InfeasibleSuspect, iter, pv, pres, dres, mu);
  }

  std::vector<double> rp(static_cast<std::size_t>(m));
  pres = 0.0;
  for (int k = 0; k < m; ++k) {
    rp[static_cast<std::size_t>(k)] = problem.rhs[static_cast<std::size_t>(k)] -
                                      problem.constraints[static_cast<std::size_t>(k)].dot(x);
    pres += rp[static_cast<std::size_t>(k)] * rp[static_cast<std::size_t>(k)];
  }
  pres = std::sqrt(pres) / (1.0 + b_norm);
  BlockMatrix rd = BlockMatrix::zeros(problem.block_dims);
  c_int.add_to(rd, 1.0);
  block_axpy(rd, s, -1.0);
  for (int k = 0; k < m; ++k)
    problem.constraints[static_cast<std::size_t>(k)].add_to(rd, -y[static_cast<std::size_t>(k)]);
  sol.x = x;
  sol.s = s;
  sol.y = y;
  return finish(SdpSolution::Status::MaxIter, iter, c_int.dot(project_feasible(x)), pres,
                rd.frobenius_norm() / (1.0 + c_norm), block_dot(x, s) / n_total);
}

}  // namespace multifid

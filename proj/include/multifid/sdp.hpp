#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "multifid/errors.hpp"

namespace multifid {

// Real symmetric block-diagonal matrix (dense blocks, row-major).
struct BlockMatrix {
  std::vector<int> dims;
  std::vector<std::vector<double>> blocks;

  static BlockMatrix zeros(const std::vector<int>& dims);
  static BlockMatrix identity(const std::vector<int>& dims, double scale = 1.0);

  int total_dim() const;
  double& at(int block, int i, int j) {
    return blocks[static_cast<std::size_t>(block)]
                 [static_cast<std::size_t>(i) * dims[static_cast<std::size_t>(block)] + j];
  }
  double at(int block, int i, int j) const {
    return blocks[static_cast<std::size_t>(block)]
                 [static_cast<std::size_t>(i) * dims[static_cast<std::size_t>(block)] + j];
  }
  double frobenius_norm() const;
  double min_eigenvalue() const;
};

// Sparse representation of a real symmetric matrix sharing the problem's
// block structure.  Entries are stored once with row <= col; an off-diagonal
// entry (r, c, v) stands for value v at both (r, c) and (c, r).
struct SparseSymEntry {
  int block;
  int row;
  int col;
  double value;
};

struct SparseSym {
  std::vector<SparseSymEntry> entries;

  void add(int block, int row, int col, double value);
  // <A, X> with the symmetric double-count convention.
  double dot(const BlockMatrix& x) const;
  // X += scale * A (dense accumulate)
  void add_to(BlockMatrix& x, double scale) const;
  double frobenius_norm() const;
};

// Standard-form semidefinite program over real symmetric block matrices:
//   min/max <C, X>  s.t.  <A_k, X> = b_k,  X >= 0.
struct SdpProblem {
  enum class Sense { Min, Max };

  std::vector<int> block_dims;
  SparseSym objective;
  std::vector<SparseSym> constraints;
  std::vector<double> rhs;
  Sense sense = Sense::Min;
};

struct SdpSolution {
  enum class Status { Optimal, MaxIter, InfeasibleSuspect };

  double primal_value = 0.0;  // <C, X*> in the problem's own sense
  double dual_value = 0.0;    // b'y* in the problem's own sense
  double gap = 0.0;           // primal_value - dual_value
  BlockMatrix x;
  std::vector<double> y;
  BlockMatrix s;
  Status status = Status::MaxIter;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double mu = 0.0;
};

struct SolveOptions {
  double gap_tol = 1e-8;
  double feas_tol = 0.0;  // 0 -> use gap_tol
  int max_iter = 200;
  double step_fraction = 0.98;
  std::ostream* trace = nullptr;  // per-iteration diagnostic records
};

// Primal-dual path-following interior-point solver (Nesterov-Todd scaling,
// Mehrotra predictor-corrector, dense Cholesky of the Schur complement).
// Infeasible start at X = I, y = 0, S = I.
SdpSolution solve(const SdpProblem& problem, const SolveOptions& options = {});

// Dense real symmetric eigendecomposition (cyclic Jacobi), ascending.
void sym_eig(const std::vector<double>& a, int n, std::vector<double>& values,
             std::vector<double>& vectors);

}  // namespace multifid

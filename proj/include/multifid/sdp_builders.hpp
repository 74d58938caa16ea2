#pragma once

#include "multifid/hermitian.hpp"
#include "multifid/sdp.hpp"

namespace multifid {

// A standard-form SDP over complex Hermitian block variables, before the
// real embedding:  min/max Tr[C G]  s.t.  Tr[A_k G] = b_k,  G >= 0.
// Hermitian matrices are stored sparsely: an entry (row < col, v) stands for
// value v at (row, col) and conj(v) at (col, row); diagonal entries are real.
struct ComplexSdp {
  struct Entry {
    int block;
    int row;
    int col;
    cplx value;
  };
  struct Constraint {
    std::vector<Entry> entries;
    double rhs;
  };

  std::vector<int> block_dims;
  std::vector<Entry> objective;
  std::vector<Constraint> constraints;
  SdpProblem::Sense sense = SdpProblem::Sense::Min;

  void add_objective(int block, int row, int col, cplx value);
  // Appends the d^2 real constraints pinning Hermitian block (bi, bj) of a
  // block variable to the given matrix (bi == bj pins a diagonal block).
  void pin_block(int var_block, int offset_row, int offset_col, const ComplexMatrix& target);
};

// [[Re, -Im], [Im, Re]] embedding.  Objective entries are halved so the real
// optimum equals the complex one (the embedding doubles every trace).
SdpProblem complex_to_real(const ComplexSdp& problem);

// Real symmetric embedding of a single Hermitian matrix (test/diagnostic
// helper; PSD iff the input is PSD, spectrum duplicated).
std::vector<double> complex_to_real_matrix(const ComplexMatrix& h);

// ---- problem builders ------------------------------------------------------
// Each returns a ready-to-solve real problem whose optimum (in the problem's
// sense) equals the quantity named, for a tuple of PSD operators.

// inf over Y_i >= 0 of sum Tr[Y_i rho_i] / (r(r-1)) subject to
// sum |i><i| (x) Y_i >= sum_{i != j} |i><j| (x) I.   Encoded with explicit
// slack so the strictly feasible point Y_i = r I is interior.
SdpProblem build_fsdp_primal(const std::vector<HermitianMatrix>& states);

// sup over the block matrix G >= 0 with G_ii = rho_i of
// sum_{i != j} Tr[G_ij] / (r(r-1)).
SdpProblem build_fsdp_dual(const std::vector<HermitianMatrix>& states);

// Secrecy measure S(rho_1..rho_r): sup over G >= 0 with G_00 = sigma
// (Tr sigma = 1), G_ii = rho_i of (1/r) sum_i Re Tr[G_i0].
SdpProblem build_secrecy_sdp(const std::vector<HermitianMatrix>& states);

// Gram form for pure states: sup over r x r PSD K with unit diagonal of
// (2/(r(r-1))) sum_{i<j} Re[k_ij <psi_i|psi_j>].
SdpProblem build_kstar_pure(const std::vector<std::vector<cplx>>& vectors);

// Purification-based form: sup over K >= 0 with K_ii = I of
// (2/(r(r-1))) sum_{i<j} Re Tr[rho_i^{1/2} K_ij rho_j^{1/2}].
SdpProblem build_kstar(const std::vector<HermitianMatrix>& states);

// Same as build_fsdp_dual with every off-diagonal block forced Hermitian
// (the multivariate geometric-mean program).
SdpProblem build_geometric_multi_sdp(const std::vector<HermitianMatrix>& states);

}  // namespace multifid

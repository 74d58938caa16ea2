#include "multifid/sdp_builders.hpp"

#include <algorithm>
#include <cmath>

namespace multifid {

void ComplexSdp::add_objective(int block, int row, int col, cplx value) {
  if (value == cplx(0.0)) return;
  if (row > col) {
    std::swap(row, col);
    value = std::conj(value);
  }
  objective.push_back(Entry{block, row, col, value});
}

void ComplexSdp::pin_block(int var_block, int offset_row, int offset_col,
                           const ComplexMatrix& target) {
  const int d = target.rows();
  const bool diagonal_block = offset_row == offset_col;
  for (int a = 0; a < d; ++a) {
    const int b_start = diagonal_block ? a : 0;
    for (int b = b_start; b < d; ++b) {
      const int p = offset_row + a;
      const int q = offset_col + b;
      if (diagonal_block && a == b) {
        constraints.push_back(Constraint{{Entry{var_block, p, q, 1.0}}, target(a, b).real()});
        continue;
      }
      // Tr[E_re G] = 2 Re G_pq,  Tr[E_im G] = 2 Im G_pq
      constraints.push_back(
          Constraint{{Entry{var_block, p, q, 1.0}}, 2.0 * target(a, b).real()});
      constraints.push_back(
          Constraint{{Entry{var_block, p, q, cplx(0.0, 1.0)}}, 2.0 * target(a, b).imag()});
    }
  }
}

namespace {

// One Hermitian sparse entry -> entries of the [[Re, -Im], [Im, Re]] image.
void embed_entry(SparseSym& out, int block, int n, int row, int col, cplx value) {
  const double re = value.real();
  const double im = value.imag();
  if (row == col) {
    out.add(block, row, row, re);
    out.add(block, n + row, n + row, re);
    return;
  }
  out.add(block, row, col, re);
  out.add(block, n + row, n + col, re);
  out.add(block, row, n + col, -im);
  out.add(block, col, n + row, im);
}

}  // namespace

SdpProblem complex_to_real(const ComplexSdp& problem) {
  SdpProblem real;
  real.sense = problem.sense;
  real.block_dims.reserve(problem.block_dims.size());
  for (int d : problem.block_dims) real.block_dims.push_back(2 * d);

  for (const auto& e : problem.objective) {
    // halve so <C_real, X_embed> = Tr[C G]
    embed_entry(real.objective, e.block, problem.block_dims[static_cast<std::size_t>(e.block)],
                e.row, e.col, 0.5 * e.value);
  }
  real.constraints.reserve(problem.constraints.size());
  real.rhs.reserve(problem.constraints.size());
  for (const auto& c : problem.constraints) {
    SparseSym a;
    for (const auto& e : c.entries)
      embed_entry(a, e.block, problem.block_dims[static_cast<std::size_t>(e.block)], e.row, e.col,
                  e.value);
    real.constraints.push_back(std::move(a));
    real.rhs.push_back(2.0 * c.rhs);
  }
  return real;
}

std::vector<double> complex_to_real_matrix(const ComplexMatrix& h) {
  const int n = h.rows();
  std::vector<double> out(static_cast<std::size_t>(2 * n) * (2 * n), 0.0);
  const int m = 2 * n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = h(i, j).real();
      const double im = h(i, j).imag();
      out[static_cast<std::size_t>(i) * m + j] = re;
      out[static_cast<std::size_t>(n + i) * m + (n + j)] = re;
      out[static_cast<std::size_t>(i) * m + (n + j)] = -im;
      out[static_cast<std::size_t>(n + i) * m + j] = im;
    }
  return out;
}

namespace {

void check_tuple(const std::vector<HermitianMatrix>& states) {
  if (states.size() < 2) throw InvariantViolation("SDP builders require r >= 2 operators");
  for (const auto& s : states)
    if (s.dim() != states.front().dim())
      throw InvariantViolation("SDP builders require a common dimension");
}

// Isometry onto the support of a PSD operator (columns = eigenvectors of the
// nonzero eigenvalues).  Any feasible block matrix with pinned diagonal
// blocks rho_i is supported on the direct sum of these faces, so the pinned
// problems are built directly on the reduced face; there the pinned blocks
// are full rank and both sides of the SDP satisfy Slater's condition.
ComplexMatrix support_isometry(const HermitianMatrix& rho) {
  const EigResult& e = rho.eig();
  const int d = rho.dim();
  const double cutoff = 1e-9 * std::max(1.0, std::abs(e.eigenvalues.back()));
  int rank = 0;
  for (double lam : e.eigenvalues)
    if (lam > cutoff) ++rank;
  if (rank == 0) throw InvariantViolation("support_isometry: zero operator");
  ComplexMatrix v(d, rank);
  int col = 0;
  for (int k = 0; k < d; ++k) {
    if (e.eigenvalues[static_cast<std::size_t>(k)] <= cutoff) continue;
    for (int i = 0; i < d; ++i) v(i, col) = e.eigenvectors(i, k);
    ++col;
  }
  return v;
}

}  // namespace

SdpProblem build_fsdp_dual(const std::vector<HermitianMatrix>& states) {
  check_tuple(states);
  const int r = static_cast<int>(states.size());
  const double norm = 1.0 / (static_cast<double>(r) * (r - 1));

  std::vector<ComplexMatrix> isometries;
  std::vector<int> offsets;
  int total = 0;
  for (const auto& s : states) {
    isometries.push_back(support_isometry(s));
    offsets.push_back(total);
    total += isometries.back().cols();
  }

  ComplexSdp prob;
  prob.sense = SdpProblem::Sense::Max;
  prob.block_dims = {total};
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const ComplexMatrix w = isometries[static_cast<std::size_t>(i)].adjoint() *
                              isometries[static_cast<std::size_t>(j)];
      for (int a = 0; a < w.rows(); ++a)
        for (int b = 0; b < w.cols(); ++b)
          prob.add_objective(0, offsets[static_cast<std::size_t>(i)] + a,
                             offsets[static_cast<std::size_t>(j)] + b, norm * w(a, b));
    }
  for (int i = 0; i < r; ++i) {
    const ComplexMatrix& v = isometries[static_cast<std::size_t>(i)];
    const ComplexMatrix reduced =
        v.adjoint() * states[static_cast<std::size_t>(i)].matrix() * v;
    prob.pin_block(0, offsets[static_cast<std::size_t>(i)],
                   offsets[static_cast<std::size_t>(i)], reduced);
  }
  return complex_to_real(prob);
}

SdpProblem build_fsdp_primal(const std::vector<HermitianMatrix>& states) {
  check_tuple(states);
  const int r = static_cast<int>(states.size());
  const int d = states.front().dim();
  const double norm = 1.0 / (static_cast<double>(r) * (r - 1));

  // blocks 0..r-1: the Y_i; block r: slack Z = sum |i><i| (x) Y_i - B
  ComplexSdp prob;
  prob.sense = SdpProblem::Sense::Min;
  prob.block_dims.assign(static_cast<std::size_t>(r), d);
  prob.block_dims.push_back(r * d);
  const int z_block = r;

  for (int i = 0; i < r; ++i) {
    const ComplexMatrix& rho = states[static_cast<std::size_t>(i)].matrix();
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) prob.add_objective(i, a, b, norm * rho(a, b));
  }

  // coupling Z_ii = Y_i
  for (int i = 0; i < r; ++i) {
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) {
        const int p = i * d + a;
        const int q = i * d + b;
        if (a == b) {
          prob.constraints.push_back(ComplexSdp::Constraint{
              {ComplexSdp::Entry{i, a, b, 1.0}, ComplexSdp::Entry{z_block, p, q, -1.0}}, 0.0});
        } else {
          prob.constraints.push_back(ComplexSdp::Constraint{
              {ComplexSdp::Entry{i, a, b, 1.0}, ComplexSdp::Entry{z_block, p, q, -1.0}}, 0.0});
          prob.constraints.push_back(
              ComplexSdp::Constraint{{ComplexSdp::Entry{i, a, b, cplx(0.0, 1.0)},
                                      ComplexSdp::Entry{z_block, p, q, cplx(0.0, -1.0)}},
                                     0.0});
        }
      }
  }
  // off-diagonal blocks of Z pinned to -I
  ComplexMatrix minus_i_d = ComplexMatrix::identity(d);
  minus_i_d *= cplx(-1.0, 0.0);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) prob.pin_block(z_block, i * d, j * d, minus_i_d);
  return complex_to_real(prob);
}

SdpProblem build_secrecy_sdp(const std::vector<HermitianMatrix>& states) {
  check_tuple(states);
  const int r = static_cast<int>(states.size());
  const int d = states.front().dim();

  // block 0 (the free sigma) stays d-dimensional; the pinned blocks live on
  // their supports
  std::vector<ComplexMatrix> isometries;
  std::vector<int> offsets;
  int total = d;
  for (const auto& s : states) {
    isometries.push_back(support_isometry(s));
    offsets.push_back(total);
    total += isometries.back().cols();
  }

  ComplexSdp prob;
  prob.sense = SdpProblem::Sense::Max;
  prob.block_dims = {total};
  const double w = 1.0 / (2.0 * r);
  for (int i = 0; i < r; ++i) {
    const ComplexMatrix& v = isometries[static_cast<std::size_t>(i)];
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < v.cols(); ++b)
        prob.add_objective(0, a, offsets[static_cast<std::size_t>(i)] + b, w * v(a, b));
  }
  for (int i = 0; i < r; ++i) {
    const ComplexMatrix& v = isometries[static_cast<std::size_t>(i)];
    const ComplexMatrix reduced =
        v.adjoint() * states[static_cast<std::size_t>(i)].matrix() * v;
    prob.pin_block(0, offsets[static_cast<std::size_t>(i)],
                   offsets[static_cast<std::size_t>(i)], reduced);
  }
  // Tr[G_00] = 1
  ComplexSdp::Constraint trace_one;
  for (int a = 0; a < d; ++a) trace_one.entries.push_back(ComplexSdp::Entry{0, a, a, 1.0});
  trace_one.rhs = 1.0;
  prob.constraints.push_back(std::move(trace_one));
  return complex_to_real(prob);
}

SdpProblem build_kstar_pure(const std::vector<std::vector<cplx>>& vectors) {
  if (vectors.size() < 2) throw InvariantViolation("build_kstar_pure requires r >= 2 vectors");
  const int r = static_cast<int>(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != vectors.front().size())
      throw InvariantViolation("build_kstar_pure: vectors of mixed dimension");
    if (std::abs(vector_norm(v) - 1.0) > 1e-8)
      throw InvariantViolation("build_kstar_pure requires unit vectors");
  }
  const double norm = 1.0 / (static_cast<double>(r) * (r - 1));

  ComplexSdp prob;
  prob.sense = SdpProblem::Sense::Max;
  prob.block_dims = {r};
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const cplx overlap = inner(vectors[static_cast<std::size_t>(i)], vectors[static_cast<std::size_t>(j)]);
      prob.add_objective(0, i, j, norm * std::conj(overlap));
    }
  for (int i = 0; i < r; ++i)
    prob.constraints.push_back(ComplexSdp::Constraint{{ComplexSdp::Entry{0, i, i, 1.0}}, 1.0});
  return complex_to_real(prob);
}

SdpProblem build_kstar(const std::vector<HermitianMatrix>& states) {
  check_tuple(states);
  const int r = static_cast<int>(states.size());
  const int d = states.front().dim();
  const double norm = 1.0 / (static_cast<double>(r) * (r - 1));

  std::vector<HermitianMatrix> roots;
  roots.reserve(states.size());
  for (const auto& s : states) roots.push_back(sqrt_psd(s));

  ComplexSdp prob;
  prob.sense = SdpProblem::Sense::Max;
  prob.block_dims = {r * d};
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const ComplexMatrix theta =
          roots[static_cast<std::size_t>(i)].matrix() * roots[static_cast<std::size_t>(j)].matrix();
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) prob.add_objective(0, i * d + a, j * d + b, norm * theta(a, b));
    }
  ComplexMatrix eye = ComplexMatrix::identity(d);
  for (int i = 0; i < r; ++i) prob.pin_block(0, i * d, i * d, eye);
  return complex_to_real(prob);
}

SdpProblem build_geometric_multi_sdp(const std::vector<HermitianMatrix>& states) {
  check_tuple(states);
  const int r = static_cast<int>(states.size());
  const int d = states.front().dim();
  const double norm = 1.0 / (static_cast<double>(r) * (r - 1));

  ComplexSdp prob;
  prob.sense = SdpProblem::Sense::Max;
  prob.block_dims = {r * d};
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int a = 0; a < d; ++a) prob.add_objective(0, i * d + a, j * d + a, norm);
  for (int i = 0; i < r; ++i) prob.pin_block(0, i * d, i * d, states[static_cast<std::size_t>(i)].matrix());

  // force each off-diagonal block Hermitian: G_ij = G_ij^+
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      for (int a = 0; a < d; ++a) {
        // Im G_ij[a, a] = 0
        prob.constraints.push_back(ComplexSdp::Constraint{
            {ComplexSdp::Entry{0, i * d + a, j * d + a, cplx(0.0, 1.0)}}, 0.0});
        for (int b = a + 1; b < d; ++b) {
          // Re G_ij[a, b] = Re G_ij[b, a]
          prob.constraints.push_back(
              ComplexSdp::Constraint{{ComplexSdp::Entry{0, i * d + a, j * d + b, 1.0},
                                      ComplexSdp::Entry{0, i * d + b, j * d + a, -1.0}},
                                     0.0});
          // Im G_ij[a, b] = -Im G_ij[b, a]
          prob.constraints.push_back(
              ComplexSdp::Constraint{{ComplexSdp::Entry{0, i * d + a, j * d + b, cplx(0.0, 1.0)},
                                      ComplexSdp::Entry{0, i * d + b, j * d + a, cplx(0.0, 1.0)}},
                                     0.0});
        }
      }
    }
  return complex_to_real(prob);
}

}  // namespace multifid

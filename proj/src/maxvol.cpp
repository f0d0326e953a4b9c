#include "amglab/maxvol.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "amglab/dense_solve.hpp"
#include "amglab/rng.hpp"

namespace amglab {

namespace {

DenseMatrix gather_rows(const DenseMatrix& p, const std::vector<Index>& rows) {
  DenseMatrix block(rows.size(), p.cols());
  for (std::size_t j = 0; j < rows.size(); ++j) block.row(j) = p.row(rows[j]);
  return block;
}

}  // namespace

double coarse_block_cond(const DenseMatrix& p, const std::vector<Index>& c) {
  Eigen::JacobiSVD<DenseMatrix> svd(gather_rows(p, c));
  const double smin = svd.singularValues().minCoeff();
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return svd.singularValues().maxCoeff() / smin;
}

MaxvolState maxvol_init(const DenseMatrix& p, std::vector<Index> c_init) {
  const Index n = static_cast<Index>(p.rows());
  const Index nc = static_cast<Index>(p.cols());
  if (static_cast<Index>(c_init.size()) != nc)
    throw DimensionError("maxvol_init: need exactly nc rows");

  MaxvolState state;
  state.C = std::move(c_init);
  state.in_c.assign(n, 0);
  for (Index r : state.C) {
    if (r < 0 || r >= n) throw DimensionError("maxvol_init: row out of range");
    if (state.in_c[r]) throw DimensionError("maxvol_init: duplicate row");
    state.in_c[r] = 1;
  }

  const DenseMatrix block = gather_rows(p, state.C);
  LuSolver lu(block.transpose());  // throws SingularError when near-singular
  state.b = lu.solve_dense(p.transpose()).transpose();
  state.logdet = lu.log_abs_det();
  // exact identity on the selected rows
  for (Index j = 0; j < nc; ++j) {
    state.b.row(state.C[j]).setZero();
    state.b(state.C[j], j) = 1.0;
  }
  return state;
}

void rank_one_update(MaxvolState& state, Index i_new, Index j_col) {
  const double pivot = state.b(i_new, j_col);
  // a vanishing pivot would make the new block singular; the >1 growth
  // threshold is enforced by the selection loop
  if (std::abs(pivot) < 1e-14)
    throw SingularError("rank_one_update: pivot too small", std::abs(pivot));
  if (state.in_c[i_new])
    throw DimensionError("rank_one_update: row already in C");

  const Index i_old = state.C[j_col];
  // B <- B - B e_j (B_{i',.} - e_j^T) / pivot, which restores an identity
  // C block with row i_new owning column j_col
  Vector col = state.b.col(j_col);
  Vector row = state.b.row(i_new);
  row[j_col] -= 1.0;
  state.b.noalias() -= (col / pivot) * row.transpose();

  state.C[j_col] = i_new;
  state.in_c[i_old] = 0;
  state.in_c[i_new] = 1;
  state.b.row(i_new).setZero();
  state.b(i_new, j_col) = 1.0;
  state.logdet += std::log(std::abs(pivot));
  ++state.swaps;
}

MaxvolResult maxvol_select(const DenseMatrix& p, Index nc,
                           std::optional<std::vector<Index>> c_init,
                           int max_swaps, std::uint64_t seed, double pivot_tol) {
  const Index n = static_cast<Index>(p.rows());
  if (nc != static_cast<Index>(p.cols()))
    throw DimensionError("maxvol_select: nc must equal the column count of P");

  Rng rng = Rng(seed).split(0x6d61786bu);
  MaxvolResult result;
  MaxvolState state;
  bool ready = false;
  for (int attempt = 0; attempt < 20 && !ready; ++attempt) {
    std::vector<Index> candidate;
    if (attempt == 0 && c_init) {
      candidate = *c_init;
    } else {
      // uniform sample of nc distinct rows
      std::vector<Index> pool(n);
      for (Index i = 0; i < n; ++i) pool[i] = i;
      for (Index j = 0; j < nc; ++j) {
        const Index pick = static_cast<Index>(rng.uniform_int(j, n - 1));
        std::swap(pool[j], pool[pick]);
      }
      candidate.assign(pool.begin(), pool.begin() + nc);
      std::sort(candidate.begin(), candidate.end());
      ++result.stats.restarts;
    }
    try {
      state = maxvol_init(p, candidate);
      ready = true;
    } catch (const SingularError&) {
      if (attempt == 0 && c_init) c_init.reset();
    }
  }
  if (!ready)
    throw SingularError("maxvol_select: no invertible initial block found", 0.0);

  result.stats.logdet_initial = state.logdet;
  result.stats.cond_initial = coarse_block_cond(p, state.C);

  while (state.swaps < max_swaps) {
    // smallest (row, column) among the maximal-magnitude entries
    Index bi = -1, bj = -1;
    double best = pivot_tol;
    for (Index i = 0; i < n; ++i) {
      if (state.in_c[i]) continue;
      for (Index j = 0; j < nc; ++j) {
        const double mag = std::abs(state.b(i, j));
        if (mag > best) {
          best = mag;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) break;
    rank_one_update(state, bi, bj);
  }

  result.stats.swaps = state.swaps;
  result.stats.logdet_final = state.logdet;
  result.stats.max_entry_final = state.b.cwiseAbs().maxCoeff();
  result.stats.converged = result.stats.max_entry_final <= pivot_tol;
  result.C = state.C;
  std::sort(result.C.begin(), result.C.end());
  result.stats.cond_final = coarse_block_cond(p, result.C);
  return result;
}

}  // namespace amglab

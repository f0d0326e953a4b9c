#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "amglab/types.hpp"

namespace amglab {

/// State of the greedy maximal-volume search: the current coarse set (one row
/// per column), the scaled matrix B = P (P_C)^{-1} whose C block is the
/// identity, and the accumulated log |det(P_C)|.
struct MaxvolState {
  std::vector<Index> C;    // C[j] = row owning column j
  DenseMatrix b;           // n x nc, maintained by rank-one updates
  std::vector<char> in_c;  // row membership flags
  double logdet = 0.0;
  int swaps = 0;
};

struct MaxvolStats {
  int swaps = 0;
  int restarts = 0;
  bool converged = true;
  double logdet_initial = 0.0;
  double logdet_final = 0.0;
  double cond_initial = 0.0;
  double cond_final = 0.0;
  double max_entry_final = 0.0;
};

/// Initializes the state from a candidate coarse set; throws SingularError
/// when the selected block is singular to tolerance.
MaxvolState maxvol_init(const DenseMatrix& p, std::vector<Index> c_init);

/// Swap row i_new into column j_col; |det| changes by exactly the pivot
/// magnitude |b(i_new, j_col)|. The selection loop only requests pivots
/// above 1, which makes every swap grow the volume.
void rank_one_update(MaxvolState& state, Index i_new, Index j_col);

struct MaxvolResult {
  std::vector<Index> C;  // ascending
  MaxvolStats stats;
};

/// Greedy maximal-volume selection of nc rows of P. A missing or singular
/// initial set is retried with fresh random draws (up to 20). Ties on the
/// pivot magnitude break toward the smallest (row, column).
MaxvolResult maxvol_select(const DenseMatrix& p, Index nc,
                           std::optional<std::vector<Index>> c_init,
                           int max_swaps, std::uint64_t seed,
                           double pivot_tol = 1.0 + 1e-12);

/// Condition number of the rows-of-P block via dense SVD.
double coarse_block_cond(const DenseMatrix& p, const std::vector<Index>& c);

}  // namespace amglab

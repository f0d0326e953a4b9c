#pragma once

#include <utility>
#include <vector>

#include "amglab/types.hpp"

namespace amglab {

/// Structured N x N cell grid, lexicographic with i fastest:
/// p = (j-1)*N + i for 1-based (i, j). Code uses 0-based indices.
struct Grid {
  Index N = 0;

  Grid() = default;
  explicit Grid(Index n) : N(n) {}

  Index size() const { return N * N; }
  double h() const { return 1.0 / (N + 1); }
  Index index(Index i, Index j) const { return j * N + i; }
  std::pair<Index, Index> coords(Index p) const { return {p % N, p / N}; }
};

/// Ordered F/C partition with the permutation that places F first, then C.
struct Splitting {
  Index n = 0;
  std::vector<Index> C;         // ascending fine indices
  std::vector<Index> F;         // complement, ascending
  std::vector<Index> perm;      // perm[new] = old (F block first, then C block)
  std::vector<Index> inv_perm;  // old -> new
  std::vector<Index> coarse_of;  // old -> coarse id, -1 for F points
  std::vector<Index> fine_of;    // old -> F-local id, -1 for C points

  Index nc() const { return static_cast<Index>(C.size()); }
  Index nf() const { return static_cast<Index>(F.size()); }
  bool is_coarse(Index p) const { return coarse_of[p] >= 0; }

  Vector permute(const Vector& v) const;    // reorder to F-first layout
  Vector unpermute(const Vector& v) const;  // inverse reorder
  Vector restrict_c(const Vector& v) const;
  Vector restrict_f(const Vector& v) const;
};

Splitting make_splitting(Index n, std::vector<Index> coarse);

/// Per-fine-row interpolatory sets (coarse ids). C rows hold exactly their
/// own coarse id.
struct CoarsePattern {
  std::vector<std::vector<Index>> rows;
};

/// Standard h -> 2h coarsening: C-points are the cells with both 1-based
/// indices even. The pattern interpolates an F-point from its two axial or
/// four diagonal C-neighbours, whichever exist.
std::pair<Splitting, CoarsePattern> full_coarsening(const Grid& g);

/// One checkerboard colour as C ((i+j) even, 1-based). The 5-point stencil
/// then has no F-F couplings.
Splitting red_black_coarsening(const Grid& g);

/// Contiguous b x b cell blocks with a red/black colouring of the block grid.
/// Red blocks come first in `order`.
struct BlockPartition {
  Index b = 0;
  Index blocks_per_dim = 0;
  std::vector<std::vector<Index>> blocks;  // block id -> cell indices
  std::vector<Index> order;                // processing order (red, then black)
  std::vector<Index> block_of;             // cell -> block id
  std::vector<int> color;                  // block id -> 0 red, 1 black
};

BlockPartition block_partition(const Grid& g, Index b);

}  // namespace amglab

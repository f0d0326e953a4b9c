#include "amglab/grid.hpp"

#include <algorithm>

namespace amglab {

Vector Splitting::permute(const Vector& v) const {
  Vector out(n);
  for (Index p = 0; p < n; ++p) out[p] = v[perm[p]];
  return out;
}

Vector Splitting::unpermute(const Vector& v) const {
  Vector out(n);
  for (Index p = 0; p < n; ++p) out[perm[p]] = v[p];
  return out;
}

Vector Splitting::restrict_c(const Vector& v) const {
  Vector out(nc());
  for (Index j = 0; j < nc(); ++j) out[j] = v[C[j]];
  return out;
}

Vector Splitting::restrict_f(const Vector& v) const {
  Vector out(nf());
  for (Index j = 0; j < nf(); ++j) out[j] = v[F[j]];
  return out;
}

Splitting make_splitting(Index n, std::vector<Index> coarse) {
  std::sort(coarse.begin(), coarse.end());
  Splitting s;
  s.n = n;
  s.C = std::move(coarse);
  s.coarse_of.assign(n, -1);
  s.fine_of.assign(n, -1);
  for (Index j = 0; j < static_cast<Index>(s.C.size()); ++j) {
    const Index p = s.C[j];
    if (p < 0 || p >= n) throw DimensionError("make_splitting: index out of range");
    if (s.coarse_of[p] >= 0) throw DimensionError("make_splitting: duplicate coarse index");
    s.coarse_of[p] = j;
  }
  s.F.reserve(n - s.C.size());
  for (Index p = 0; p < n; ++p) {
    if (s.coarse_of[p] < 0) {
      s.fine_of[p] = static_cast<Index>(s.F.size());
      s.F.push_back(p);
    }
  }
  s.perm.reserve(n);
  s.perm.insert(s.perm.end(), s.F.begin(), s.F.end());
  s.perm.insert(s.perm.end(), s.C.begin(), s.C.end());
  s.inv_perm.assign(n, 0);
  for (Index q = 0; q < n; ++q) s.inv_perm[s.perm[q]] = q;
  return s;
}

std::pair<Splitting, CoarsePattern> full_coarsening(const Grid& g) {
  const Index N = g.N;
  std::vector<Index> coarse;
  // 1-based (i, j) both even
  for (Index j = 1; j < N; j += 2)
    for (Index i = 1; i < N; i += 2) coarse.push_back(g.index(i, j));
  Splitting split = make_splitting(g.size(), std::move(coarse));

  CoarsePattern pattern;
  pattern.rows.resize(g.size());
  auto push_if_coarse = [&](std::vector<Index>& row, Index i, Index j) {
    if (i < 0 || i >= N || j < 0 || j >= N) return;
    const Index c = split.coarse_of[g.index(i, j)];
    if (c >= 0) row.push_back(c);
  };
  for (Index j = 0; j < N; ++j) {
    for (Index i = 0; i < N; ++i) {
      const Index p = g.index(i, j);
      auto& row = pattern.rows[p];
      if (split.is_coarse(p)) {
        row.push_back(split.coarse_of[p]);
        continue;
      }
      const bool i_odd = (i % 2 == 0);  // 1-based odd
      const bool j_odd = (j % 2 == 0);
      if (i_odd && !j_odd) {  // two horizontal C-neighbours
        push_if_coarse(row, i - 1, j);
        push_if_coarse(row, i + 1, j);
      } else if (!i_odd && j_odd) {  // two vertical C-neighbours
        push_if_coarse(row, i, j - 1);
        push_if_coarse(row, i, j + 1);
      } else {  // both odd: four diagonal C-neighbours
        push_if_coarse(row, i - 1, j - 1);
        push_if_coarse(row, i + 1, j - 1);
        push_if_coarse(row, i - 1, j + 1);
        push_if_coarse(row, i + 1, j + 1);
      }
      std::sort(row.begin(), row.end());
    }
  }
  return {std::move(split), std::move(pattern)};
}

Splitting red_black_coarsening(const Grid& g) {
  std::vector<Index> coarse;
  for (Index j = 0; j < g.N; ++j)
    for (Index i = 0; i < g.N; ++i)
      if ((i + j) % 2 == 0) coarse.push_back(g.index(i, j));  // (i+j) even, 1-based
  return make_splitting(g.size(), std::move(coarse));
}

BlockPartition block_partition(const Grid& g, Index b) {
  if (b <= 0 || g.N % b != 0)
    throw DimensionError("block_partition: block size must divide N");
  BlockPartition part;
  part.b = b;
  part.blocks_per_dim = g.N / b;
  const Index nb = part.blocks_per_dim;
  part.blocks.resize(nb * nb);
  part.block_of.assign(g.size(), -1);
  part.color.resize(nb * nb);
  for (Index bj = 0; bj < nb; ++bj) {
    for (Index bi = 0; bi < nb; ++bi) {
      const Index blk = bj * nb + bi;
      part.color[blk] = static_cast<int>((bi + bj) % 2);  // 0 = red
      auto& cells = part.blocks[blk];
      cells.reserve(b * b);
      for (Index j = bj * b; j < (bj + 1) * b; ++j)
        for (Index i = bi * b; i < (bi + 1) * b; ++i) {
          const Index p = g.index(i, j);
          cells.push_back(p);
          part.block_of[p] = blk;
        }
    }
  }
  for (int c = 0; c < 2; ++c)
    for (Index blk = 0; blk < nb * nb; ++blk)
      if (part.color[blk] == c) part.order.push_back(blk);
  return part;
}

}  // namespace amglab

#include "amglab/fv.hpp"

namespace amglab {

namespace {

double harmonic(double a1, double a2) { return 2.0 * a1 * a2 / (a1 + a2); }

}  // namespace

SparseMatrix assemble_fv(const CoefficientField& field) {
  const Index N = field.N;
  for (double v : field.a)
    if (!(v > 0.0)) throw DimensionError("assemble_fv: nonpositive coefficient");

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(5) * N * N);
  Grid grid(N);
  for (Index j = 0; j < N; ++j) {
    for (Index i = 0; i < N; ++i) {
      const Index p = grid.index(i, j);
      const double ac = field.at(i, j);
      double diag = 0.0;
      auto face = [&](Index ni, Index nj) {
        if (ni < 0 || ni >= N || nj < 0 || nj >= N) {
          diag += 2.0 * ac;  // Dirichlet face at half-cell distance
          return;
        }
        const double w = harmonic(ac, field.at(ni, nj));
        diag += w;
        entries.push_back({p, grid.index(ni, nj), -w});
      };
      face(i + 1, j);  // east
      face(i - 1, j);  // west
      face(i, j + 1);  // north
      face(i, j - 1);  // south
      entries.push_back({p, p, diag});
    }
  }
  return SparseMatrix::from_triplets(N * N, N * N, entries);
}

}  // namespace amglab

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "amglab/analysis.hpp"
#include "amglab/interp.hpp"

namespace amglab {

enum class CycleShape { v, w };
enum class PencilX { identity, msymm };

struct BamgConfig {
  CycleShape cycle = CycleShape::w;
  int m = 2;           // setup iterations
  int k_r = 8;         // relaxed test vectors
  int k_e = 8;         // eigensolver test vectors
  int nu_pre = 4;      // forward sweeps per relaxation pass
  int nu_post = 4;     // backward sweeps per relaxation pass
  PencilX x = PencilX::msymm;
  Index coarsest_n = 7;  // stop coarsening once the level grid is this small
  int mge_sweeps = 4;
  std::uint64_t seed = 1;
};

struct Level {
  Grid grid;
  SparseMatrix a;
  SparseMatrix x;  // Galerkin restriction of the finest pencil matrix
  Splitting split;
  CoarsePattern pattern;
  SparseMatrix p;  // interpolation to this level's coarse grid (unset on coarsest)
  std::shared_ptr<Smoother> fwd;
  std::shared_ptr<Smoother> bwd;
  std::vector<Vector> vr;       // relaxed test vectors
  std::vector<Vector> ve;       // eigenvector approximations
  std::vector<double> lambda;   // per-ve Rayleigh quotient estimates
};

struct Hierarchy {
  std::vector<Level> levels;  // finest first
  BamgConfig config;

  Index num_levels() const { return static_cast<Index>(levels.size()); }
};

/// Bootstrap multilevel setup: relaxed test vectors on the homogeneous
/// systems, least-squares interpolation over the nearest-neighbour sparsity
/// of full coarsening, Galerkin coarse operators, and a multilevel
/// generalized eigensolver refreshing the eigenvector test vectors. The
/// W-cycle shape visits each coarser level twice per pass.
Hierarchy bootstrap_setup(const SparseMatrix& a, const Grid& grid,
                          const BamgConfig& config);

/// One multilevel eigensolver sweep: exact dense pairs on the coarsest level,
/// then level-by-level transfer with shifted-relaxation refinement and
/// Rayleigh-quotient updates.
void mge_sweep(Hierarchy& h);

/// Least-squares weight of one test vector: ||v||_X / ||v||_A.
double ls_weight(const Vector& v, const SparseMatrix& a, const SparseMatrix& x);

/// Asymptotic V(1,1)-cycle error reduction on A u = 0 from a random start:
/// geometric mean of the last five per-cycle A-norm ratios.
RateReport solve_rate(const Hierarchy& h, int n_cycles = 20,
                      std::uint64_t seed = 1);

/// Per-level summary rows (level, n, nnz, tv residual) for reporting.
DenseMatrix hierarchy_summary(const Hierarchy& h);

}  // namespace amglab

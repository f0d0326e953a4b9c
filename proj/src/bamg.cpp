#include "amglab/bamg.hpp"

#include <cmath>

#include "amglab/rng.hpp"

namespace amglab {

namespace {

Vector random_vector(Index n, Rng& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  return v;
}

double rayleigh(const Level& lvl, const Vector& v) {
  const double num = v.dot(lvl.a * v);
  const double den = v.dot(lvl.x * v);
  return den > 0 ? num / den : 0.0;
}

Level make_level(const Grid& grid, SparseMatrix a, SparseMatrix x) {
  Level lvl;
  lvl.grid = grid;
  lvl.a = std::move(a);
  lvl.x = std::move(x);
  auto [split, pattern] = full_coarsening(grid);
  lvl.split = std::move(split);
  lvl.pattern = std::move(pattern);
  lvl.fwd = std::make_shared<Smoother>(lvl.a, SmootherSpec{SmootherKind::gs_forward});
  lvl.bwd = std::make_shared<Smoother>(lvl.a, SmootherSpec{SmootherKind::gs_backward});
  return lvl;
}

void relax_test_vectors(Level& lvl, const BamgConfig& cfg) {
  for (Vector& v : lvl.vr) {
    v = lvl.fwd->presmooth(v, cfg.nu_pre);
    v = lvl.bwd->postsmooth(v, cfg.nu_post);
    const double nrm = v.norm();
    if (nrm > 0) v /= nrm;
  }
  for (std::size_t t = 0; t < lvl.ve.size(); ++t) {
    Vector& v = lvl.ve[t];
    double lambda = lvl.lambda[t];
    for (int s = 0; s < cfg.mge_sweeps; ++s) {
      v -= lvl.fwd->apply_minv(Vector(lvl.a * v - lambda * (lvl.x * v)));
      const double xn = std::sqrt(std::max(v.dot(lvl.x * v), 0.0));
      if (xn > 0) v /= xn;
      lambda = rayleigh(lvl, v);
    }
    lvl.lambda[t] = lambda;
  }
}

SparseMatrix build_ls_interp(const Level& lvl, const BamgConfig& cfg) {
  std::vector<Vector> tvs;
  tvs.reserve(lvl.vr.size() + lvl.ve.size());
  tvs.insert(tvs.end(), lvl.vr.begin(), lvl.vr.end());
  tvs.insert(tvs.end(), lvl.ve.begin(), lvl.ve.end());
  Vector weights(tvs.size());
  for (std::size_t t = 0; t < tvs.size(); ++t)
    weights[t] = ls_weight(tvs[t], lvl.a, lvl.x);
  (void)cfg;
  return ls_interp(tvs, weights, lvl.pattern, lvl.split).sparse_data();
}

void mge_coarsest(Level& lvl, const BamgConfig& cfg) {
  const Index n = lvl.a.rows();
  const Index k = std::min<Index>(cfg.k_e, n);
  const EigenPairs pairs = gen_eig_sym_dense(lvl.a.to_dense(), lvl.x.to_dense());
  lvl.ve.clear();
  lvl.lambda.clear();
  for (Index j = 0; j < k; ++j) {
    lvl.ve.push_back(pairs.vectors.col(j));
    lvl.lambda.push_back(pairs.values[j]);
  }
}

void mge_lift(Level& fine, const Level& coarse, const BamgConfig& cfg) {
  fine.ve.clear();
  fine.lambda.clear();
  for (std::size_t t = 0; t < coarse.ve.size(); ++t) {
    Vector v = fine.p * coarse.ve[t];
    double lambda = coarse.lambda[t];
    for (int s = 0; s < cfg.mge_sweeps; ++s) {
      v -= fine.fwd->apply_minv(Vector(fine.a * v - lambda * (fine.x * v)));
      const double xn = std::sqrt(std::max(v.dot(fine.x * v), 0.0));
      if (xn > 0) v /= xn;
      const double num = v.dot(fine.a * v);
      const double den = v.dot(fine.x * v);
      lambda = den > 0 ? num / den : lambda;
    }
    fine.ve.push_back(std::move(v));
    fine.lambda.push_back(lambda);
  }
}

// Builds/refreshes level l+1 from level l, then recurses per cycle shape.
void setup_pass(Hierarchy& h, Index l) {
  const BamgConfig& cfg = h.config;
  Level& lvl = h.levels[l];
  relax_test_vectors(lvl, cfg);
  lvl.p = build_ls_interp(lvl, cfg);

  const Grid coarse_grid(lvl.grid.N / 2);
  SparseMatrix ac = galerkin(lvl.p, lvl.a);
  SparseMatrix xc = galerkin(lvl.p, lvl.x);
  if (static_cast<Index>(h.levels.size()) == l + 1) {
    h.levels.push_back(make_level(coarse_grid, std::move(ac), std::move(xc)));
  } else {
    Level& next = h.levels[l + 1];
    Level rebuilt = make_level(coarse_grid, std::move(ac), std::move(xc));
    rebuilt.vr = std::move(next.vr);
    rebuilt.ve = std::move(next.ve);
    rebuilt.lambda = std::move(next.lambda);
    next = std::move(rebuilt);
  }
  Level& next = h.levels[l + 1];

  // injected restriction of the finer relaxed vectors
  next.vr.clear();
  for (const Vector& v : lvl.vr) {
    Vector vc(lvl.split.nc());
    for (Index j = 0; j < lvl.split.nc(); ++j) vc[j] = v[lvl.split.C[j]];
    const double nrm = vc.norm();
    next.vr.push_back(nrm > 0 ? Vector(vc / nrm) : vc);
  }

  if (coarse_grid.N <= cfg.coarsest_n || coarse_grid.N / 2 < 2) {
    mge_coarsest(next, cfg);
  } else {
    setup_pass(h, l + 1);
    if (cfg.cycle == CycleShape::w) setup_pass(h, l + 1);
  }
  mge_lift(lvl, next, cfg);
}

}  // namespace

double ls_weight(const Vector& v, const SparseMatrix& a, const SparseMatrix& x) {
  const double na = std::sqrt(std::max(v.dot(a * v), 0.0));
  const double nx = std::sqrt(std::max(v.dot(x * v), 0.0));
  if (v.norm() == 0.0) throw DimensionError("ls_weight: zero test vector");
  if (na == 0.0) throw DimensionError("ls_weight: vector with vanishing A-norm");
  return nx / na;
}

Hierarchy bootstrap_setup(const SparseMatrix& a, const Grid& grid,
                          const BamgConfig& config) {
  Hierarchy h;
  h.config = config;

  SparseMatrix x0;
  if (config.x == PencilX::identity) {
    x0 = SparseMatrix::identity(a.rows());
  } else {
    // pencil pairing with the forward-pre / backward-post solve cycle
    const Smoother bwd(a, SmootherSpec{SmootherKind::gs_backward});
    x0 = bwd.msymm_sparse();
  }
  h.levels.push_back(make_level(grid, a, std::move(x0)));

  Rng rng = Rng(config.seed).split(0x76696e69u);
  Level& finest = h.levels[0];
  for (int t = 0; t < config.k_r; ++t) {
    Vector v = random_vector(a.rows(), rng);
    v /= v.norm();
    finest.vr.push_back(std::move(v));
  }

  if (grid.N <= config.coarsest_n) return h;  // nothing to coarsen
  for (int pass = 0; pass < config.m; ++pass) setup_pass(h, 0);
  return h;
}

void mge_sweep(Hierarchy& h) {
  const Index levels = h.num_levels();
  mge_coarsest(h.levels[levels - 1], h.config);
  for (Index l = levels - 1; l-- > 0;) mge_lift(h.levels[l], h.levels[l + 1], h.config);
}

RateReport solve_rate(const Hierarchy& h, int n_cycles, std::uint64_t seed) {
  RateReport report;
  report.method = "iteration_history";
  report.seed = seed;

  const Index levels = h.num_levels();
  const SpdSolver coarsest(h.levels[levels - 1].a.to_dense());

  std::function<Vector(Index, const Vector&, const Vector&)> vcycle =
      [&](Index l, const Vector& u0, const Vector& b) -> Vector {
    const Level& lvl = h.levels[l];
    if (l == levels - 1) return coarsest.solve(b);
    Vector u = u0 + lvl.fwd->apply_minv(Vector(b - lvl.a * u0));
    const Vector rc = lvl.p.transpose_times(Vector(b - lvl.a * u));
    const Vector ec = vcycle(l + 1, Vector::Zero(rc.size()), rc);
    u += lvl.p * ec;
    u += lvl.bwd->apply_minv_t(Vector(b - lvl.a * u));
    return u;
  };

  const SparseMatrix& a = h.levels[0].a;
  Rng rng = Rng(seed).split(0x736f6c76u);
  Vector u = random_vector(a.rows(), rng);
  const Vector zero = Vector::Zero(a.rows());
  double prev = std::sqrt(std::max(u.dot(a * u), 0.0));
  for (int c = 0; c < n_cycles; ++c) {
    u = vcycle(0, u, zero);
    const double cur = std::sqrt(std::max(u.dot(a * u), 0.0));
    report.history.push_back(prev > 0 ? cur / prev : 0.0);
    prev = cur;
    ++report.iterations;
    if (cur == 0.0) break;
  }

  const int tail = std::min<int>(5, static_cast<int>(report.history.size()));
  double acc = 1.0;
  for (int t = 0; t < tail; ++t)
    acc *= report.history[report.history.size() - 1 - t];
  report.estimate = tail > 0 ? std::pow(acc, 1.0 / tail) : 0.0;
  report.converged = report.estimate <= 1.05;
  return report;
}

DenseMatrix hierarchy_summary(const Hierarchy& h) {
  DenseMatrix rows(h.num_levels(), 5);
  for (Index l = 0; l < h.num_levels(); ++l) {
    const Level& lvl = h.levels[l];
    double resid = 0.0;
    for (const Vector& v : lvl.vr) resid = std::max(resid, (lvl.a * v).norm());
    rows(l, 0) = l;
    rows(l, 1) = lvl.a.rows();
    rows(l, 2) = lvl.a.nnz();
    rows(l, 3) = resid;
    rows(l, 4) = lvl.lambda.empty() ? 0.0 : lvl.lambda.front();
  }
  return rows;
}

}  // namespace amglab

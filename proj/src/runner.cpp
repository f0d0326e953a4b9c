#include "amglab/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>

#include "amglab/analysis.hpp"
#include "amglab/fv.hpp"
#include "amglab/io.hpp"
#include "amglab/maxvol.hpp"
#include "amglab/reference.hpp"

namespace amglab {

namespace {

struct BuiltProblem {
  CoefficientField field;
  SparseMatrix a;
  Splitting split;
  CoarsePattern pattern;
  std::shared_ptr<Smoother> smoother;         // pre half of the cycle
  std::shared_ptr<Smoother> pencil_smoother;  // transposed half, for (A, Mt)
  Index nc = 0;
};

BuiltProblem build_problem(const ExperimentConfig& c) {
  BuiltProblem built;
  built.field = build_coefficient(c.problem.pattern, c.problem.n, c.problem.k,
                                  c.problem.seed, c.problem.geometry);
  built.a = assemble_fv(built.field);
  const Grid grid(c.problem.n);
  if (c.coarsening == CoarseningKind::full) {
    auto [split, pattern] = full_coarsening(grid);
    built.split = std::move(split);
    built.pattern = std::move(pattern);
  } else {
    built.split = red_black_coarsening(grid);
  }
  SmootherSpec spec;
  spec.kind = c.smoother;
  spec.block_size = c.block_size;
  built.smoother = std::make_shared<Smoother>(built.a, spec);
  built.pencil_smoother = std::make_shared<Smoother>(built.a, transposed(spec));
  built.nc = c.nc > 0 ? c.nc : built.split.nc();
  return built;
}

std::vector<std::string> metadata_header(const ExperimentConfig& c) {
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(config_hash(c)));
  return {std::string("amglab v") + kVersion,
          std::string("config_hash=") + hash,
          "seed=" + std::to_string(c.problem.seed), canonical_config(c)};
}

void export_interp_columns(const std::string& path, const DenseMatrix& p,
                           Index n_per_dim, const std::vector<Index>& cols,
                           const std::vector<std::string>& header) {
  DenseMatrix out(p.rows(), 2 + cols.size());
  for (Index r = 0; r < static_cast<Index>(p.rows()); ++r) {
    out(r, 0) = r % n_per_dim;  // i
    out(r, 1) = r / n_per_dim;  // j
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, 2 + c) = p(r, cols[c]);
  }
  write_csv(path, out, header, "i,j,col_values...");
}

void run_in_pool(std::vector<std::function<void()>>& jobs, int threads) {
  if (threads <= 1) {
    for (auto& job : jobs) job();
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t at = next.fetch_add(1);
      if (at >= jobs.size()) return;
      jobs[at]();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<CellResult> run_methods(const ExperimentConfig& c) {
  namespace fs = std::filesystem;
  fs::create_directories(c.out_dir);
  const BuiltProblem built = build_problem(c);
  const auto header = metadata_header(c);

  std::vector<CellResult> rows;
  auto cell = [&](const std::string& method) {
    CellResult r;
    r.method = method;
    r.problem = to_string(c.problem.pattern);
    r.k = c.problem.k;
    r.n = c.problem.n;
    r.smoother = to_string(c.smoother);
    r.coarsening = c.coarsening == CoarseningKind::full ? "full" : "red_black";
    r.seed = c.problem.seed;
    return r;
  };

  for (const std::string& method : c.methods) {
    CellResult r = cell(method);
    if (method == "ideal") {
      TwoGridOperator op(built.a, ideal_interp(built.a, built.split),
                         built.smoother, built.smoother);
      const RateReport rate =
          rate_A_norm(op, c.rate_tol, c.rate_max_iter, c.problem.seed);
      r.estimate = rate.estimate;
      r.iterations = rate.iterations;
    } else if (method == "optimal") {
      OptimalInterp opt =
          optimal_interp(built.a, *built.pencil_smoother, built.nc);
      TwoGridOperator op(built.a, std::move(opt.p), built.smoother,
                         built.smoother);
      const RateReport rate =
          rate_A_norm(op, c.rate_tol, c.rate_max_iter, c.problem.seed);
      r.estimate = rate.estimate;
      r.iterations = rate.iterations;
    } else if (method == "kappa_sharp") {
      const auto [lambda, bound] =
          kappa_sharp(built.a, *built.pencil_smoother, built.nc);
      (void)lambda;
      r.estimate = bound;
      r.iterations = 1;
    } else if (method == "cr_frelax") {
      const RateReport rate =
          cr_frelax_rate(built.a, built.split,
                         SmootherSpec{SmootherKind::gs_symmetric}, c.cr_iters,
                         c.problem.seed);
      r.estimate = rate.estimate;
      r.iterations = rate.iterations;
    } else if (method == "cr_sharp") {
      const RateReport rate = cr_sharp_estimate(built.a, built.split,
                                                c.pcg_inner, c.cr_iters,
                                                c.problem.seed);
      r.estimate = rate.estimate;
      r.iterations = rate.iterations;
    } else if (method == "maxvol") {
      OptimalInterp opt =
          optimal_interp(built.a, *built.pencil_smoother, built.nc);
      const int max_swaps =
          c.maxvol_max_swaps > 0 ? c.maxvol_max_swaps : 20 * built.nc;
      const MaxvolResult sel = maxvol_select(opt.p.dense_data(), built.nc, {},
                                             max_swaps, c.problem.seed);
      r.estimate = sel.stats.cond_final;
      r.iterations = sel.stats.swaps;

      DenseMatrix cset(sel.C.size(), 3);
      const Grid grid(c.problem.n);
      for (std::size_t t = 0; t < sel.C.size(); ++t) {
        const auto [i, j] = grid.coords(sel.C[t]);
        cset(t, 0) = sel.C[t];
        cset(t, 1) = i;
        cset(t, 2) = j;
      }
      write_csv((fs::path(c.out_dir) / "maxvol_C.csv").string(), cset, header,
                "p,i,j");

      DenseMatrix stats(1, 7);
      stats << sel.stats.swaps, sel.stats.restarts, sel.stats.logdet_initial,
          sel.stats.logdet_final, sel.stats.cond_initial, sel.stats.cond_final,
          sel.stats.max_entry_final;
      write_csv((fs::path(c.out_dir) / "maxvol_stats.csv").string(), stats,
                header,
                "swaps,restarts,logdet_initial,logdet_final,cond_initial,"
                "cond_final,max_entry_final");

      const Splitting chosen = make_splitting(built.a.rows(), sel.C);
      const InterpMatrix classical = classical_scale(opt.p, chosen);
      const Index nc = built.nc;
      export_interp_columns(
          (fs::path(c.out_dir) / "interp_columns.csv").string(),
          classical.to_dense(), c.problem.n, {nc / 4, nc / 2, (3 * nc) / 4},
          header);
    } else if (method == "bamg") {
      BamgConfig bc = c.bamg;
      bc.seed = c.problem.seed;
      const Hierarchy h = bootstrap_setup(built.a, Grid(c.problem.n), bc);
      const RateReport rate = solve_rate(h, c.bamg_solve_cycles, c.problem.seed);
      r.estimate = rate.estimate;
      r.iterations = rate.iterations;
      write_csv((fs::path(c.out_dir) / "hierarchy.csv").string(),
                hierarchy_summary(h), header, "level,n,nnz,vr_residual,lambda1");
    } else if (method == "spectra") {
      const SpectraReport spectra =
          spectra_report(built.a, *built.pencil_smoother);
      DenseMatrix out(spectra.a_scaled.size(), 3);
      Index ne = 0;
      for (Index i = 0; i < static_cast<Index>(spectra.pencil.size()); ++i)
        if (std::abs(spectra.pencil[i] - 1.0) > 1e-6) ++ne;
      for (Index i = 0; i < static_cast<Index>(out.rows()); ++i) {
        out(i, 0) = i;
        out(i, 1) = spectra.a_scaled[i];
        out(i, 2) = spectra.pencil[i];
      }
      write_csv((fs::path(c.out_dir) / "spectra.csv").string(), out, header,
                "index,a_scaled,pencil");
      r.estimate = ne;
      r.iterations = 1;
    } else {
      throw DimensionError("unknown method '" + method + "'");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

void write_rates_csv(const std::string& path, const std::vector<CellResult>& rows,
                     const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& h : header) out << "# " << h << "\n";
  out << "problem,k,N,smoother,coarsening,method,estimate,iterations,seed\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.12g", r.estimate);
    out << r.problem << "," << r.k << "," << r.n << "," << r.smoother << ","
        << r.coarsening << "," << r.method << "," << buf << "," << r.iterations
        << "," << r.seed << "\n";
  }
}

}  // namespace

void run_experiment(const ExperimentConfig& c) {
  const auto rows = run_methods(c);
  write_rates_csv((std::filesystem::path(c.out_dir) / "rates.csv").string(),
                  rows, metadata_header(c));
}

void write_comparison_csv(const std::string& path,
                          const std::vector<Comparison>& rows,
                          const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& h : header) out << "# " << h << "\n";
  out << "block,problem,k,N,computed,reference,tol,pass,note\n";
  char a[64], b[64];
  for (const auto& r : rows) {
    std::snprintf(a, sizeof(a), "%.6g", r.computed);
    std::snprintf(b, sizeof(b), "%.6g", r.reference);
    out << r.block << "," << r.problem << "," << r.k << "," << r.n << "," << a
        << "," << b << "," << r.tol << "," << (r.pass ? 1 : 0) << "," << r.note
        << "\n";
  }
}

namespace {

bool randomized(Pattern p) { return p == Pattern::p3 || p == Pattern::p4; }

double table1_tol(const std::string& block, const std::string& problem, int k,
                  double ref) {
  const bool p4 = problem == "P4";
  const bool p34 = problem == "P3" || p4;
  if (block == "ideal") return p4 ? .05 : .015;
  if (block == "sharp_cr") return p4 ? .05 : .03;
  if (block == "frelax_cr") {
    if (p34) return .06;
    if (k == 1) return .015;
    if (k == 2) return .01;
    if (k == 4) return .002;
    return 1e-4;
  }
  if (block == "optimal") {
    if (p34) return .05;
    return ref < 1e-3 ? 1e-3 : .01;
  }
  return .05;
}

ExperimentConfig table_config(Pattern pattern, Index n, int k,
                              std::uint64_t seed) {
  ExperimentConfig c;
  c.problem.pattern = pattern;
  c.problem.n = n;
  c.problem.k = k;
  c.problem.seed = seed;
  return c;
}

double averaged_cell(const std::string& method, Pattern pattern, Index n, int k,
                     int seeds) {
  const int reps = randomized(pattern) ? seeds : 1;
  double acc = 0.0;
  for (int s = 1; s <= reps; ++s) {
    ExperimentConfig c = table_config(pattern, n, k, s);
    c.methods = {method};
    c.out_dir = std::filesystem::temp_directory_path().string();
    acc += run_methods(c).front().estimate;
  }
  return acc / reps;
}

std::vector<Comparison> reproduce_table1(const ReproduceOptions& opt) {
  const std::array<Index, 4> sizes = {16, 32, 64, 128};
  const std::array<int, 4> ks = {1, 2, 4, 8};
  const std::array<Pattern, 4> problems = {Pattern::p1, Pattern::p2, Pattern::p3,
                                           Pattern::p4};
  const std::array<std::pair<const char*, const char*>, 4> blocks = {{
      {"ideal", "ideal"},
      {"sharp_cr", "cr_sharp"},
      {"frelax_cr", "cr_frelax"},
      {"optimal", "optimal"},
  }};

  std::vector<Comparison> rows;
  std::vector<std::function<void()>> jobs;
  for (const auto& [block, method] : blocks)
    for (Index n : sizes) {
      if (n > opt.size_cap) continue;
      for (int k : ks)
        for (Pattern p : problems) {
          Comparison c;
          c.block = block;
          c.problem = to_string(p);
          c.k = k;
          c.n = n;
          c.reference = reference_rate(block, c.problem, k, n);
          c.tol = table1_tol(block, c.problem, k, c.reference);
          rows.push_back(c);
        }
    }
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    jobs.push_back([&rows, idx, &opt, &blocks]() {
      Comparison& c = rows[idx];
      const char* method = nullptr;
      for (const auto& [b, m] : blocks)
        if (c.block == b) method = m;
      c.computed = averaged_cell(method, pattern_from_string(c.problem), c.n,
                                 c.k, opt.seeds);
      c.pass = std::abs(c.computed - c.reference) <= c.tol;
    });
  }
  run_in_pool(jobs, opt.threads);
  return rows;
}

std::vector<Comparison> reproduce_table2(const ReproduceOptions& opt) {
  const std::array<Index, 4> sizes = {17, 33, 65, 129};
  const std::array<int, 4> ks = {1, 2, 4, 8};

  struct Slot {
    Index n;
    int k;
    PencilX x;
    double value = 0.0;
  };
  std::vector<Slot> slots;
  for (Index n : sizes) {
    if (n > opt.size_cap) continue;
    for (int k : ks)
      for (PencilX x : {PencilX::msymm, PencilX::identity})
        slots.push_back({n, k, x});
  }

  std::vector<std::function<void()>> jobs;
  for (std::size_t idx = 0; idx < slots.size(); ++idx) {
    jobs.push_back([&slots, idx, &opt]() {
      Slot& s = slots[idx];
      double acc = 0.0;
      for (int seed = 1; seed <= opt.seeds; ++seed) {
        ExperimentConfig c = table_config(Pattern::p4, s.n, s.k, seed);
        c.methods = {"bamg"};
        c.bamg.x = s.x;
        c.out_dir = std::filesystem::temp_directory_path().string();
        acc += run_methods(c).front().estimate;
      }
      s.value = acc / opt.seeds;
    });
  }
  run_in_pool(jobs, opt.threads);

  auto lookup = [&](Index n, int k, PencilX x) {
    for (const Slot& s : slots)
      if (s.n == n && s.k == k && s.x == x) return s.value;
    throw std::out_of_range("table2 slot missing");
  };

  std::vector<Comparison> rows;
  for (const Slot& s : slots) {
    Comparison c;
    c.block = s.x == PencilX::msymm ? "bamg_msymm" : "bamg_identity";
    c.problem = "P4";
    c.k = s.k;
    c.n = s.n;
    c.computed = s.value;
    c.reference = reference_rate(c.block, "P4", s.k, s.n);
    if (s.x == PencilX::msymm) {
      c.tol = .08;
      c.pass = std::abs(c.computed - c.reference) <= c.tol;
    } else {
      c.tol = 1.0;  // informational: the published point of comparison
      c.pass = true;
      c.note = "informational";
    }
    rows.push_back(c);
  }
  // pencil ordering at the larger sizes
  for (Index n : sizes) {
    if (n > opt.size_cap || n < 65) continue;
    for (int k : {4, 8}) {
      Comparison c;
      c.block = "ordering";
      c.problem = "P4";
      c.k = k;
      c.n = n;
      c.computed = lookup(n, k, PencilX::msymm);
      c.reference = lookup(n, k, PencilX::identity);
      c.tol = 0.0;
      c.pass = c.computed <= c.reference;
      c.note = "rate(msymm)<=rate(identity)";
      rows.push_back(c);
    }
  }
  return rows;
}

std::vector<Comparison> reproduce_maxvol_fig(const std::string& id,
                                             const ReproduceOptions& opt) {
  ExperimentConfig c;
  double bound = 3.0;
  if (id == "fig2") {
    c = table_config(Pattern::p1, 35, 4, 1);
  } else if (id == "fig3") {
    c = table_config(Pattern::p2, 35, 4, 1);
  } else {
    c = table_config(Pattern::p4, 35, 4, 1);
    c.problem.geometry.cell_size = 5;  // subdomains matching the 5x5 blocks
    c.smoother = SmootherKind::block_gs_redblack;
    c.block_size = 5;
    c.nc = 144;
    bound = 60.0;
  }
  if (c.problem.n > opt.size_cap)
    throw DimensionError("size cap below the published 35x35 experiment");
  if (id != "fig4") c.nc = 289;
  c.methods = {"maxvol"};
  c.out_dir = opt.out_dir;
  const auto results = run_methods(c);

  const RefMaxvol* ref = nullptr;
  for (const auto& m : reference_maxvol())
    if (to_string(c.problem.pattern) == m.problem) ref = &m;

  std::vector<Comparison> rows;
  Comparison cond;
  cond.block = id + "_cond";
  cond.problem = to_string(c.problem.pattern);
  cond.k = c.problem.k;
  cond.n = c.problem.n;
  cond.computed = results.front().estimate;
  cond.reference = ref ? ref->cond : 0.0;
  cond.tol = bound;
  cond.pass = cond.computed <= bound;
  cond.note = "kappa(P_c)<=" + std::to_string(bound);
  rows.push_back(cond);
  return rows;
}

std::vector<Comparison> reproduce_fig5(const ReproduceOptions& opt) {
  if (opt.size_cap < 35)
    throw DimensionError("size cap below the published 35x35 experiment");
  namespace fs = std::filesystem;
  std::vector<Comparison> rows;

  struct Setup {
    Pattern pattern;
    SmootherKind smoother;
    const char* name;
  };
  const std::array<Setup, 3> setups = {{
      {Pattern::p1, SmootherKind::gs_forward, "p1_gs"},
      {Pattern::p2, SmootherKind::gs_forward, "p2_gs"},
      {Pattern::p4, SmootherKind::block_gs_redblack, "p4_rbb"},
  }};
  for (const auto& setup : setups) {
    ExperimentConfig c = table_config(setup.pattern, 35, 4, 1);
    c.smoother = setup.smoother;
    c.block_size = 5;
    if (setup.pattern == Pattern::p4) c.problem.geometry.cell_size = 5;
    c.methods = {"spectra"};
    c.out_dir = (fs::path(opt.out_dir) / setup.name).string();
    const auto results = run_methods(c);
    if (setup.pattern == Pattern::p4) {
      Comparison cmp;
      cmp.block = "fig5_pencil_ones";
      cmp.problem = "P4";
      cmp.k = 4;
      cmp.n = 35;
      cmp.computed = results.front().estimate;  // eigenvalues differing from 1
      cmp.reference = 35.0 * 35.0 / 4.0;
      cmp.tol = 0.0;
      cmp.pass = cmp.computed < cmp.reference;
      cmp.note = "count(|lambda-1|>1e-6)<n/4";
      rows.push_back(cmp);
    }
  }
  return rows;
}

}  // namespace

std::vector<Comparison> reproduce(const std::string& table_id,
                                  const ReproduceOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  std::vector<Comparison> rows;
  if (table_id == "table1") {
    rows = reproduce_table1(options);
  } else if (table_id == "table2") {
    rows = reproduce_table2(options);
  } else if (table_id == "fig2" || table_id == "fig3" || table_id == "fig4") {
    rows = reproduce_maxvol_fig(table_id, options);
  } else if (table_id == "fig5") {
    rows = reproduce_fig5(options);
  } else {
    throw DimensionError("unknown reproduction id '" + table_id + "'");
  }
  write_comparison_csv(
      (std::filesystem::path(options.out_dir) / (table_id + "_comparison.csv"))
          .string(),
      rows,
      {std::string("amglab v") + kVersion, "reproduction=" + table_id,
       "size_cap=" + std::to_string(options.size_cap),
       "seeds=" + std::to_string(options.seeds)});
  return rows;
}

}  // namespace amglab

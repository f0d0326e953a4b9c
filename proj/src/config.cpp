#include "amglab/config.hpp"

#include <fstream>
#include <sstream>

#include "amglab/rng.hpp"
#include "json.hpp"

namespace amglab {

namespace {

using nlohmann::json;

JumpGeometry parse_geometry(const json& j) {
  JumpGeometry g;
  g.cell_size = j.value("cell_size", g.cell_size);
  g.lattice = j.value("lattice", g.lattice);
  g.dark_parity = j.value("dark_parity", g.dark_parity);
  g.stripe_margin = j.value("stripe_margin", g.stripe_margin);
  g.bars_per_row = j.value("bars_per_row", g.bars_per_row);
  const std::string gran = j.value(
      "granularity", std::string(g.granularity == DrawGranularity::per_cell
                                     ? "per_cell"
                                     : "per_subdomain"));
  if (gran == "per_cell") {
    g.granularity = DrawGranularity::per_cell;
  } else if (gran == "per_subdomain") {
    g.granularity = DrawGranularity::per_subdomain;
  } else {
    throw DimensionError("config: unknown granularity '" + gran + "'");
  }
  g.exponents_include_zero = j.value("exponents_include_zero", g.exponents_include_zero);
  return g;
}

ExperimentConfig parse_json(const json& j) {
  ExperimentConfig c;
  if (j.contains("problem")) {
    const json& p = j.at("problem");
    c.problem.pattern = pattern_from_string(p.value("pattern", std::string("constant")));
    c.problem.n = p.value("N", c.problem.n);
    c.problem.k = p.value("k", c.problem.k);
    c.problem.seed = p.value("seed", c.problem.seed);
    if (p.contains("geometry")) c.problem.geometry = parse_geometry(p.at("geometry"));
  }
  if (j.contains("smoother")) {
    const json& s = j.at("smoother");
    c.smoother = smoother_kind_from_string(s.value("kind", std::string("gs_forward")));
    c.block_size = s.value("block_size", c.block_size);
  }
  const std::string coarsening = j.value("coarsening", std::string("full"));
  if (coarsening == "full") {
    c.coarsening = CoarseningKind::full;
  } else if (coarsening == "red_black") {
    c.coarsening = CoarseningKind::red_black;
  } else {
    throw DimensionError("config: unknown coarsening '" + coarsening + "'");
  }
  if (j.contains("methods"))
    c.methods = j.at("methods").get<std::vector<std::string>>();
  c.nc = j.value("nc", c.nc);
  c.cr_iters = j.value("cr_iters", c.cr_iters);
  c.pcg_inner = j.value("pcg_inner", c.pcg_inner);
  c.rate_tol = j.value("rate_tol", c.rate_tol);
  c.rate_max_iter = j.value("rate_max_iter", c.rate_max_iter);
  c.maxvol_max_swaps = j.value("maxvol_max_swaps", c.maxvol_max_swaps);
  c.bamg_solve_cycles = j.value("bamg_solve_cycles", c.bamg_solve_cycles);
  if (j.contains("bamg")) {
    const json& b = j.at("bamg");
    const std::string cycle = b.value("cycle", std::string("W"));
    if (cycle == "V" || cycle == "v") c.bamg.cycle = CycleShape::v;
    else if (cycle == "W" || cycle == "w") c.bamg.cycle = CycleShape::w;
    else throw DimensionError("config: unknown bamg cycle '" + cycle + "'");
    c.bamg.m = b.value("m", c.bamg.m);
    c.bamg.k_r = b.value("k_r", c.bamg.k_r);
    c.bamg.k_e = b.value("k_e", c.bamg.k_e);
    c.bamg.nu_pre = b.value("nu_pre", c.bamg.nu_pre);
    c.bamg.nu_post = b.value("nu_post", c.bamg.nu_post);
    c.bamg.mge_sweeps = b.value("mge_sweeps", c.bamg.mge_sweeps);
    c.bamg.coarsest_n = b.value("coarsest_N", c.bamg.coarsest_n);
    const std::string x = b.value("x", std::string("msymm"));
    if (x == "msymm") c.bamg.x = PencilX::msymm;
    else if (x == "identity" || x == "I") c.bamg.x = PencilX::identity;
    else throw DimensionError("config: unknown bamg pencil '" + x + "'");
  }
  c.bamg.seed = c.problem.seed;
  c.out_dir = j.value("out_dir", c.out_dir);
  return c;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DimensionError(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_json(j);
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DimensionError("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string canonical_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "pattern=" << to_string(c.problem.pattern) << ";N=" << c.problem.n
      << ";k=" << c.problem.k << ";seed=" << c.problem.seed
      << ";cell_size=" << c.problem.geometry.cell_size
      << ";lattice=" << c.problem.geometry.lattice
      << ";dark_parity=" << c.problem.geometry.dark_parity
      << ";stripe_margin=" << c.problem.geometry.stripe_margin
      << ";bars_per_row=" << c.problem.geometry.bars_per_row
      << ";granularity="
      << (c.problem.geometry.granularity == DrawGranularity::per_cell
              ? "per_cell"
              : "per_subdomain")
      << ";zero_exp=" << c.problem.geometry.exponents_include_zero
      << ";smoother=" << to_string(c.smoother) << ";block=" << c.block_size
      << ";coarsening="
      << (c.coarsening == CoarseningKind::full ? "full" : "red_black")
      << ";nc=" << c.nc << ";cr_iters=" << c.cr_iters
      << ";pcg_inner=" << c.pcg_inner << ";rate_tol=" << c.rate_tol
      << ";rate_max_iter=" << c.rate_max_iter
      << ";maxvol_max_swaps=" << c.maxvol_max_swaps
      << ";bamg_cycle=" << (c.bamg.cycle == CycleShape::w ? "W" : "V")
      << ";bamg_m=" << c.bamg.m << ";k_r=" << c.bamg.k_r << ";k_e=" << c.bamg.k_e
      << ";nu=" << c.bamg.nu_pre << "/" << c.bamg.nu_post
      << ";x=" << (c.bamg.x == PencilX::msymm ? "msymm" : "identity")
      << ";coarsest_N=" << c.bamg.coarsest_n
      << ";solve_cycles=" << c.bamg_solve_cycles << ";methods=";
  for (const auto& m : c.methods) out << m << ",";
  return out.str();
}

std::uint64_t config_hash(const ExperimentConfig& c) {
  const std::string s = canonical_config(c);
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace amglab

#include "amglab/reference.hpp"

#include <array>
#include <stdexcept>

namespace amglab {

namespace {

// Published two-grid and setup rates for the four jump problems.
constexpr std::array<RefCell, 288> kRates = {{
    // ideal interpolation, spectral radius
    {"ideal", "P1", 1, 16, .259},  {"ideal", "P2", 1, 16, .255},
    {"ideal", "P3", 1, 16, .300},  {"ideal", "P4", 1, 16, .397},
    {"ideal", "P1", 2, 16, .251},  {"ideal", "P2", 2, 16, .251},
    {"ideal", "P3", 2, 16, .297},  {"ideal", "P4", 2, 16, .535},
    {"ideal", "P1", 4, 16, .250},  {"ideal", "P2", 4, 16, .250},
    {"ideal", "P3", 4, 16, .298},  {"ideal", "P4", 4, 16, .577},
    {"ideal", "P1", 8, 16, .250},  {"ideal", "P2", 8, 16, .250},
    {"ideal", "P3", 8, 16, .294},  {"ideal", "P4", 8, 16, .679},
    {"ideal", "P1", 1, 32, .260},  {"ideal", "P2", 1, 32, .256},
    {"ideal", "P3", 1, 32, .302},  {"ideal", "P4", 1, 32, .445},
    {"ideal", "P1", 2, 32, .251},  {"ideal", "P2", 2, 32, .251},
    {"ideal", "P3", 2, 32, .301},  {"ideal", "P4", 2, 32, .649},
    {"ideal", "P1", 4, 32, .250},  {"ideal", "P2", 4, 32, .250},
    {"ideal", "P3", 4, 32, .293},  {"ideal", "P4", 4, 32, .791},
    {"ideal", "P1", 8, 32, .250},  {"ideal", "P2", 8, 32, .250},
    {"ideal", "P3", 8, 32, .285},  {"ideal", "P4", 8, 32, .887},
    {"ideal", "P1", 1, 64, .261},  {"ideal", "P2", 1, 64, .256},
    {"ideal", "P3", 1, 64, .303},  {"ideal", "P4", 1, 64, .473},
    {"ideal", "P1", 2, 64, .251},  {"ideal", "P2", 2, 64, .251},
    {"ideal", "P3", 2, 64, .301},  {"ideal", "P4", 2, 64, .714},
    {"ideal", "P1", 4, 64, .250},  {"ideal", "P2", 4, 64, .250},
    {"ideal", "P3", 4, 64, .294},  {"ideal", "P4", 4, 64, .879},
    {"ideal", "P1", 8, 64, .250},  {"ideal", "P2", 8, 64, .250},
    {"ideal", "P3", 8, 64, .292},  {"ideal", "P4", 8, 64, .991},
    {"ideal", "P1", 1, 128, .261}, {"ideal", "P2", 1, 128, .256},
    {"ideal", "P3", 1, 128, .305}, {"ideal", "P4", 1, 128, .471},
    {"ideal", "P1", 2, 128, .251}, {"ideal", "P2", 2, 128, .251},
    {"ideal", "P3", 2, 128, .301}, {"ideal", "P4", 2, 128, .729},
    {"ideal", "P1", 4, 128, .250}, {"ideal", "P2", 4, 128, .250},
    {"ideal", "P3", 4, 128, .298}, {"ideal", "P4", 4, 128, .924},
    {"ideal", "P1", 8, 128, .250}, {"ideal", "P2", 8, 128, .251},
    {"ideal", "P3", 8, 128, .294}, {"ideal", "P4", 8, 128, .997},

    // approximation of the ideal rate through the F/C block identity
    {"sharp_cr", "P1", 1, 16, .240},  {"sharp_cr", "P2", 1, 16, .235},
    {"sharp_cr", "P3", 1, 16, .249},  {"sharp_cr", "P4", 1, 16, .209},
    {"sharp_cr", "P1", 2, 16, .233},  {"sharp_cr", "P2", 2, 16, .231},
    {"sharp_cr", "P3", 2, 16, .244},  {"sharp_cr", "P4", 2, 16, .210},
    {"sharp_cr", "P1", 4, 16, .232},  {"sharp_cr", "P2", 4, 16, .231},
    {"sharp_cr", "P3", 4, 16, .239},  {"sharp_cr", "P4", 4, 16, .217},
    {"sharp_cr", "P1", 8, 16, .232},  {"sharp_cr", "P2", 8, 16, .231},
    {"sharp_cr", "P3", 8, 16, .231},  {"sharp_cr", "P4", 8, 16, .225},
    {"sharp_cr", "P1", 1, 32, .245},  {"sharp_cr", "P2", 1, 32, .243},
    {"sharp_cr", "P3", 1, 32, .253},  {"sharp_cr", "P4", 1, 32, .198},
    {"sharp_cr", "P1", 2, 32, .241},  {"sharp_cr", "P2", 2, 32, .241},
    {"sharp_cr", "P3", 2, 32, .250},  {"sharp_cr", "P4", 2, 32, .204},
    {"sharp_cr", "P1", 4, 32, .240},  {"sharp_cr", "P2", 4, 32, .241},
    {"sharp_cr", "P3", 4, 32, .247},  {"sharp_cr", "P4", 4, 32, .205},
    {"sharp_cr", "P1", 8, 32, .240},  {"sharp_cr", "P2", 8, 32, .241},
    {"sharp_cr", "P3", 8, 32, .239},  {"sharp_cr", "P4", 8, 32, .220},
    {"sharp_cr", "P1", 1, 64, .244},  {"sharp_cr", "P2", 1, 64, .242},
    {"sharp_cr", "P3", 1, 64, .252},  {"sharp_cr", "P4", 1, 64, .200},
    {"sharp_cr", "P1", 2, 64, .239},  {"sharp_cr", "P2", 2, 64, .239},
    {"sharp_cr", "P3", 2, 64, .250},  {"sharp_cr", "P4", 2, 64, .205},
    {"sharp_cr", "P1", 4, 64, .239},  {"sharp_cr", "P2", 4, 64, .239},
    {"sharp_cr", "P3", 4, 64, .247},  {"sharp_cr", "P4", 4, 64, .216},
    {"sharp_cr", "P1", 8, 64, .239},  {"sharp_cr", "P2", 8, 64, .239},
    {"sharp_cr", "P3", 8, 64, .237},  {"sharp_cr", "P4", 8, 64, .225},
    {"sharp_cr", "P1", 1, 128, .234}, {"sharp_cr", "P2", 1, 128, .237},
    {"sharp_cr", "P3", 1, 128, .220}, {"sharp_cr", "P4", 1, 128, .202},
    {"sharp_cr", "P1", 2, 128, .240}, {"sharp_cr", "P2", 2, 128, .240},
    {"sharp_cr", "P3", 2, 128, .231}, {"sharp_cr", "P4", 2, 128, .206},
    {"sharp_cr", "P1", 4, 128, .240}, {"sharp_cr", "P2", 4, 128, .240},
    {"sharp_cr", "P3", 4, 128, .236}, {"sharp_cr", "P4", 4, 128, .214},
    {"sharp_cr", "P1", 8, 128, .240}, {"sharp_cr", "P2", 8, 128, .240},
    {"sharp_cr", "P3", 8, 128, .238}, {"sharp_cr", "P4", 8, 128, .223},

    // F-relaxation compatible relaxation with symmetric Gauss-Seidel
    {"frelax_cr", "P1", 1, 16, .242},  {"frelax_cr", "P2", 1, 16, .176},
    {"frelax_cr", "P3", 1, 16, .512},  {"frelax_cr", "P4", 1, 16, .693},
    {"frelax_cr", "P1", 2, 16, .075},  {"frelax_cr", "P2", 2, 16, .052},
    {"frelax_cr", "P3", 2, 16, .493},  {"frelax_cr", "P4", 2, 16, .839},
    {"frelax_cr", "P1", 4, 16, .007},  {"frelax_cr", "P2", 4, 16, .005},
    {"frelax_cr", "P3", 4, 16, .499},  {"frelax_cr", "P4", 4, 16, .937},
    {"frelax_cr", "P1", 8, 16, 7e-5},  {"frelax_cr", "P2", 8, 16, 5e-5},
    {"frelax_cr", "P3", 8, 16, .500},  {"frelax_cr", "P4", 8, 16, .999},
    {"frelax_cr", "P1", 1, 32, .243},  {"frelax_cr", "P2", 1, 32, .177},
    {"frelax_cr", "P3", 1, 32, .524},  {"frelax_cr", "P4", 1, 32, .786},
    {"frelax_cr", "P1", 2, 32, .075},  {"frelax_cr", "P2", 2, 32, .052},
    {"frelax_cr", "P3", 2, 32, .520},  {"frelax_cr", "P4", 2, 32, .939},
    {"frelax_cr", "P1", 4, 32, .007},  {"frelax_cr", "P2", 4, 32, .005},
    {"frelax_cr", "P3", 4, 32, .516},  {"frelax_cr", "P4", 4, 32, .995},
    {"frelax_cr", "P1", 8, 32, 7e-5},  {"frelax_cr", "P2", 8, 32, 5e-5},
    {"frelax_cr", "P3", 8, 32, .512},  {"frelax_cr", "P4", 8, 32, 1.00},
    {"frelax_cr", "P1", 1, 64, .244},  {"frelax_cr", "P2", 1, 64, .177},
    {"frelax_cr", "P3", 1, 64, .530},  {"frelax_cr", "P4", 1, 64, .777},
    {"frelax_cr", "P1", 2, 64, .075},  {"frelax_cr", "P2", 2, 64, .052},
    {"frelax_cr", "P3", 2, 64, .527},  {"frelax_cr", "P4", 2, 64, .927},
    {"frelax_cr", "P1", 4, 64, .007},  {"frelax_cr", "P2", 4, 64, .005},
    {"frelax_cr", "P3", 4, 64, .522},  {"frelax_cr", "P4", 4, 64, .989},
    {"frelax_cr", "P1", 8, 64, 7e-5},  {"frelax_cr", "P2", 8, 64, 5e-5},
    {"frelax_cr", "P3", 8, 64, .515},  {"frelax_cr", "P4", 8, 64, 1.00},
    {"frelax_cr", "P1", 1, 128, .244}, {"frelax_cr", "P2", 1, 128, .178},
    {"frelax_cr", "P3", 1, 128, .533}, {"frelax_cr", "P4", 1, 128, .790},
    {"frelax_cr", "P1", 2, 128, .075}, {"frelax_cr", "P2", 2, 128, .052},
    {"frelax_cr", "P3", 2, 128, .526}, {"frelax_cr", "P4", 2, 128, .951},
    {"frelax_cr", "P1", 4, 128, .007}, {"frelax_cr", "P2", 4, 128, .005},
    {"frelax_cr", "P3", 4, 128, .523}, {"frelax_cr", "P4", 4, 128, .998},
    {"frelax_cr", "P1", 8, 128, 7e-5}, {"frelax_cr", "P2", 8, 128, 5e-5},
    {"frelax_cr", "P3", 8, 128, .517}, {"frelax_cr", "P4", 8, 128, 1.00},

    // optimal interpolation, spectral radius
    {"optimal", "P1", 1, 16, .041},   {"optimal", "P2", 1, 16, .024},
    {"optimal", "P3", 1, 16, .124},   {"optimal", "P4", 1, 16, .132},
    {"optimal", "P1", 2, 16, .005},   {"optimal", "P2", 2, 16, .002},
    {"optimal", "P3", 2, 16, .108},   {"optimal", "P4", 2, 16, .120},
    {"optimal", "P1", 4, 16, 5e-5},   {"optimal", "P2", 4, 16, 3e-5},
    {"optimal", "P3", 4, 16, .102},   {"optimal", "P4", 4, 16, .102},
    {"optimal", "P1", 8, 16, 5e-9},   {"optimal", "P2", 8, 16, 2.5e-9},
    {"optimal", "P3", 8, 16, .065},   {"optimal", "P4", 8, 16, .065},
    {"optimal", "P1", 1, 32, .042},   {"optimal", "P2", 1, 32, .024},
    {"optimal", "P3", 1, 32, .134},   {"optimal", "P4", 1, 32, .148},
    {"optimal", "P1", 2, 32, .005},   {"optimal", "P2", 2, 32, .002},
    {"optimal", "P3", 2, 32, .131},   {"optimal", "P4", 2, 32, .140},
    {"optimal", "P1", 4, 32, 5e-5},   {"optimal", "P2", 4, 32, 3e-5},
    {"optimal", "P3", 4, 32, .126},   {"optimal", "P4", 4, 32, .128},
    {"optimal", "P1", 8, 32, 5e-9},   {"optimal", "P2", 8, 32, 2.5e-9},
    {"optimal", "P3", 8, 32, .087},   {"optimal", "P4", 8, 32, .117},
    {"optimal", "P1", 1, 64, .042},   {"optimal", "P2", 1, 64, .024},
    {"optimal", "P3", 1, 64, .137},   {"optimal", "P4", 1, 64, .154},
    {"optimal", "P1", 2, 64, .005},   {"optimal", "P2", 2, 64, .002},
    {"optimal", "P3", 2, 64, .136},   {"optimal", "P4", 2, 64, .152},
    {"optimal", "P1", 4, 64, 5e-5},   {"optimal", "P2", 4, 64, 3e-5},
    {"optimal", "P3", 4, 64, .132},   {"optimal", "P4", 4, 64, .146},
    {"optimal", "P1", 8, 64, 5e-9},   {"optimal", "P2", 8, 64, 2.5e-9},
    {"optimal", "P3", 8, 64, .124},   {"optimal", "P4", 8, 64, .151},
    {"optimal", "P1", 1, 128, .042},  {"optimal", "P2", 1, 128, .024},
    {"optimal", "P3", 1, 128, .140},  {"optimal", "P4", 1, 128, .160},
    {"optimal", "P1", 2, 128, .005},  {"optimal", "P2", 2, 128, .002},
    {"optimal", "P3", 2, 128, .139},  {"optimal", "P4", 2, 128, .159},
    {"optimal", "P1", 4, 128, 5e-5},  {"optimal", "P2", 4, 128, 3e-5},
    {"optimal", "P3", 4, 128, .136},  {"optimal", "P4", 4, 128, .157},
    {"optimal", "P1", 8, 128, 5e-9},  {"optimal", "P2", 8, 128, 2.5e-9},
    {"optimal", "P3", 8, 128, .127},  {"optimal", "P4", 8, 128, .159},

    // multilevel bootstrap setup, P4, both pencil choices
    {"bamg_msymm", "P4", 1, 17, .276},     {"bamg_msymm", "P4", 2, 17, .377},
    {"bamg_msymm", "P4", 4, 17, .398},     {"bamg_msymm", "P4", 8, 17, .626},
    {"bamg_msymm", "P4", 1, 33, .260},     {"bamg_msymm", "P4", 2, 33, .256},
    {"bamg_msymm", "P4", 4, 33, .302},     {"bamg_msymm", "P4", 8, 33, .445},
    {"bamg_msymm", "P4", 1, 65, .261},     {"bamg_msymm", "P4", 2, 65, .256},
    {"bamg_msymm", "P4", 4, 65, .299},     {"bamg_msymm", "P4", 8, 65, .427},
    {"bamg_msymm", "P4", 1, 129, .261},    {"bamg_msymm", "P4", 2, 129, .256},
    {"bamg_msymm", "P4", 4, 129, .299},    {"bamg_msymm", "P4", 8, 129, .427},
    {"bamg_identity", "P4", 1, 17, .357},  {"bamg_identity", "P4", 2, 17, .592},
    {"bamg_identity", "P4", 4, 17, .405},  {"bamg_identity", "P4", 8, 17, .966},
    {"bamg_identity", "P4", 1, 33, .416},  {"bamg_identity", "P4", 2, 33, .591},
    {"bamg_identity", "P4", 4, 33, .302},  {"bamg_identity", "P4", 8, 33, .953},
    {"bamg_identity", "P4", 1, 65, .261},  {"bamg_identity", "P4", 2, 65, .256},
    {"bamg_identity", "P4", 4, 65, .303},  {"bamg_identity", "P4", 8, 65, .573},
    {"bamg_identity", "P4", 1, 129, .261}, {"bamg_identity", "P4", 2, 129, .256},
    {"bamg_identity", "P4", 4, 129, .305}, {"bamg_identity", "P4", 8, 129, .571},
}};

constexpr std::array<RefMaxvol, 3> kMaxvol = {{
    {"P1", "gs_forward", 4, 35, 289, 1.496},
    {"P2", "gs_forward", 4, 35, 289, 1.288},
    {"P4", "block_gs_redblack", 4, 35, 144, 20.529},
}};

}  // namespace

std::span<const RefCell> reference_rates() { return kRates; }

double reference_rate(const std::string& block, const std::string& problem,
                      int k, int n) {
  for (const auto& cell : kRates)
    if (block == cell.block && problem == cell.problem && k == cell.k &&
        n == cell.n)
      return cell.value;
  throw std::out_of_range("no reference value for " + block + "/" + problem +
                          "/k=" + std::to_string(k) + "/N=" + std::to_string(n));
}

std::span<const RefMaxvol> reference_maxvol() { return kMaxvol; }

}  // namespace amglab

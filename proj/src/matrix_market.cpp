#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "amglab/io.hpp"

namespace amglab {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

void write_matrix_market(const std::string& path, const SparseMatrix& a,
                         bool symmetric,
                         const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "%%MatrixMarket matrix coordinate real "
      << (symmetric ? "symmetric" : "general") << "\n";
  for (const auto& c : comments) out << "% " << c << "\n";

  Index nnz = 0;
  const auto& off = a.row_offsets();
  const auto& col = a.col_indices();
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = off[i]; k < off[i + 1]; ++k)
      if (!symmetric || col[k] <= i) ++nnz;

  out << a.rows() << " " << a.cols() << " " << nnz << "\n";
  char buf[64];
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index k = off[i]; k < off[i + 1]; ++k) {
      if (symmetric && col[k] > i) continue;
      std::snprintf(buf, sizeof(buf), "%.17g", a.values()[k]);
      out << (i + 1) << " " << (col[k] + 1) << " " << buf << "\n";
    }
  }
}

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);

  std::istringstream banner(lowercase(line));
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%matrixmarket" || object != "matrix" || format != "coordinate" ||
      field != "real")
    throw std::runtime_error("unsupported Matrix Market header: " + line);
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general")
    throw std::runtime_error("unsupported symmetry: " + symmetry);

  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  Index rows, cols;
  long long nnz;
  {
    std::istringstream sizes(line);
    if (!(sizes >> rows >> cols >> nnz))
      throw std::runtime_error("bad size line: " + line);
  }
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
  for (long long e = 0; e < nnz; ++e) {
    Index i, j;
    double v;
    if (!(in >> i >> j >> v)) throw std::runtime_error("truncated entries in " + path);
    entries.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) entries.push_back({j - 1, i - 1, v});
  }
  return SparseMatrix::from_triplets(rows, cols, entries);
}

void write_csv(const std::string& path, const DenseMatrix& m,
               const std::vector<std::string>& comments,
               const std::string& column_header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& c : comments) out << "# " << c << "\n";
  if (!column_header.empty()) out << column_header << "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      out << buf << (j + 1 < m.cols() ? "," : "");
    }
    out << "\n";
  }
}

}  // namespace amglab

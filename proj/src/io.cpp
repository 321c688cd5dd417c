#include "macstokes/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace macstokes {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a) {
  const bool symmetric = a.rows() == a.cols() && SparseMatrix(a - SparseMatrix(a.transpose())).norm() == 0.0;
  std::vector<Triplet> entries;
  for (Index r = 0; r < a.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(a, r); it; ++it) {
      if (symmetric && it.col() > it.row()) continue;
      entries.emplace_back(it.row(), it.col(), it.value());
    }
  }
  std::ostringstream os;
  os << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general") << '\n';
  os << a.rows() << ' ' << a.cols() << ' ' << entries.size() << '\n';
  for (const auto& t : entries) os << t.row() + 1 << ' ' << t.col() + 1 << ' ' << format_double(t.value()) << '\n';
  write_text(path, os.str());
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || object != "matrix" || format != "coordinate" || field != "real") {
    throw IoError(path.string() + ": only real coordinate MatrixMarket files are supported");
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") throw IoError(path.string() + ": unsupported symmetry " + symmetry);
  while (std::getline(in, line) && !line.empty() && line[0] == '%') {
  }
  long rows = 0, cols = 0, nnz = 0;
  if (!(std::istringstream(line) >> rows >> cols >> nnz)) throw IoError(path.string() + ": bad size line");
  std::vector<Triplet> t;
  t.reserve(std::size_t(symmetric ? 2 * nnz : nnz));
  for (long k = 0; k < nnz; ++k) {
    long i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) throw IoError(path.string() + ": truncated entry list");
    t.emplace_back(i - 1, j - 1, v);
    if (symmetric && i != j) t.emplace_back(j - 1, i - 1, v);
  }
  SparseMatrix a(rows, cols);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::invalid_argument("CsvTable: row width does not match the header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return os.str();
}

void CsvTable::save(const std::filesystem::path& path) const { write_text(path, str()); }

CsvTable eigenvalue_table(const std::vector<std::complex<double>>& eigenvalues) {
  CsvTable t({"re", "im"});
  for (const auto& z : eigenvalues) t.add_row({format_double(z.real()), format_double(z.imag())});
  return t;
}

}  // namespace macstokes

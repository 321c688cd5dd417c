#ifndef MACSTOKES_IO_HPP
#define MACSTOKES_IO_HPP

/// \file io.hpp
/// \brief MatrixMarket and CSV output with fixed 17-digit number formatting.

#include <complex>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "macstokes/types.hpp"

namespace macstokes {

/// File-system failures (unwritable directory, unreadable file).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// printf "%.17g"; round-trips every finite double.
std::string format_double(double x);

/// Coordinate real MatrixMarket file. Exactly symmetric matrices are written
/// with the `symmetric` qualifier and only their lower triangle.
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a);
SparseMatrix read_matrix_market(const std::filesystem::path& path);

/// Comma-separated table with a header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::string str() const;
  void save(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes `text` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

/// re,im per eigenvalue.
CsvTable eigenvalue_table(const std::vector<std::complex<double>>& eigenvalues);

}  // namespace macstokes

#endif  // MACSTOKES_IO_HPP

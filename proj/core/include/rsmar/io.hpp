// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsmar/operators.hpp"

namespace rsmar {

/// Malformed input. `line()` is the 1-based line number, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Coordinate real/integer matrices, general, symmetric or skew-symmetric.
/// Indices are 1-based in the file; duplicates are summed.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::filesystem::path& path);

void write_matrix_market(std::ostream& out, const SparseMatrix& a);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a);

/// Dense vectors: Matrix Market array format (n x 1), or one number per line.
Vector read_vector(std::istream& in);
Vector read_vector(const std::filesystem::path& path);
void write_vector(std::ostream& out, const Vector& v);
void write_vector(const std::filesystem::path& path, const Vector& v);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

struct HistoryRow {
  int iter = 0;
  double res_norm = 0.0;
  double ares_norm = 0.0;
  std::int64_t matvecs = 0;
};

struct HistoryRecord {
  std::string method;
  std::vector<HistoryRow> rows;
  std::string termination;
  double wall_seconds = 0.0;
};

HistoryRecord make_history_record(const std::string& method, const SolveReport& report,
                                  double wall_seconds = 0.0);

/// Header "method,iter,res_norm,ares_norm,matvecs", preceded by a
/// "# residual_mode=<mode>" line when `residual_mode` is given.
void write_history_csv(std::ostream& out, const std::vector<HistoryRecord>& records,
                       const std::optional<std::string>& residual_mode = std::nullopt);
void write_history_csv(const std::filesystem::path& path, const std::vector<HistoryRecord>& records,
                       const std::optional<std::string>& residual_mode = std::nullopt);

/// Inverse of write_history_csv; comment lines are skipped. Records are
/// grouped by consecutive method names.
std::vector<HistoryRecord> read_history_csv(std::istream& in);
std::vector<HistoryRecord> read_history_csv(const std::filesystem::path& path);

}  // namespace rsmar

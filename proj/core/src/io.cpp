// SPDX-License-Identifier: Apache-2.0

#include "rsmar/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace rsmar {

namespace {

constexpr std::string_view kCsvHeader = "method,iter,res_norm,ares_norm,matvecs";

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

double parse_double(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected a number, got '" + std::string(tok) + "'", line);
  }
  return v;
}

long long parse_int(std::string_view tok, std::size_t line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected an integer, got '" + std::string(tok) + "'", line);
  }
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

struct Banner {
  std::string format;
  std::string field;
  std::string symmetry;
};

Banner parse_banner(const std::string& line) {
  const auto tok = split_ws(line);
  if (tok.size() != 5 || lower(std::string(tok[0])) != "%%matrixmarket" ||
      lower(std::string(tok[1])) != "matrix") {
    throw ParseError("missing or malformed %%MatrixMarket banner", 1);
  }
  return {lower(std::string(tok[2])), lower(std::string(tok[3])), lower(std::string(tok[4]))};
}

// Next line that is neither a comment nor blank. Returns false at EOF.
bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line) || line.front() == '%') continue;
    return true;
  }
  return false;
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty input", 0);
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const Banner banner = parse_banner(line);
  if (banner.format != "coordinate") {
    throw ParseError("unsupported format '" + banner.format + "' (need coordinate)", 1);
  }
  if (banner.field == "pattern" || banner.field == "complex") {
    throw ParseError("unsupported field '" + banner.field + "' (need real or integer)", 1);
  }
  if (banner.field != "real" && banner.field != "integer" && banner.field != "double") {
    throw ParseError("unknown field '" + banner.field + "'", 1);
  }
  const bool symmetric = banner.symmetry == "symmetric";
  const bool skew = banner.symmetry == "skew-symmetric";
  if (!symmetric && !skew && banner.symmetry != "general") {
    throw ParseError("unsupported symmetry '" + banner.symmetry + "'", 1);
  }

  if (!next_data_line(in, line, lineno)) throw ParseError("missing size line", lineno);
  const auto size_tok = split_ws(line);
  if (size_tok.size() != 3) throw ParseError("size line needs 'rows cols nnz'", lineno);
  const long long rows = parse_int(size_tok[0], lineno);
  const long long cols = parse_int(size_tok[1], lineno);
  const long long nnz = parse_int(size_tok[2], lineno);
  if (rows < 0 || cols < 0 || nnz < 0) throw ParseError("negative size", lineno);
  if (rows != cols) {
    throw ParseError("matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                         ", expected square",
                     lineno);
  }

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(symmetric || skew ? 2 * nnz : nnz));
  for (long long e = 0; e < nnz; ++e) {
    if (!next_data_line(in, line, lineno)) {
      throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(e),
                       lineno);
    }
    const auto tok = split_ws(line);
    if (tok.size() != 3) throw ParseError("entry needs 'row col value'", lineno);
    const long long i = parse_int(tok[0], lineno);
    const long long j = parse_int(tok[1], lineno);
    const double v = parse_double(tok[2], lineno);
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw ParseError("index (" + std::to_string(i) + ", " + std::to_string(j) +
                           ") outside 1.." + std::to_string(rows),
                       lineno);
    }
    if (!std::isfinite(v)) throw ParseError("non-finite value", lineno);
    triplets.push_back({i - 1, j - 1, v});
    if ((symmetric || skew) && i != j) triplets.push_back({j - 1, i - 1, skew ? -v : v});
  }
  if (next_data_line(in, line, lineno)) throw ParseError("trailing data after entries", lineno);
  return SparseMatrix::from_triplets(rows, cols, std::move(triplets));
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return read_matrix_market(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonzeros() << '\n';
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index k = a.row_offsets()[static_cast<std::size_t>(r)];
         k < a.row_offsets()[static_cast<std::size_t>(r) + 1]; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      out << r + 1 << ' ' << a.col_indices()[kk] + 1 << ' ' << format_double(a.values()[kk])
          << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a) {
  auto out = open_out(path);
  write_matrix_market(out, a);
  if (!out) throw std::runtime_error("write failed: '" + path.string() + "'");
}

Vector read_vector(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> values;
  std::optional<long long> expected;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && line.rfind("%%", 0) == 0) {
      const Banner banner = parse_banner(line);
      if (banner.format != "array" || (banner.field != "real" && banner.field != "integer")) {
        throw ParseError("vector files must be 'array real'", lineno);
      }
      first = false;
      if (!next_data_line(in, line, lineno)) throw ParseError("missing size line", lineno);
      const auto tok = split_ws(line);
      if (tok.size() != 2 || parse_int(tok[1], lineno) != 1) {
        throw ParseError("vector size line must be 'n 1'", lineno);
      }
      expected = parse_int(tok[0], lineno);
      continue;
    }
    first = false;
    if (blank(line) || line.front() == '%' || line.front() == '#') continue;
    for (auto tok : split_ws(line)) values.push_back(parse_double(tok, lineno));
  }
  if (expected && static_cast<long long>(values.size()) != *expected) {
    throw ParseError("expected " + std::to_string(*expected) + " values, found " +
                         std::to_string(values.size()),
                     lineno);
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

Vector read_vector(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_vector(in);
}

void write_vector(std::ostream& out, const Vector& v) {
  out << "%%MatrixMarket matrix array real general\n" << v.size() << " 1\n";
  for (Index i = 0; i < v.size(); ++i) out << format_double(v[i]) << '\n';
}

void write_vector(const std::filesystem::path& path, const Vector& v) {
  auto out = open_out(path);
  write_vector(out, v);
  if (!out) throw std::runtime_error("write failed: '" + path.string() + "'");
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

HistoryRecord make_history_record(const std::string& method, const SolveReport& report,
                                  double wall_seconds) {
  HistoryRecord rec;
  rec.method = method;
  rec.termination = std::string(to_string(report.termination));
  rec.wall_seconds = wall_seconds;
  const std::size_t count = report.residual_history.size();
  rec.rows.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    rec.rows.push_back({static_cast<int>(k), report.residual_history[k],
                        report.aresidual_history[k], report.matvec_history[k]});
  }
  return rec;
}

void write_history_csv(std::ostream& out, const std::vector<HistoryRecord>& records,
                       const std::optional<std::string>& residual_mode) {
  if (residual_mode) out << "# residual_mode=" << *residual_mode << '\n';
  out << kCsvHeader << '\n';
  for (const auto& rec : records) {
    for (const auto& row : rec.rows) {
      out << rec.method << ',' << row.iter << ',' << format_double(row.res_norm) << ','
          << format_double(row.ares_norm) << ',' << row.matvecs << '\n';
    }
  }
}

void write_history_csv(const std::filesystem::path& path, const std::vector<HistoryRecord>& records,
                       const std::optional<std::string>& residual_mode) {
  auto out = open_out(path);
  write_history_csv(out, records, residual_mode);
  if (!out) throw std::runtime_error("write failed: '" + path.string() + "'");
}

std::vector<HistoryRecord> read_history_csv(std::istream& in) {
  std::vector<HistoryRecord> records;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line) || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw ParseError("unexpected CSV header '" + line + "'", lineno);
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 5) throw ParseError("expected 5 fields", lineno);
    if (records.empty() || records.back().method != fields[0]) {
      records.push_back(HistoryRecord{fields[0], {}, {}, 0.0});
    }
    records.back().rows.push_back({static_cast<int>(parse_int(fields[1], lineno)),
                                   parse_double(fields[2], lineno),
                                   parse_double(fields[3], lineno),
                                   parse_int(fields[4], lineno)});
  }
  if (!header_seen) throw ParseError("missing CSV header", lineno);
  return records;
}

std::vector<HistoryRecord> read_history_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_history_csv(in);
}

}  // namespace rsmar

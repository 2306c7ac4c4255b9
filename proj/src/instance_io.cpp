#include "covpack/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace covpack {
namespace {

constexpr double kNormalizedBoundaryTol = 1e-12;

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

Index parse_index(std::string_view token, int line, const char* what) {
  Index value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

Eigen::VectorXd parse_value_row(const std::vector<std::string_view>& tokens, Index expect,
                                int line, const char* what) {
  if (static_cast<Index>(tokens.size()) - 1 != expect) {
    throw ParseError(line, std::string(what) + " line must carry exactly " +
                               std::to_string(expect) + " values");
  }
  Eigen::VectorXd out(expect);
  for (Index t = 0; t < expect; ++t) {
    double v = parse_double(tokens[t + 1], line, what);
    if (!std::isfinite(v)) throw ParseError(line, std::string("non-finite ") + what + " value");
    if (v < 0.0) throw ParseError(line, std::string("negative ") + what + " value");
    out[t] = v;
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

double parse_double(std::string_view token, int line, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

ParsedInstance parse_instance(std::string_view text) {
  int line_no = 0;
  bool have_header = false;
  bool normalized = false;
  Index n_rows = 0;
  Index n_cols = 0;
  bool have_b = false;
  bool have_c = false;
  Eigen::VectorXd b, c;
  std::vector<Entry> entries;
  std::unordered_set<std::uint64_t> seen;

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line;
    if (eol == std::string_view::npos) {
      line = text.substr(pos);
      pos = text.size();
    } else {
      line = text.substr(pos, eol - pos);
      pos = eol + 1;
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::vector<std::string_view> tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (!have_header) {
      if (tokens.size() != 4 || tokens[0] != "fcp") {
        throw ParseError(line_no, "malformed header, expected 'fcp <normalized|general> <n_rows> <n_cols>'");
      }
      if (tokens[1] == "normalized") {
        normalized = true;
      } else if (tokens[1] == "general") {
        normalized = false;
      } else {
        throw ParseError(line_no, "unknown instance mode '" + std::string(tokens[1]) + "'");
      }
      n_rows = parse_index(tokens[2], line_no, "row count");
      n_cols = parse_index(tokens[3], line_no, "column count");
      if (n_rows < 0 || n_cols < 0) throw ParseError(line_no, "negative dimension");
      have_header = true;
      continue;
    }

    if (!normalized && !have_b) {
      if (tokens[0] != "b") throw ParseError(line_no, "expected 'b' line for a general instance");
      b = parse_value_row(tokens, n_rows, line_no, "b");
      have_b = true;
      continue;
    }
    if (!normalized && !have_c) {
      if (tokens[0] != "c") throw ParseError(line_no, "expected 'c' line for a general instance");
      c = parse_value_row(tokens, n_cols, line_no, "c");
      have_c = true;
      continue;
    }

    if (tokens.size() != 3) {
      throw ParseError(line_no, "malformed entry line, expected '<row> <col> <value>'");
    }
    Entry e;
    e.row = parse_index(tokens[0], line_no, "row index");
    e.col = parse_index(tokens[1], line_no, "column index");
    e.value = parse_double(tokens[2], line_no, "entry value");
    if (e.row < 0 || e.row >= n_rows || e.col < 0 || e.col >= n_cols) {
      throw ParseError(line_no, "entry index out of range");
    }
    if (!std::isfinite(e.value)) throw ParseError(line_no, "non-finite entry");
    if (e.value < 0.0) throw ParseError(line_no, "negative entry");
    if (e.value == 0.0) throw ParseError(line_no, "zero entry (omit zero entries)");
    if (normalized && e.value < 1.0 - kNormalizedBoundaryTol) {
      throw ParseError(line_no, "entry in (0, 1) not allowed in a normalized instance");
    }
    std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.row)) << 32) |
        static_cast<std::uint32_t>(e.col);
    if (!seen.insert(key).second) throw ParseError(line_no, "duplicate entry");
    entries.push_back(e);
  }

  if (!have_header) throw ParseError(1, "missing header");
  if (!normalized && !have_b) throw ParseError(line_no, "unexpected end of input: missing 'b' line");
  if (!normalized && !have_c) throw ParseError(line_no, "unexpected end of input: missing 'c' line");

  SparseNonNegMatrix matrix(n_rows, n_cols, std::move(entries));
  if (normalized) {
    return ParsedInstance{NormalizedInstance(std::move(matrix))};
  }
  return ParsedInstance{GeneralInstance(std::move(matrix), std::move(b), std::move(c))};
}

namespace {

void append_entries(std::string& out, const SparseNonNegMatrix& matrix) {
  for (const Entry& e : matrix.entries()) {
    out += std::to_string(e.row);
    out += ' ';
    out += std::to_string(e.col);
    out += ' ';
    out += format_double(e.value);
    out += '\n';
  }
}

}  // namespace

std::string serialize_instance(const NormalizedInstance& inst) {
  std::string out = "fcp normalized " + std::to_string(inst.matrix().rows()) + ' ' +
                    std::to_string(inst.matrix().cols()) + '\n';
  append_entries(out, inst.matrix());
  return out;
}

std::string serialize_instance(const GeneralInstance& inst) {
  std::string out = "fcp general " + std::to_string(inst.matrix.rows()) + ' ' +
                    std::to_string(inst.matrix.cols()) + '\n';
  out += 'b';
  for (Eigen::Index i = 0; i < inst.b.size(); ++i) {
    out += ' ';
    out += format_double(inst.b[i]);
  }
  out += '\n';
  out += 'c';
  for (Eigen::Index j = 0; j < inst.c.size(); ++j) {
    out += ' ';
    out += format_double(inst.c[j]);
  }
  out += '\n';
  append_entries(out, inst.matrix);
  return out;
}

}  // namespace covpack

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "covpack/instance.hpp"

namespace covpack {

// Error pinned to the 1-based input line it was detected on.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

using ParsedInstance = std::variant<GeneralInstance, NormalizedInstance>;

// Text format, line oriented:
//   fcp <normalized|general> <n_rows> <n_cols>
//   b <n_rows values>            (general only)
//   c <n_cols values>            (general only)
//   <row> <col> <value>          one line per stored entry, 0-based indices
// '#' starts a comment; blank lines are ignored.
ParsedInstance parse_instance(std::string_view text);

// Values are printed in shortest round-trip decimal form, so
// parse_instance(serialize_instance(x)) reproduces x bit for bit.
std::string serialize_instance(const NormalizedInstance& inst);
std::string serialize_instance(const GeneralInstance& inst);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);
// Strict full-token parse; reports `what` at `line` on failure.
double parse_double(std::string_view token, int line, const char* what);

}  // namespace covpack

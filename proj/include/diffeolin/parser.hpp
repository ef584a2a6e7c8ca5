#pragma once

#include "diffeolin/atom_algebra.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace diffeolin {

class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t position, std::set<std::string> expected, const std::string& detail);

  /// Zero-based byte offset of the offending token.
  std::size_t position() const { return position_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::set<std::string> expected_;
};

/// Grammar (whitespace ignored):
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := factor ('*' factor)*
///   factor  := ['-'] primary ['^' integer]
///   primary := integer ['/' integer] | 'x' | 'abs' '(' 'x' ')' | '(' expr ')'
/// Floating-point literals are rejected.
FunctionExpr parse_expr(std::string_view text);

}  // namespace diffeolin

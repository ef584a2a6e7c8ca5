#pragma once

#include "diffeolin/smoothhom.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace diffeolin {

/// Malformed user input: bad JSON, unknown names, shape mismatches, parse
/// failures. The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Largest polynomial degree accepted from user input.
inline constexpr unsigned kMaxInputDegree = 64;

/// {"spaces": {name: {"dim": n, "diffeology": "fine" | "coarse" |
///   {"generated": [[expr, ...], ...]}}},
///  "maps": {name: {"from": space, "to": space, "matrix": [["p/q", ...], ...]}}}
struct SpaceFile {
  std::map<std::string, DiffSpace> spaces;
  std::map<std::string, LinearMap> maps;

  const DiffSpace& space(const std::string& name) const;
  const LinearMap& map(const std::string& name) const;
};

SpaceFile parse_space_file(std::string_view json_text);
SpaceFile load_space_file(const std::string& path);

/// Expression with the input degree cap applied.
FunctionExpr parse_input_expr(std::string_view text);
/// One expression per coordinate; a single comma-separated string is also
/// accepted.
Plot parse_plot(const std::vector<std::string>& exprs, std::size_t dim);
/// "a,b;c,d" with rational entries.
Matrix parse_matrix_text(std::string_view text);
/// "a,b,c"
Vector parse_vector_text(std::string_view text);

}  // namespace diffeolin

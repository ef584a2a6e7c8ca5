#include "diffeolin/space_file.hpp"

#include "diffeolin/parser.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace diffeolin {

using nlohmann::json;

const DiffSpace& SpaceFile::space(const std::string& name) const {
  auto it = spaces.find(name);
  if (it == spaces.end()) throw InputError("unknown space '" + name + "'");
  return it->second;
}

const LinearMap& SpaceFile::map(const std::string& name) const {
  auto it = maps.find(name);
  if (it == maps.end()) throw InputError("unknown map '" + name + "'");
  return it->second;
}

FunctionExpr parse_input_expr(std::string_view text) {
  FunctionExpr f;
  try {
    f = parse_expr(text);
  } catch (const ParseError& e) {
    throw InputError("expression '" + std::string(text) + "': " + e.what());
  }
  if (f.max_degree() > kMaxInputDegree)
    throw InputError("expression '" + std::string(text) + "' has degree " + std::to_string(f.max_degree()) +
                     " (limit " + std::to_string(kMaxInputDegree) + ")");
  return f;
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = text.find(sep, start);
    out.emplace_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) return out;
    start = at + 1;
  }
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\n");
  const auto e = s.find_last_not_of(" \t\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

Rational rational_entry(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(trim(v.get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InputError(where + ": rationals must be integer or \"p/q\" strings");
}

DiffSpace space_from_json(const std::string& name, const json& spec) {
  if (!spec.is_object() || !spec.contains("dim") || !spec.contains("diffeology"))
    throw InputError("space '" + name + "': needs \"dim\" and \"diffeology\"");
  if (!spec["dim"].is_number_integer() || spec["dim"].get<long>() < 1)
    throw InputError("space '" + name + "': dim must be a positive integer");
  const auto n = static_cast<std::size_t>(spec["dim"].get<long>());
  const json& d = spec["diffeology"];
  if (d.is_string()) {
    if (d == "fine") return make_fine(n);
    if (d == "coarse") return make_coarse(n);
    throw InputError("space '" + name + "': unknown diffeology \"" + d.get<std::string>() + "\"");
  }
  if (!d.is_object() || !d.contains("generated") || !d["generated"].is_array())
    throw InputError("space '" + name + "': diffeology must be \"fine\", \"coarse\" or {\"generated\": [...]}");
  std::vector<Plot> gens;
  for (const auto& g : d["generated"]) {
    if (!g.is_array()) throw InputError("space '" + name + "': each generator is a list of expressions");
    std::vector<std::string> exprs;
    for (const auto& e : g) {
      if (!e.is_string()) throw InputError("space '" + name + "': expressions must be strings");
      exprs.push_back(e.get<std::string>());
    }
    try {
      gens.push_back(parse_plot(exprs, n));
    } catch (const InputError& e) {
      throw InputError("space '" + name + "': " + e.what());
    }
  }
  return make_generated(n, std::move(gens));
}

}  // namespace

Plot parse_plot(const std::vector<std::string>& exprs, std::size_t dim) {
  std::vector<std::string> parts = exprs;
  if (parts.size() == 1 && dim != 1) parts = split(parts[0], ',');
  if (parts.size() != dim)
    throw InputError("plot has " + std::to_string(parts.size()) + " coordinates, space has dimension " +
                     std::to_string(dim));
  std::vector<FunctionExpr> comps;
  for (const auto& p : parts) comps.push_back(parse_input_expr(p));
  return Plot(std::move(comps));
}

Vector parse_vector_text(std::string_view text) {
  Vector v;
  for (const auto& part : split(text, ',')) {
    try {
      v.push_back(parse_rational(trim(part)));
    } catch (const std::invalid_argument& e) {
      throw InputError("vector entry '" + part + "': " + e.what());
    }
  }
  return v;
}

Matrix parse_matrix_text(std::string_view text) {
  std::vector<Vector> rows;
  for (const auto& row : split(text, ';')) rows.push_back(parse_vector_text(row));
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows)
    if (r.size() != cols) throw InputError("matrix rows have different lengths");
  return Matrix::from_rows(rows, cols);
}

SpaceFile parse_space_file(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("space file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("spaces") || !doc["spaces"].is_object())
    throw InputError("space file: top-level \"spaces\" object required");
  SpaceFile file;
  for (const auto& [name, spec] : doc["spaces"].items()) file.spaces.emplace(name, space_from_json(name, spec));
  if (doc.contains("maps")) {
    if (!doc["maps"].is_object()) throw InputError("space file: \"maps\" must be an object");
    for (const auto& [name, spec] : doc["maps"].items()) {
      const std::string where = "map '" + name + "'";
      if (!spec.is_object() || !spec.contains("from") || !spec.contains("to") || !spec.contains("matrix"))
        throw InputError(where + ": needs \"from\", \"to\" and \"matrix\"");
      const DiffSpace& from = file.space(spec["from"].get<std::string>());
      const DiffSpace& to = file.space(spec["to"].get<std::string>());
      const json& m = spec["matrix"];
      if (!m.is_array() || m.size() != to.dim())
        throw InputError(where + ": matrix needs " + std::to_string(to.dim()) + " rows");
      Matrix matrix(to.dim(), from.dim());
      for (std::size_t i = 0; i < to.dim(); ++i) {
        if (!m[i].is_array() || m[i].size() != from.dim())
          throw InputError(where + ": row " + std::to_string(i) + " needs " + std::to_string(from.dim()) + " entries");
        for (std::size_t j = 0; j < from.dim(); ++j)
          matrix(i, j) = rational_entry(m[i][j], where + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      file.maps.emplace(name, LinearMap(from, to, std::move(matrix)));
    }
  }
  return file;
}

SpaceFile load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open space file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_space_file(ss.str());
}

}  // namespace diffeolin

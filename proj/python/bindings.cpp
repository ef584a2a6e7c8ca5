#include "diffeolin/bilinear.hpp"
#include "diffeolin/oracle.hpp"
#include "diffeolin/parser.hpp"
#include "diffeolin/space_file.hpp"
#include "diffeolin/tensor.hpp"
#include "diffeolin/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace diffeolin;

namespace {

// Rationals cross the boundary as text: anything whose str() is "p", "p/q"
// (int, str, fractions.Fraction) is accepted; results are returned as text.
Rational to_rational(const py::handle& h) { return parse_rational(std::string(py::str(h))); }

Matrix to_matrix(const py::sequence& rows) {
  std::vector<Vector> out;
  std::size_t cols = 0;
  for (const auto& row : rows) {
    Vector r;
    for (const auto& x : row.cast<py::sequence>()) r.push_back(to_rational(x));
    if (!out.empty() && r.size() != cols) throw DimensionError("matrix rows have different lengths");
    cols = r.size();
    out.push_back(std::move(r));
  }
  return Matrix::from_rows(out, cols);
}

Vector to_vector(const py::sequence& xs) {
  Vector out;
  for (const auto& x : xs) out.push_back(to_rational(x));
  return out;
}

std::vector<std::string> text(const Vector& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

std::vector<std::vector<std::string>> text(const Matrix& m) {
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(text(m.row(i)));
  return out;
}

FunctionExpr to_expr(const py::handle& h) {
  if (py::isinstance<FunctionExpr>(h)) return h.cast<FunctionExpr>();
  return parse_input_expr(std::string(py::str(h)));
}

Plot to_plot(const py::sequence& comps) {
  std::vector<FunctionExpr> out;
  for (const auto& c : comps) out.push_back(to_expr(c));
  return Plot(std::move(out));
}

}  // namespace

PYBIND11_MODULE(_diffeolin, m) {
  m.doc() = "Exact computations on finite-dimensional diffeological vector spaces";
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);

  py::class_<FunctionExpr>(m, "Expr")
      .def(py::init([](const std::string& s) { return parse_input_expr(s); }), py::arg("text"))
      .def("is_smooth", [](const FunctionExpr& f) { return is_smooth(f); })
      .def("residue",
           [](const FunctionExpr& f) {
             std::map<unsigned, std::string> out;
             for (const auto& [k, c] : singular_residue(f)) out[k] = to_string(c);
             return out;
           })
      .def("eval", [](const FunctionExpr& f, const py::object& x) { return to_string(f.eval(to_rational(x))); })
      .def("scaled_argument", [](const FunctionExpr& f, const py::object& c) { return compose_scale(f, to_rational(c)); })
      .def("__add__", [](const FunctionExpr& a, const FunctionExpr& b) { return a + b; })
      .def("__sub__", [](const FunctionExpr& a, const FunctionExpr& b) { return a - b; })
      .def("__mul__", [](const FunctionExpr& a, const FunctionExpr& b) { return a * b; })
      .def("__neg__", [](const FunctionExpr& a) { return -a; })
      .def("__eq__", [](const FunctionExpr& a, const FunctionExpr& b) { return a == b; })
      .def("__str__", &FunctionExpr::to_string)
      .def("__repr__", [](const FunctionExpr& f) { return "Expr('" + f.to_string() + "')"; });

  py::class_<DiffSpace>(m, "Space")
      .def_static("fine", &make_fine, py::arg("n"))
      .def_static("coarse", &make_coarse, py::arg("n"))
      .def_static(
          "generated",
          [](std::size_t n, const py::sequence& gens) {
            std::vector<Plot> plots;
            for (const auto& g : gens) plots.push_back(to_plot(g.cast<py::sequence>()));
            return make_generated(n, std::move(plots));
          },
          py::arg("n"), py::arg("generators"))
      .def_static("direct_sum", &direct_sum)
      .def_static("tensor", &tensor_product)
      .def_static(
          "pushforward", [](const DiffSpace& v, const py::sequence& iso) { return make_pushforward(v, to_matrix(iso)); },
          py::arg("space"), py::arg("iso"))
      .def_property_readonly("dim", &DiffSpace::dim)
      .def_property_readonly("kind", &DiffSpace::kind_name)
      .def("singular_span", [](const DiffSpace& v) { return text(singular_span(v).basis()); })
      .def("dual_dim", [](const DiffSpace& v) { return diffeological_dual(v).dim(); })
      .def("dual_basis", [](const DiffSpace& v) { return text(diffeological_dual(v).annihilator.basis()); })
      .def(
          "is_plot",
          [](const DiffSpace& v, const py::sequence& comps) { return to_string(is_plot(v, to_plot(comps)).verdict); },
          py::arg("components"))
      .def("__repr__", [](const DiffSpace& v) { return "<Space " + v.describe() + ">"; })
      .def("__str__", &DiffSpace::describe);

  m.def(
      "check_map",
      [](const DiffSpace& v, const DiffSpace& w, const py::sequence& matrix) {
        const SmoothDecision d = is_smooth_linear(LinearMap(v, w, to_matrix(matrix)));
        py::dict out;
        out["verdict"] = to_string(d.verdict);
        out["reason"] = d.reason;
        out["witness"] = d.witness ? py::object(py::str(d.witness->to_string())) : py::object(py::none());
        return out;
      },
      py::arg("domain"), py::arg("codomain"), py::arg("matrix"), "Smoothness of a linear map given by its matrix.");
  m.def(
      "dual_map",
      [](const DiffSpace& v, const DiffSpace& w, const py::sequence& matrix) {
        return text(dual_map(LinearMap(v, w, to_matrix(matrix))).matrix());
      },
      py::arg("domain"), py::arg("codomain"), py::arg("matrix"));
  m.def("smooth_hom_dim", [](const DiffSpace& v, const DiffSpace& w) { return smooth_hom_basis(v, w).dim(); });
  m.def("smooth_bilinear_dim", [](const DiffSpace& v, const DiffSpace& w) { return smooth_bilinear_basis(v, w).dim(); });
  m.def("smooth_curried_dim", [](const DiffSpace& v, const DiffSpace& w) { return smooth_curried_basis(v, w).dim(); });
  m.def(
      "tensor_dual_dims",
      [](const DiffSpace& v, const DiffSpace& w) {
        const TensorDualIso iso = tensor_dual_iso(v, w);
        return py::make_tuple(iso.left.dim(), iso.right.dim(), iso.product.dim());
      },
      "(dim V*, dim W*, dim (V⊗W)*), after checking the comparison map is an isomorphism.");
  m.def("hat_dual", [](const DiffSpace& v, const py::sequence& iso) { return hat_dual(v, to_matrix(iso)); });
  m.def("classify", [](const py::object& f) { return classify(to_expr(f)).to_string(); }, py::arg("expr"),
        "Numeric smoothness class at the origin.");
  m.def(
      "cross_validate",
      [](const DiffSpace& v, const py::sequence& functional, std::size_t trials, std::uint64_t seed) {
        const CrossValidationReport r = cross_validate(v, to_vector(functional), trials, seed);
        py::dict out;
        out["symbolic_verdict"] = r.symbolic_verdict;
        out["skipped"] = r.skipped;
        out["agreement_rate"] = r.agreement_rate();
        out["verdict_consistent"] = r.verdict_consistent;
        return out;
      },
      py::arg("space"), py::arg("functional"), py::arg("trials") = 50, py::arg("seed") = 0x5eed);
  m.def("parse_expr", [](const std::string& s) { return parse_expr(s); });
  m.def("load_spaces", [](const std::string& path) { return load_space_file(path).spaces; }, py::arg("path"));
  m.def("bundled_examples_path", &bundled_examples_path);
  m.def(
      "verify",
      [](const std::string& path) {
        const VerifyReport r = run_verify(load_space_file(path.empty() ? bundled_examples_path() : path));
        py::list out;
        for (const auto& c : r.checks) out.append(py::make_tuple(c.name, c.passed, c.detail));
        return out;
      },
      py::arg("path") = "", "Runs every check; returns (name, passed, detail) tuples.");
}

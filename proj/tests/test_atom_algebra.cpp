#include "diffeolin/atom_algebra.hpp"
#include "diffeolin/parser.hpp"
#include "reference.hpp"

#include <doctest.h>

using namespace diffeolin;

namespace {
FunctionExpr ax(unsigned k = 0, Rational c = 1) { return FunctionExpr::abs_x_pow(k, c); }
FunctionExpr xp(unsigned k, Rational c = 1) { return FunctionExpr::x_pow(k, c); }
}  // namespace

TEST_CASE("addition merges coefficients") {
  CHECK((ax() + xp(1)).terms().size() == 2);
  CHECK((ax(0, 2) + ax(0, -2)).is_zero());
  CHECK(((xp(2) + ax(1)) + xp(2)) == xp(2, 2) + ax(1));
  CHECK(add(ax(), xp(1)) == ax() + xp(1));
}

TEST_CASE("multiplication table") {
  CHECK(ax() * ax() == xp(2));
  CHECK(ax() * xp(1) == ax(1));
  CHECK((xp(1) + ax()) * (xp(1) - ax()) == FunctionExpr());
  CHECK(ax(2) * ax(3) == xp(7));
  CHECK(ax(1) * xp(2) == ax(3));
  CHECK(multiply(ax(), ax()) == xp(2));
}

TEST_CASE("singular residue") {
  CHECK(singular_residue(xp(5, 3)).empty());
  CHECK(singular_residue(ax(0, 2) + xp(2)) == Polynomial{{0, 2}});
  const FunctionExpr f = ax() * (xp(1) + ax());
  CHECK(f == ax(1) + xp(2));
  CHECK(singular_residue(f) == Polynomial{{1, 1}});
}

TEST_CASE("smoothness predicate") {
  CHECK(is_smooth(xp(3)));
  CHECK_FALSE(is_smooth(ax()));
  CHECK(is_smooth(ax() * ax()));
  CHECK(is_smooth(FunctionExpr()));
}

TEST_CASE("composition with a linear rescaling") {
  CHECK(compose_scale(ax(), -2) == ax(0, 2));
  CHECK(compose_scale(xp(2), 3) == xp(2, 9));
  CHECK(compose_scale(ax(1), -1) == ax(1, -1));
  CHECK(compose_scale(ax(), 0).is_zero());
}

TEST_CASE("degrees and coefficients") {
  const FunctionExpr f = xp(4, 2) + ax(6, -1);
  CHECK(f.max_degree() == 6);
  CHECK(f.coefficient(Atom::mono(4)) == 2);
  CHECK(f.coefficient(Atom::abs_mono(6)) == -1);
  CHECK(f.coefficient(Atom::mono(1)) == 0);
  CHECK(FunctionExpr::from_parts({{4, 2}}, {{6, -1}}) == f);
  CHECK(f.smooth_part() == Polynomial{{4, 2}});
  CHECK(f.singular_part() == Polynomial{{6, -1}});
}

TEST_CASE("evaluation") {
  const FunctionExpr f = xp(2, 3) - ax(1, Rational(1, 2));
  CHECK(f.eval(2) == 12 - 2);
  CHECK(f.eval(-2) == 12 + 2);
  CHECK(f.eval_as(-2.0, [](const Rational& r) { return r.get_d(); }) == doctest::Approx(14.0));
}

TEST_CASE("text form") {
  CHECK(FunctionExpr().to_string() == "0");
  CHECK(ax().to_string() == "abs(x)");
  CHECK((xp(2, 3) - ax(1, Rational(1, 2))).to_string() == "3*x^2 - 1/2*abs(x)*x");
}

TEST_CASE("ring laws and residue linearity (property)") {
  ref::Gen g(11);
  for (int trial = 0; trial < 300; ++trial) {
    const FunctionExpr f = g.expr(5), h = g.expr(5), k = g.expr(5);
    const Rational c = g.rational();
    CHECK(f + h == h + f);
    CHECK(f * h == h * f);
    CHECK((f + h) + k == f + (h + k));
    CHECK((f * h) * k == f * (h * k));
    CHECK(f * (h + k) == f * h + f * k);
    CHECK(f - f == FunctionExpr());
    CHECK(singular_residue(c * f + h) == poly_add(poly_scale(singular_residue(f), c), singular_residue(h)));
    CHECK(FunctionExpr::from_parts(f.smooth_part(), f.singular_part()) == f);
  }
}

TEST_CASE("algebra operations agree with pointwise evaluation (property)") {
  ref::Gen g(12);
  for (int trial = 0; trial < 200; ++trial) {
    const FunctionExpr f = g.expr(4), h = g.expr(4);
    const Rational c = g.nonzero(3);
    for (long xi = -3; xi <= 3; ++xi) {
      Rational x(xi, 2);
      x.canonicalize();
      CHECK((f * h).eval(x) == f.eval(x) * h.eval(x));
      CHECK((f + h).eval(x) == f.eval(x) + h.eval(x));
      CHECK(compose_scale(f, c).eval(x) == f.eval(c * x));
    }
  }
}

TEST_CASE("is_smooth matches the one-sided reference (property)") {
  ref::Gen g(13);
  for (int trial = 0; trial < 500; ++trial) {
    const FunctionExpr f = g.expr(6);
    CHECK(is_smooth(f) == ref::smooth(f));
  }
}

TEST_CASE("kink atoms jump at derivative order degree + 1 (reference)") {
  for (unsigned k = 0; k <= 6; ++k) {
    CHECK(ref::jump_order(ax(k)) == k + 1);
    CHECK_FALSE(ref::jump_order(xp(k)).has_value());
  }
}

TEST_CASE("printing reparses to the same expression (property)") {
  ref::Gen g(14);
  for (int trial = 0; trial < 300; ++trial) {
    const FunctionExpr f = g.expr(6);
    CHECK(parse_expr(f.to_string()) == f);
  }
}

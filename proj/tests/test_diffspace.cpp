#include "diffeolin/diffspace.hpp"
#include "reference.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace diffeolin;

namespace {

Plot kink(std::size_t n, std::size_t i, unsigned d = 0) { return Plot::kink(unit_vector(n, i), d); }

Subspace span(std::size_t n, std::vector<Vector> rows) { return Subspace::span(n, rows); }

/// Plot membership judged by the reference on the smooth dual: a NotPlot
/// certificate must be a smooth functional that sees a kink in c.
void check_certificate(const DiffSpace& v, const Plot& c, const Vector& phi) {
  const auto& gens = v.as<descriptor::Generated>().generators;
  for (const auto& g : gens) CHECK(ref::smooth(ref::compose(phi, g)));
  CHECK_FALSE(ref::smooth(ref::compose(phi, c)));
}

/// c minus the assembled factorization must be classically smooth.
void check_factorization(const DiffSpace& v, const Plot& c, const PlotDecision& d) {
  const Plot rest = c - assemble_factorization(v, d.factorization);
  for (const auto& f : rest.components()) CHECK(ref::smooth(f));
}

}  // namespace

TEST_CASE("plot helpers") {
  const Plot p({FunctionExpr::abs_x_pow(0) + FunctionExpr::x_pow(2), FunctionExpr::abs_x_pow(1, 3)});
  const Matrix r = p.residue_matrix();
  CHECK(r == Matrix::from_rows({{1, 0}, {0, 3}}, 2));
  CHECK(Plot::zero(3).residue_matrix().rows() == 0);
  CHECK(Plot::constant({1, 2}).is_classically_smooth());
  CHECK(p.max_degree() == 2);
  CHECK(p.reparametrized(-1)[1] == FunctionExpr::abs_x_pow(1, -3));
  CHECK(p.transformed(Matrix::from_rows({{1, 1}}, 2))[0] == p[0] + p[1]);
  CHECK(Plot::concat(p, Plot::zero(1)).slice(0, 2) == p);
  CHECK_THROWS_AS(p + Plot::zero(3), DimensionError);
  CHECK_THROWS_AS(p.slice(1, 2), DimensionError);
}

TEST_CASE("factories validate their arguments") {
  CHECK_THROWS_AS(make_fine(0), DimensionError);
  CHECK_THROWS_AS(make_coarse(0), DimensionError);
  CHECK_THROWS_AS(make_generated(2, {kink(3, 0)}), DimensionError);
  CHECK_THROWS_AS(make_pushforward(make_fine(2), Matrix::identity(3)), DimensionError);
  CHECK_THROWS_AS(make_pushforward(make_fine(2), Matrix::from_rows({{1, 1}, {1, 1}}, 2)), std::invalid_argument);
  CHECK_THROWS_AS(is_plot(make_fine(2), Plot::zero(3)), DimensionError);
}

TEST_CASE("singular spans of the basic spaces") {
  CHECK(singular_span(make_generated(3, {kink(3, 0)})).dim() == 1);
  CHECK(singular_span(make_fine(4)).dim() == 0);
  CHECK(singular_span(make_coarse(2)).dim() == 2);
  CHECK(singular_span(make_generated(4, {kink(4, 0), kink(4, 1)})) == span(4, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
  CHECK(singular_span(make_generated(2, {})).dim() == 0);
}

TEST_CASE("mixed generator has a one-dimensional singular span") {
  const Plot g({FunctionExpr::abs_x_pow(0) + FunctionExpr::x_pow(2), FunctionExpr::abs_x_pow(0)});
  const DiffSpace v = make_generated(2, {g});
  CHECK(singular_span(v) == span(2, {{1, 1}}));
  CHECK(ref::smooth(ref::compose({1, -1}, g)));
  CHECK_FALSE(ref::smooth(ref::compose({1, 0}, g)));
  CHECK(ref::generated_dual_dim(2, {g}) == 1);
}

TEST_CASE("direct sums place singular spans block-wise") {
  CHECK(singular_span(direct_sum(make_coarse(1), make_fine(1))) == span(2, {{1, 0}}));
  CHECK(singular_span(direct_sum(make_fine(2), make_fine(3))).dim() == 0);
  const DiffSpace g = make_generated(2, {kink(2, 0)});
  CHECK(singular_span(direct_sum(g, g)) == span(4, {{1, 0, 0, 0}, {0, 0, 1, 0}}));
}

TEST_CASE("pushforward moves the singular span") {
  const Matrix swap = Matrix::from_rows({{0, 1}, {1, 0}}, 2);
  const DiffSpace v = make_pushforward(make_generated(2, {kink(2, 0)}), swap);
  CHECK(singular_span(v) == span(2, {{0, 1}}));
  CHECK(is_plot(v, kink(2, 1)).verdict == Membership::Plot);
  CHECK(is_plot(v, kink(2, 0)).verdict == Membership::NotPlot);
}

TEST_CASE("membership examples") {
  CHECK(is_plot(make_coarse(3), Plot({FunctionExpr::abs_x_pow(0), FunctionExpr::abs_x_pow(3), FunctionExpr()})).verdict ==
        Membership::Plot);
  CHECK(is_plot(make_fine(2), Plot({FunctionExpr::abs_x_pow(0), FunctionExpr::x_pow(1)})).verdict == Membership::NotPlot);
  CHECK(is_plot(make_fine(2), Plot({FunctionExpr::x_pow(3), FunctionExpr::x_pow(1)})).verdict == Membership::Plot);

  const DiffSpace v = make_generated(2, {kink(2, 0)});
  const Plot c({FunctionExpr::abs_x_pow(1), FunctionExpr()});
  const PlotDecision d = is_plot(v, c);
  REQUIRE(d.verdict == Membership::Plot);
  REQUIRE(d.factorization.size() == 1);
  CHECK(d.factorization[0].multiplier == FunctionExpr::x_pow(1));
  check_factorization(v, c, d);

  const Plot bad({FunctionExpr(), FunctionExpr::abs_x_pow(0)});
  const PlotDecision e = is_plot(v, bad);
  REQUIRE(e.verdict == Membership::NotPlot);
  REQUIRE(e.certificate);
  check_certificate(v, bad, *e.certificate);
}

TEST_CASE("reparametrized and rescaled generators are plots") {
  const Plot g({FunctionExpr::abs_x_pow(0) + FunctionExpr::x_pow(2), FunctionExpr::abs_x_pow(0)});
  const DiffSpace v = make_generated(2, {g});
  const Plot c = g.reparametrized(Rational(-1, 2)).scaled(FunctionExpr::x_pow(2) + FunctionExpr::constant(3)) +
                 Plot::constant({1, 1});
  const PlotDecision d = is_plot(v, c);
  CHECK(d.verdict == Membership::Plot);
  check_factorization(v, c, d);
}

TEST_CASE("slack degree from the environment") {
  ::setenv("DIFFEOLIN_SLACK_DEGREE", "3", 1);
  CHECK(MembershipConfig::from_environment().slack_degree == 3u);
  ::setenv("DIFFEOLIN_SLACK_DEGREE", "x", 1);
  CHECK_THROWS_AS(MembershipConfig::from_environment(), std::invalid_argument);
  ::setenv("DIFFEOLIN_SLACK_DEGREE", "-1", 1);
  CHECK_THROWS_AS(MembershipConfig::from_environment(), std::invalid_argument);
  ::unsetenv("DIFFEOLIN_SLACK_DEGREE");
  CHECK_FALSE(MembershipConfig::from_environment().slack_degree.has_value());
}

TEST_CASE("zero slack still decides the worked examples") {
  MembershipConfig cfg;
  cfg.slack_degree = 0;
  const DiffSpace v = make_generated(2, {kink(2, 0)});
  CHECK(is_plot(v, Plot({FunctionExpr::abs_x_pow(1), FunctionExpr()}), cfg).verdict == Membership::Plot);
  CHECK(is_plot(v, kink(2, 1), cfg).verdict == Membership::NotPlot);
}

TEST_CASE("dual dimension matches the reference on random generated spaces (property)") {
  ref::Gen g(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = g.index(1, 4);
    const DiffSpace v = g.generated(n, 3);
    const auto& gens = v.as<descriptor::Generated>().generators;
    CHECK(n - singular_span(v).dim() == ref::generated_dual_dim(n, gens));
  }
}

TEST_CASE("sampled plots are accepted and verdicts carry valid certificates (property)") {
  ref::Gen g(32);
  std::size_t plots = 0, not_plots = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const DiffSpace v = g.generated(g.index(1, 3), 2);
    const Plot p = g.plot_of(v);
    const PlotDecision d = is_plot(v, p);
    CHECK(d.verdict == Membership::Plot);
    if (d.verdict == Membership::Plot) check_factorization(v, p, d);

    const Plot q = g.any_plot(v.dim(), 2);
    const PlotDecision e = is_plot(v, q);
    if (e.verdict == Membership::Plot) {
      ++plots;
      check_factorization(v, q, e);
    } else if (e.verdict == Membership::NotPlot) {
      ++not_plots;
      REQUIRE(e.certificate);
      check_certificate(v, q, *e.certificate);
    }
  }
  CHECK(not_plots > 0);
  CHECK(plots + not_plots > 100);
}

TEST_CASE("pushforward and sum membership reduce to the factors (property)") {
  ref::Gen g(33);
  for (int trial = 0; trial < 100; ++trial) {
    const DiffSpace v = g.generated(g.index(1, 3), 2);
    const Matrix a = g.invertible(v.dim());
    const Plot c = g.coin() ? g.plot_of(v) : g.any_plot(v.dim(), 2);
    CHECK(is_plot(make_pushforward(v, a), c.transformed(a)).verdict == is_plot(v, c).verdict);

    const DiffSpace w = make_fine(2);
    const Plot s = g.coin() ? g.smooth_plot(2) : g.any_plot(2, 1);
    const Membership left = is_plot(v, c).verdict, right = is_plot(w, s).verdict;
    const Membership both = is_plot(direct_sum(v, w), Plot::concat(c, s)).verdict;
    if (left == Membership::NotPlot || right == Membership::NotPlot)
      CHECK(both == Membership::NotPlot);
    else if (left == Membership::Plot && right == Membership::Plot)
      CHECK(both == Membership::Plot);
  }
}

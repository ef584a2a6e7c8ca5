#include "diffeolin/smoothhom.hpp"
#include "reference.hpp"

#include <doctest.h>

using namespace diffeolin;

namespace {

Plot kink(std::size_t n, std::size_t i, unsigned d = 0) { return Plot::kink(unit_vector(n, i), d); }
DiffSpace kinked(std::size_t n, std::size_t k) {
  std::vector<Plot> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(kink(n, i));
  return make_generated(n, gens);
}
Smoothness verdict(const DiffSpace& v, const DiffSpace& w, const Matrix& m) {
  return is_smooth_linear(LinearMap(v, w, m)).verdict;
}

}  // namespace

TEST_CASE("linear map shape checks") {
  CHECK_THROWS_AS(LinearMap(make_fine(2), make_fine(1), Matrix(2, 2)), DimensionError);
  const LinearMap f(make_fine(2), make_fine(1), Matrix::from_rows({{1, 2}}, 2));
  CHECK_THROWS_AS(f.after(f), DimensionError);
  CHECK(f.after(LinearMap::identity(make_fine(2))).matrix() == f.matrix());
}

TEST_CASE("functionals on coarse spaces") {
  for (std::size_t n = 1; n <= 4; ++n) {
    Matrix m(1, n);
    m(0, n - 1) = 1;
    const auto d = is_smooth_linear(LinearMap(make_coarse(n), make_fine(1), m));
    CHECK(d.verdict == Smoothness::NotSmooth);
    REQUIRE(d.witness);
    CHECK_FALSE(ref::smooth(ref::compose(m.row(0), *d.witness)));
    CHECK(verdict(make_coarse(n), make_fine(1), Matrix(1, n)) == Smoothness::Smooth);
  }
}

TEST_CASE("kink-killing functional is smooth") {
  const DiffSpace v = kinked(3, 1);
  CHECK(verdict(v, make_fine(1), Matrix::from_rows({{0, 1, 1}}, 3)) == Smoothness::Smooth);
  CHECK(ref::smooth(ref::compose({0, 1, 1}, kink(3, 0))));
  CHECK(verdict(v, make_fine(1), Matrix::from_rows({{1, 1, 1}}, 3)) == Smoothness::NotSmooth);
}

TEST_CASE("maps into generated codomains") {
  const DiffSpace v = kinked(2, 1);
  const DiffSpace w = make_generated(2, {kink(2, 1)});
  const Matrix swap = Matrix::from_rows({{0, 1}, {1, 0}}, 2);
  CHECK(verdict(v, w, swap) == Smoothness::Smooth);
  CHECK(verdict(v, w, Matrix::identity(2)) == Smoothness::NotSmooth);
  CHECK(verdict(make_coarse(2), w, Matrix::identity(2)) == Smoothness::NotSmooth);
  CHECK(verdict(make_fine(2), w, Matrix::identity(2)) == Smoothness::Smooth);
}

TEST_CASE("dual dimensions") {
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(diffeological_dual(make_coarse(n)).dim() == 0);
    CHECK(diffeological_dual(make_fine(n)).dim() == n);
  }
  CHECK(diffeological_dual(kinked(4, 2)).dim() == 2);
  CHECK(diffeological_dual(kinked(3, 1)).dim() == 2);
  CHECK_THROWS_AS(diffeological_dual(diffeological_dual(make_fine(2)).space), UnsupportedError);
  const DualSpace d = diffeological_dual(kinked(3, 1));
  CHECK(d.functional({1, 0}).size() == 3);
  CHECK_THROWS_AS(d.functional({1}), DimensionError);
}

TEST_CASE("smooth hom spaces") {
  CHECK(smooth_hom_basis(make_coarse(2), make_coarse(2)).dim() == 4);
  CHECK(smooth_hom_basis(make_coarse(2), make_fine(1)).dim() == 0);
  const DiffSpace v = kinked(3, 1);
  const Subspace s = smooth_hom_basis(v, make_fine(2));
  CHECK(s.dim() == 4);
  for (std::size_t a = 0; a < s.dim(); ++a) {
    const Vector e = s.basis_vector(a);
    Matrix m(2, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = e[i * 3 + j];
    CHECK(verdict(v, make_fine(2), m) == Smoothness::Smooth);
  }
  CHECK_THROWS_AS(smooth_hom_basis(v, v), UnsupportedError);
}

TEST_CASE("dual maps") {
  const DiffSpace fine = make_fine(2);
  CHECK(dual_map(LinearMap::identity(fine)).matrix() == Matrix::identity(2));
  const LinearMap to_coarse(fine, make_coarse(2), Matrix::from_rows({{1, 2}, {3, 4}}, 2));
  const LinearMap star = dual_map(to_coarse);
  CHECK(star.domain().dim() == 0);
  CHECK(star.codomain().dim() == 2);
  const LinearMap f(kinked(2, 1), make_fine(1), Matrix::from_rows({{0, 1}}, 2));
  const LinearMap fs = dual_map(f);
  CHECK(fs.matrix() == Matrix::from_rows({{1}}, 1));
  CHECK(diffeological_dual(kinked(2, 1)).annihilator == Subspace::span(2, std::vector<Vector>{{0, 1}}));
  CHECK_THROWS_AS(dual_map(LinearMap(make_coarse(2), make_fine(1), Matrix::from_rows({{1, 0}}, 2))),
                  std::invalid_argument);
}

TEST_CASE("fine space is self-dual") {
  const DiffSpace v = make_fine(3);
  const DualSpace d = diffeological_dual(v);
  CHECK(d.dim() == 3);
  CHECK(verdict(v, d.space, Matrix::identity(3)) == Smoothness::Smooth);
  CHECK(verdict(d.space, v, Matrix::identity(3)) == Smoothness::Smooth);
}

TEST_CASE("pushforward duals") {
  const Matrix swap = Matrix::from_rows({{0, 1}, {1, 0}}, 2);
  CHECK(singular_span(hat_dual(make_fine(2), Matrix::identity(2))).dim() == 0);
  const DiffSpace hc = hat_dual(make_coarse(2), swap);
  CHECK(is_plot(hc, Plot({FunctionExpr::abs_x_pow(0), FunctionExpr::abs_x_pow(2)})).verdict == Membership::Plot);
  const DiffSpace hk = hat_dual(kinked(2, 1), swap);
  CHECK(singular_span(hk) == singular_span(make_generated(2, {kink(2, 1)})));
}

TEST_CASE("pushforward well-posedness examples") {
  const Matrix id = Matrix::identity(2);
  ref::Gen g(41);
  std::vector<Plot> smooth;
  for (int i = 0; i < 5; ++i) smooth.push_back(g.smooth_plot(2));
  const auto fine = hat_dual_wellposed(make_fine(2), id, Rational(2) * id, smooth);
  CHECK(fine.consistent());
  for (auto m : fine.first) CHECK(m == Membership::Plot);

  const auto shear = hat_dual_wellposed(kinked(2, 1), id, Matrix::from_rows({{1, 1}, {0, 1}}, 2), {kink(2, 0)});
  CHECK(shear.consistent());
  CHECK(shear.first[0] == Membership::Plot);
  CHECK(shear.second[0] == Membership::Plot);

  const auto random = hat_dual_wellposed(make_fine(2), g.invertible(2), g.invertible(2), {kink(2, 0)});
  CHECK(random.consistent());
  CHECK(random.first[0] == Membership::NotPlot);
}

TEST_CASE("pushforward membership depends on the isomorphism") {
  // A generated space whose kink line is not preserved by the second
  // isomorphism: the two pushforwards differ, while transport by
  // iso2·iso1⁻¹ still carries plots to plots.
  const DiffSpace v = kinked(2, 1);
  const Matrix swap = Matrix::from_rows({{0, 1}, {1, 0}}, 2);
  const auto r = hat_dual_wellposed(v, swap, Matrix::identity(2), {kink(2, 1)});
  CHECK_FALSE(r.consistent());
  CHECK(r.first[0] == Membership::Plot);
  CHECK(r.second[0] == Membership::NotPlot);
  CHECK(r.transport_failures == 0);
}

TEST_CASE("transpose between pushforward duals of fine and coarse") {
  for (std::size_t n = 2; n <= 3; ++n) {
    const Matrix m = Matrix::identity(n);
    const DiffSpace hv = hat_dual(make_fine(n), m), hw = hat_dual(make_coarse(n), m);
    const auto d = is_smooth_linear(LinearMap(hw, hv, m));
    CHECK(d.verdict == Smoothness::NotSmooth);
    REQUIRE(d.witness);
    CHECK(is_plot(hw, *d.witness).verdict == Membership::Plot);
    CHECK(is_plot(hv, *d.witness).verdict == Membership::NotPlot);
  }
}

TEST_CASE("maps into fine spaces agree with the reference (property)") {
  ref::Gen g(42);
  std::size_t smooth = 0, not_smooth = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const DiffSpace v = g.generated(g.index(1, 3), 2);
    const std::size_t m = g.index(1, 2);
    Matrix a = g.matrix(m, v.dim());
    if (g.coin()) {
      const Subspace ann = singular_span(v).annihilator();
      a = ann.dim() ? g.matrix(m, ann.dim()) * ann.basis() : Matrix(m, v.dim());
    }
    const auto d = is_smooth_linear(LinearMap(v, make_fine(m), a));
    if (d.verdict == Smoothness::Smooth) {
      ++smooth;
      for (int s = 0; s < 5; ++s) {
        const Plot p = g.plot_of(v);
        for (std::size_t i = 0; i < m; ++i) CHECK(ref::smooth(ref::compose(a.row(i), p)));
      }
    } else {
      REQUIRE(d.verdict == Smoothness::NotSmooth);
      ++not_smooth;
      REQUIRE(d.witness);
      CHECK(is_plot(v, *d.witness).verdict == Membership::Plot);
      bool kinked_image = false;
      for (std::size_t i = 0; i < m; ++i) kinked_image = kinked_image || !ref::smooth(ref::compose(a.row(i), *d.witness));
      CHECK(kinked_image);
    }
  }
  CHECK(smooth > 0);
  CHECK(not_smooth > 0);
}

TEST_CASE("identity and compositions of smooth maps are smooth (property)") {
  ref::Gen g(43);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = g.index(1, 3);
    const DiffSpace v = g.coin() ? g.generated(n, 2) : (g.coin() ? make_fine(n) : make_coarse(n));
    CHECK(is_smooth_linear(LinearMap::identity(v)).verdict == Smoothness::Smooth);
    const Matrix iso = g.invertible(n);
    const DiffSpace pv = make_pushforward(v, iso);
    CHECK(verdict(v, pv, iso) == Smoothness::Smooth);
    CHECK(verdict(pv, v, *inverse(iso)) == Smoothness::Smooth);
    CHECK(verdict(make_fine(n), v, g.matrix(n, n)) == Smoothness::Smooth);
    CHECK(verdict(v, make_coarse(2), g.matrix(2, n)) == Smoothness::Smooth);
  }
}

TEST_CASE("dual maps are contravariant (property)") {
  ref::Gen g(44);
  for (int trial = 0; trial < 100; ++trial) {
    const DiffSpace u = g.generated(g.index(1, 3), 2);
    const std::size_t n = g.index(1, 3);
    const Subspace ann = singular_span(u).annihilator();
    const Matrix fa = ann.dim() ? g.matrix(n, ann.dim()) * ann.basis() : Matrix(n, u.dim());
    const LinearMap f(u, make_fine(n), fa);
    const LinearMap h(make_fine(n), make_fine(2), g.matrix(2, n));
    const LinearMap hf = h.after(f);
    REQUIRE(is_smooth_linear(hf).verdict == Smoothness::Smooth);
    CHECK(dual_map(hf).matrix() == dual_map(f).matrix() * dual_map(h).matrix());
    CHECK(dual_map(LinearMap::identity(u)).matrix() == Matrix::identity(diffeological_dual(u).dim()));
  }
}

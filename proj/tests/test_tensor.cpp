#include "diffeolin/tensor.hpp"
#include "reference.hpp"

#include <doctest.h>

using namespace diffeolin;

namespace {

DiffSpace kink1(std::size_t n) { return make_generated(n, {Plot::kink(unit_vector(n, 0))}); }

}  // namespace

TEST_CASE("block span") {
  const Subspace s = tensor_block_span(Subspace::span(2, std::vector<Vector>{{1, 0}}), Subspace::zero(3));
  CHECK(s.dim() == 3);
  CHECK(s.ambient_dim() == 6);
  CHECK(tensor_block_span(Subspace::full(2), Subspace::zero(2)) == Subspace::full(4));
}

TEST_CASE("tensor products of basic spaces") {
  const DiffSpace ff = tensor_product(make_fine(2), make_fine(3));
  CHECK(singular_span(ff).dim() == 0);
  CHECK(diffeological_dual(ff).dim() == 6);
  const DiffSpace cf = tensor_product(make_coarse(2), make_fine(1));
  CHECK(singular_span(cf).dim() == 2);
  CHECK(diffeological_dual(cf).dim() == 0);
  const DiffSpace kk = tensor_product(kink1(2), kink1(2));
  CHECK(singular_span(kk).dim() == 3);
  CHECK(diffeological_dual(kk).dim() == 1);
  CHECK_THROWS_AS(tensor_product(make_pushforward(make_fine(2), Matrix::identity(2)), make_fine(1)), UnsupportedError);
  CHECK_THROWS_AS(tensor_product(diffeological_dual(make_fine(2)).space, make_fine(1)), UnsupportedError);
}

TEST_CASE("products of plots land in the product diffeology") {
  const DiffSpace v = kink1(2), w = kink1(2);
  const DiffSpace t = tensor_product(v, w);
  // p ⊗ q with p a kink and q a constant, and the product of two kinks.
  const Plot kc({FunctionExpr::abs_x_pow(0), FunctionExpr(), FunctionExpr::abs_x_pow(0), FunctionExpr()});
  CHECK(is_plot(t, kc).verdict == Membership::Plot);
  const Plot off({FunctionExpr(), FunctionExpr(), FunctionExpr(), FunctionExpr::abs_x_pow(0)});
  CHECK(is_plot(t, off).verdict == Membership::NotPlot);
}

TEST_CASE("tensor products of maps") {
  const LinearMap id2 = LinearMap::identity(make_fine(2));
  const LinearMap id3 = LinearMap::identity(make_fine(3));
  CHECK(tensor_of_maps(id2, id3).matrix() == Matrix::identity(6));
  const LinearMap zero(make_fine(2), make_fine(1), Matrix(1, 2));
  CHECK(tensor_of_maps(zero, id3).matrix().is_zero());
  const LinearMap f(kink1(2), make_fine(1), Matrix::from_rows({{0, 1}}, 2));
  const LinearMap fg = tensor_of_maps(f, LinearMap::identity(make_fine(1)));
  CHECK(fg.matrix() == Matrix::from_rows({{0, 1}}, 2));
  CHECK(is_smooth_linear(fg).verdict == Smoothness::Smooth);
  CHECK_THROWS_AS(tensor_of_maps(LinearMap(make_coarse(2), make_fine(1), Matrix::from_rows({{1, 0}}, 2)), id2),
                  std::invalid_argument);
}

TEST_CASE("distributivity examples") {
  const auto fine = distribute(make_fine(1), make_fine(2), make_fine(1));
  CHECK(fine.forward_verdict.verdict == Smoothness::Smooth);
  CHECK(fine.inverse_verdict.verdict == Smoothness::Smooth);
  CHECK(fine.forward.matrix() * fine.inverse.matrix() == Matrix::identity(3));

  const auto kinked = distribute(kink1(2), make_fine(1), make_fine(1));
  CHECK(kinked.domain_singular_dim == 2);
  CHECK(kinked.codomain_singular_dim == 2);
  CHECK(kinked.forward_verdict.verdict == Smoothness::Smooth);
  CHECK(kinked.inverse_verdict.verdict == Smoothness::Smooth);

  const auto coarse = distribute(make_coarse(2), make_fine(1), kink1(2));
  CHECK(coarse.forward_verdict.verdict == Smoothness::Smooth);
  CHECK(coarse.inverse_verdict.verdict == Smoothness::Smooth);
  CHECK(diffeological_dual(coarse.forward.domain()).dim() == 0);
  CHECK(diffeological_dual(coarse.forward.codomain()).dim() == 0);
}

TEST_CASE("dual of a tensor product") {
  const auto ff = tensor_dual_iso(make_fine(2), make_fine(3));
  CHECK(ff.map.matrix().rows() == 6);
  CHECK(rank(ff.map.matrix()) == 6);
  const auto cf = tensor_dual_iso(make_coarse(2), make_fine(1));
  CHECK(cf.product.dim() == 0);
  CHECK(cf.map.domain().dim() == 0);
  const auto kk = tensor_dual_iso(kink1(2), kink1(2));
  CHECK(kk.map.matrix().rows() == 1);
  CHECK(kk.map.matrix().cols() == 1);
  CHECK(kk.map.matrix()(0, 0) != 0);
}

TEST_CASE("tensor product versus smooth maps out of the dual") {
  const HatReport f = hat_F(make_coarse(2), make_fine(1));
  CHECK(f.domain_dim == 2);
  CHECK(f.smooth_target_dim == 0);
  CHECK_FALSE(f.isomorphism);
  const HatReport fine = hat_F(make_fine(2), make_fine(2));
  CHECK(fine.isomorphism);
  CHECK(rank(fine.matrix) == 4);
  const HatReport g = hat_G(make_coarse(2), make_fine(1));
  CHECK(g.smooth_target_dim == 2);
  CHECK(g.domain_dim == 2);
  CHECK_THROWS_AS(hat_F(make_fine(2), kink1(2)), UnsupportedError);
  CHECK_THROWS_AS(hat_G(kink1(2), make_fine(2)), UnsupportedError);
}

TEST_CASE("endomorphisms versus the dual tensor") {
  const EndoReport coarse = endo_remark_check(make_coarse(2));
  CHECK(coarse.dual_tensor_dim == 0);
  CHECK(coarse.smooth_endo_dim == 4u);
  CHECK(coarse.equal == false);
  const EndoReport fine = endo_remark_check(make_fine(3));
  CHECK(fine.dual_tensor_dim == 9);
  CHECK(fine.equal == true);
  const EndoReport kinked = endo_remark_check(kink1(2));
  CHECK(kinked.dual_tensor_dim == 2);
  CHECK_FALSE(kinked.smooth_endo_dim.has_value());
}

TEST_CASE("dual dimension is multiplicative (property)") {
  ref::Gen g(61);
  for (int trial = 0; trial < 60; ++trial) {
    const DiffSpace v = g.generated(g.index(1, 3), 2);
    const DiffSpace w = g.coin() ? g.generated(g.index(1, 2), 2) : make_fine(g.index(1, 2));
    const auto iso = tensor_dual_iso(v, w);
    CHECK(iso.product.dim() == iso.left.dim() * iso.right.dim());
    CHECK(diffeological_dual(v).dim() == ref::generated_dual_dim(v.dim(), v.as<descriptor::Generated>().generators));
  }
}

TEST_CASE("distributivity on random triples (property)") {
  ref::Gen g(62);
  for (int trial = 0; trial < 40; ++trial) {
    auto pick = [&]() -> DiffSpace {
      const std::size_t n = g.index(1, 2);
      switch (g.index(0, 2)) {
        case 0: return make_fine(n);
        case 1: return make_coarse(n);
        default: return g.generated(n, 1);
      }
    };
    const DiffSpace a = pick(), b = pick(), c = pick();
    const auto d = distribute(a, b, c);
    CHECK(d.forward_verdict.verdict == Smoothness::Smooth);
    CHECK(d.inverse_verdict.verdict == Smoothness::Smooth);
    CHECK(d.domain_singular_dim == d.codomain_singular_dim);
  }
}

#include "diffeolin/linalg.hpp"
#include "reference.hpp"

#include <doctest.h>

using namespace diffeolin;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("+4/6") == Rational(2, 3));
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a"), std::invalid_argument);
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-4/2")) == "-2");
}

TEST_CASE("row reduction") {
  const Matrix m = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}, 3);
  CHECK(rank(m) == 2);
  const RowEchelon e = rref(m);
  CHECK(e.pivots == std::vector<std::size_t>{0, 1});
  CHECK(e.reduced == Matrix::from_rows({{1, 0, 1}, {0, 1, 1}}, 3));
  const Matrix n = nullspace(m);
  CHECK(n.rows() == 1);
  CHECK(is_zero(m.apply(n.row(0))));
}

TEST_CASE("inverse and solve") {
  const Matrix a = Matrix::from_rows({{2, 1}, {1, 1}}, 2);
  const auto inv = inverse(a);
  REQUIRE(inv);
  CHECK(a * *inv == Matrix::identity(2));
  CHECK_FALSE(inverse(Matrix::from_rows({{1, 2}, {2, 4}}, 2)));
  CHECK(solve(a, {3, 2}) == Vector{1, 1});
  CHECK_FALSE(solve(Matrix::from_rows({{1, 1}, {1, 1}}, 2), {1, 2}));
}

TEST_CASE("kronecker product") {
  const Matrix a = Matrix::from_rows({{1, 2}}, 2);
  const Matrix b = Matrix::from_rows({{0}, {1}}, 1);
  CHECK(kron(a, b) == Matrix::from_rows({{0, 0}, {1, 2}}, 2));
}

TEST_CASE("subspaces") {
  const Subspace s = Subspace::span(3, std::vector<Vector>{{1, 1, 0}, {2, 2, 0}});
  CHECK(s.dim() == 1);
  CHECK(s.contains(Vector{3, 3, 0}));
  CHECK_FALSE(s.contains(Vector{1, 0, 0}));
  CHECK(s.coordinates(Vector{3, 3, 0}) == Vector{3});
  CHECK_FALSE(s.coordinates(Vector{0, 0, 1}));
  const Subspace ann = s.annihilator();
  CHECK(ann.dim() == 2);
  for (std::size_t a = 0; a < ann.dim(); ++a) CHECK(dot(ann.basis_vector(a), s.basis_vector(0)) == 0);
  CHECK(Subspace::zero(3).annihilator() == Subspace::full(3));
  CHECK((s + Subspace::span(3, std::vector<Vector>{{0, 0, 1}})).dim() == 2);
  CHECK(Subspace::direct_sum(s, Subspace::full(1)).dim() == 2);
  CHECK(Subspace::direct_sum(s, Subspace::full(1)).ambient_dim() == 4);
}

TEST_CASE("rank-nullity and reference rank (property)") {
  ref::Gen g(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = g.index(1, 4), c = g.index(1, 4);
    Matrix m = g.matrix(r, c);
    if (g.coin() && r > 1)
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 2;
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < r; ++i) rows.push_back(m.row(i));
    CHECK(rank(m) == ref::rank(rows));
    CHECK(rank(m) + nullspace(m).rows() == c);
    CHECK(rank(m.transpose()) == rank(m));
    const Subspace s = Subspace::span(c, m);
    CHECK(s.dim() + s.annihilator().dim() == c);
    CHECK(s.annihilator().annihilator() == s);
    CHECK(Subspace::span(c, rref(m).reduced) == s);
  }
}

TEST_CASE("subspace image under an invertible map (property)") {
  ref::Gen g(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = g.index(1, 4);
    const Subspace s = Subspace::span(n, g.matrix(g.index(0, n), n));
    const Matrix a = g.invertible(n);
    const Subspace img = s.image(a);
    CHECK(img.dim() == s.dim());
    CHECK(img.image(*inverse(a)) == s);
  }
}

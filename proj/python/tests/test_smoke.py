from fractions import Fraction

import pytest

import diffeolin as d


def kink_plane():
    return d.Space.generated(2, [["abs(x)", "0"]])


def test_expressions():
    f = d.Expr("abs(x)") * d.Expr("abs(x)")
    assert str(f) == "x^2"
    assert f.is_smooth()
    assert d.Expr("2*abs(x) + x^2").residue() == {0: "2"}
    assert d.Expr("3*x^2 - 1/2*abs(x)*x").eval(Fraction(-2)) == "14"
    with pytest.raises(ValueError):
        d.Expr("x^1.5")


def test_duals():
    assert d.Space.coarse(3).dual_dim() == 0
    assert d.Space.fine(4).dual_dim() == 4
    gens = [["abs(x)", "0", "0", "0"], ["0", "abs(x)", "0", "0"]]
    assert d.Space.generated(4, gens).dual_dim() == 2
    assert d.singular_span(d.Space.generated(2, [["abs(x) + x^2", "abs(x)"]])) == [[1, 1]]


def test_maps_and_plots():
    v = kink_plane()
    assert v.is_plot(["x*abs(x)", "0"]) == "Plot"
    assert v.is_plot(["0", "abs(x)"]) == "NotPlot"
    line = d.Space.fine(1)
    assert d.check_map(v, line, [[0, 1]])["verdict"] == "Smooth"
    bad = d.check_map(d.Space.coarse(3), line, [[1, "-2", Fraction(1, 3)]])
    assert bad["verdict"] == "NotSmooth"
    assert bad["witness"] is not None
    assert d.dual_map(v, line, [[0, 1]]) == [[1]]
    with pytest.raises(ValueError):
        d.dual_map(d.Space.coarse(2), line, [[1, 0]])


def test_hom_bilinear_tensor():
    assert d.smooth_hom_dim(d.Space.coarse(2), d.Space.coarse(2)) == 4
    assert d.smooth_bilinear_dim(d.Space.coarse(2), d.Space.fine(1)) == 0
    kinked = d.Space.generated(3, [["abs(x)", "0", "0"]])
    assert d.smooth_bilinear_dim(kinked, d.Space.fine(1)) == d.smooth_curried_dim(kinked, d.Space.fine(1)) == 4
    assert d.tensor_dual_dims(kink_plane(), kink_plane()) == (1, 1, 1)
    assert d.Space.tensor(d.Space.coarse(2), d.Space.fine(1)).dual_dim() == 0
    with pytest.raises(d.UnsupportedError):
        d.smooth_hom_dim(kink_plane(), kink_plane())


def test_pushforward():
    swapped = d.hat_dual(kink_plane(), [[0, 1], [1, 0]])
    assert d.singular_span(swapped) == [[0, 1]]
    assert swapped.is_plot(["0", "abs(x)"]) == "Plot"


def test_oracle():
    assert d.classify("abs(x)") == "NonSmoothAt0(2)"
    assert d.classify("abs(x)*x") == "NonSmoothAt0(3)"
    assert d.classify("x^3") == "CInfinityLikely"
    r = d.cross_validate(kink_plane(), [0, 1], trials=10)
    assert r["symbolic_verdict"] == "Smooth"
    assert r["agreement_rate"] == 1.0


def test_bundled_file():
    spaces = d.load_spaces(d.bundled_examples_path())
    assert spaces["coarse_R3"].dual_dim() == 0
    assert spaces["kink_R3_e1"].dual_dim() == 2

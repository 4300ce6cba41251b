import random

import pytest

from polarmult import fixtures
from polarmult.errors import EmptySupport, InvalidDepth, Unstable
from polarmult.graded import ModulePresentation, SubalgebraSpec, polynomial_ring
from polarmult.hilbert import WindowOptions, hilbert_table
from polarmult.oracle import monomial_support_dimension, random_monomial_problem
from polarmult.polar import (
    PolarVector,
    general_linear_cut,
    image_algebra,
    j_multiplicity,
    polar_vector,
    polar_wrt_linear_ideal,
    relative_polar,
    top_polar_check,
    truncated_relative,
)


def vec(B, **kw):
    return polar_vector(B, **kw).as_list()


def test_polar_vectors_of_polynomial_rings():
    assert vec(polynomial_ring(["u"], ["x"])) == [0, 1]
    assert vec(polynomial_ring(["u"], ["x", "y"])) == [0, 1, 0]
    assert vec(polynomial_ring([], ["x"])) == [1]
    assert vec(polynomial_ring(["u1", "u2"], ["x"])) == [0, 0, 1]  # H = C(n+2, 2)


def test_provenance_and_window():
    pv = polar_vector(polynomial_ring(["u"], ["x"]))
    assert pv.provenance == "hilbert-fit" and pv.margin_verified
    assert pv.window == {"v0": 4, "n0": 4, "width": 8, "margin": 3}


def test_empty_support_needs_override():
    B = polynomial_ring(["u"], ["x"], ["x"])
    with pytest.raises(EmptySupport):
        polar_vector(B)
    assert vec(B, r_override=2) == [0, 0, 0]


def test_override_pads_with_zeros():
    assert vec(polynomial_ring(["u"], ["x"]), r_override=3) == [0, 0, 0, 0]
    with pytest.raises(ValueError):
        polar_vector(polynomial_ring(["u"], ["x", "y"]), r_override=1)


def test_polar_with_respect_to_ideals():
    B = polynomial_ring(["u"], ["x", "y"])
    assert polar_wrt_linear_ideal(["x", "y"], B) == polar_vector(B)
    Bx = polynomial_ring(["u"], ["x"])
    assert polar_wrt_linear_ideal(["x"], Bx).as_list() == [0, 1]
    # gr_(ux)(R[x])_v = k^v + u^v R, so H = v + n + 1
    assert polar_wrt_linear_ideal(["u*x"], Bx).as_list() == [1, 1]


def test_relative_vectors():
    Bx = polynomial_ring(["u"], ["x"])
    assert relative_polar(SubalgebraSpec(Bx, ["x"]), Bx).as_list() == [0, 1]
    assert relative_polar(SubalgebraSpec(Bx, ["u*x"]), Bx).as_list() == [1, 1]
    p = fixtures.load("double-line")
    A, B = p.subalgebra(), p.algebra()
    assert relative_polar(A, B).as_list() == [2]
    assert polar_vector(image_algebra(A, B)).as_list() == [1]


def test_truncations():
    Bx = polynomial_ring(["u"], ["x"])
    A = SubalgebraSpec(Bx, ["u*x"])
    # G/B_1G is the image algebra R[ux]
    assert truncated_relative(A, Bx, 1) == polar_vector(image_algebra(A, Bx), r_override=1)
    # G/B_2G keeps the summands k = v - 1, v: k + R, so H = n + 2
    assert truncated_relative(A, Bx, 2).as_list() == [0, 1]
    full = SubalgebraSpec(Bx, ["x"])
    assert all(truncated_relative(full, Bx, t) == polar_vector(Bx) for t in (1, 2, 3))


def test_gr_table_matches_closed_form():
    Bx = polynomial_ring(["u"], ["x"])
    from polarmult.polar import associated_graded

    G = associated_graded([Bx.ring.parse("u*x")], Bx)
    t = hilbert_table(G, 1, 0, 4, 1)
    assert all(val == v + n + 1 for (v, n), val in t.values.items())


def test_j_multiplicities():
    Bx = polynomial_ring(["u"], ["x"])
    assert [j_multiplicity(Bx, d) for d in (1, 2, 3)] == [0, 0, 0]
    torsion = ModulePresentation(Bx, [0], [["u"]])
    assert j_multiplicity(torsion, 1) == 1
    assert j_multiplicity(Bx, 2) == polar_vector(Bx)[0]


def test_top_polar_identity():
    assert top_polar_check(polynomial_ring(["u"], ["x"])).agrees
    rep = top_polar_check(polynomial_ring(["u"], ["x", "y"]))
    assert rep.agrees and rep.expected == 0
    rep = top_polar_check(polynomial_ring([], ["x"]))
    assert rep.agrees and rep.expected == 1


def test_general_linear_cut():
    B = polynomial_ring(["u"], ["x", "y"])
    y, cut = general_linear_cut(B, seed=3)
    assert y and cut.as_list() == [0, 1]
    with pytest.raises(InvalidDepth):
        general_linear_cut(polynomial_ring([], ["x"]))
    _y, cut = general_linear_cut(polynomial_ring(["u"], ["x"]))
    assert cut.as_list() == [0]


def test_adversarial_fixture():
    B = fixtures.load("adversarial").algebra()
    assert vec(B) == [10]
    with pytest.raises(Unstable):
        polar_vector(B, options=WindowOptions(vmax=6, nmax=6))


def test_fit_degree_is_support_dimension():
    rng = random.Random(11)
    seen = 0
    while seen < 15:
        p = random_monomial_problem(rng, allow_module=False)
        dim = monomial_support_dimension(p)
        if dim < 0:
            with pytest.raises(EmptySupport):
                polar_vector(p.algebra())
            continue
        assert polar_vector(p.algebra()).r == dim, p.to_dict()
        seen += 1


def test_vector_arithmetic():
    a, b = PolarVector(1, [0, 1]), PolarVector(1, [2, 0])
    assert (a + b).as_list() == [2, 1] and a[5] == 0
    with pytest.raises(ValueError):
        a + PolarVector(0, [1])

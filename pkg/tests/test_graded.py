import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarmult.errors import InputError, NotContained, RankDeficient
from polarmult.exactlin import QQ, FieldDescriptor, PieceModule
from polarmult.graded import (
    ColonModule,
    ModulePairSpec,
    ModulePresentation,
    PolyRing,
    SubalgebraSpec,
    TorsionModule,
    BasePresentation,
    algebra_piece,
    free_module,
    module_piece,
    polynomial_ring,
    power_piece,
    quotient_by_element,
    quotient_piece,
    rees_algebra,
)


def test_parser_reports_position():
    ring = PolyRing(["u"], ["x", "y"], QQ)
    with pytest.raises(InputError) as exc:
        ring.parse("u*x + w", field="relations[0]")
    assert exc.value.column == 7 and exc.value.token == "w"
    with pytest.raises(InputError) as exc:
        ring.parse("x +* y")
    assert exc.value.column is not None
    with pytest.raises(InputError):
        ring.parse("x / y")


def test_parser_accepts_caret_and_parentheses():
    ring = PolyRing(["u"], ["x"], QQ)
    assert ring.parse("(u + x)^2") == ring.parse("u**2 + 2*u*x + x^2")
    assert ring.parse("3*u - 3*u") == {}


def test_inhomogeneous_relation_rejected():
    with pytest.raises(InputError):
        polynomial_ring(["u"], ["x"], ["x^2 + x"])


exps = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(st.tuples(exps, st.tuples(st.integers(0, 3))), st.integers(-9, 9).filter(bool), max_size=5)


@settings(max_examples=60, deadline=None)
@given(polys)
def test_format_round_trips(f):
    ring = PolyRing(["u"], ["x", "y"], QQ)
    assert ring.parse(ring.format(f)) == f


@settings(max_examples=30, deadline=None)
@given(polys, st.sampled_from([3, 7, 101]))
def test_format_round_trips_mod_p(f, p):
    F = FieldDescriptor.prime(p)
    ring = PolyRing(["u"], ["x", "y"], F)
    g = {k: F(c) for k, c in f.items() if F(c)}
    assert ring.parse(ring.format(g)) == g


def test_algebra_pieces():
    assert algebra_piece(polynomial_ring(["u"], ["x", "y"]), 2).rank == 3
    P = algebra_piece(polynomial_ring(["u"], ["x", "y"], ["x*y"]), 2)
    assert P.rank == 3 and P.dim_mod_m() == 2
    assert algebra_piece(polynomial_ring([], ["x", "y"], ["x^2"]), 3).length() == 2


def test_module_pieces():
    B = polynomial_ring(["u"], ["x"])
    M = free_module(B, [1, 0])
    P = module_piece(M, 1)
    assert P.rank == 2 and P.dim_mod_m() == 2 and not P.relations
    Q = ModulePresentation(B, [0], [["u"]])
    assert module_piece(Q, 2).length() == 1
    with pytest.raises(InputError):
        ModulePresentation(B, [0, 1], [["x", "x"]])


def test_power_and_quotient_pieces():
    B = polynomial_ring(["u"], ["x", "y"])
    A = SubalgebraSpec(B, ["x"])
    P = B.piece(2)
    top = power_piece(B, A, 1, 2)
    assert quotient_piece(top, [], P).dim_mod_m() == 2
    assert quotient_piece([B.embed(B.ring.parse("x^2")), B.embed(B.ring.parse("x*y"))],
                          [B.embed(B.ring.parse("x^2"))], P).dim_mod_m() == 1
    full = power_piece(B, SubalgebraSpec(B, ["x", "y"]), 2, 2)
    assert quotient_piece(full, [], P).dim_mod_m() == 3

    Bx = polynomial_ring(["u"], ["x"])
    gens = power_piece(Bx, SubalgebraSpec(Bx, ["u*x"]), 2, 3)
    ux3 = Bx.embed(Bx.ring.parse("u^2*x^3"))
    assert quotient_piece(gens, [ux3], Bx.piece(3)).is_zero()
    Q = quotient_piece([ux3], [Bx.embed(Bx.ring.parse("u^3*x^3"))], Bx.piece(3))
    assert Q.length() == 1
    with pytest.raises(NotContained):
        quotient_piece([Bx.embed(Bx.ring.parse("u^3*x^3"))], [ux3], Bx.piece(3))


def test_quotient_by_element():
    B = polynomial_ring(["u"], ["x", "y"])
    Q = quotient_by_element(B, B.ring.parse("x"))
    assert all(Q.piece(v).dim_mod_m() == 1 and not Q.piece(v).has_finite_length() for v in range(4))
    Bx = polynomial_ring(["u"], ["x"])
    Q = quotient_by_element(Bx, Bx.ring.parse("u"))
    assert [Q.piece(v).length() for v in range(4)] == [1, 1, 1, 1]
    Q = quotient_by_element(Bx, Bx.ring.parse("x^2"))
    assert [Q.piece(v).is_zero() for v in range(4)] == [False, False, True, True]


def test_colon_and_torsion():
    Bx = polynomial_ring(["u"], ["x"])
    assert all(ColonModule(Bx, Bx.ring.parse("x")).piece(v).is_zero() for v in range(3))
    M = ModulePresentation(Bx, [0], [["u*x"]])
    assert ColonModule(M, Bx.ring.parse("u")).piece(1).length() == 1
    S = ModulePresentation(Bx, [0, 0], [["0", "x"]])
    assert ColonModule(S, Bx.ring.parse("x")).piece(0).dim_mod_m() == 1
    assert all(TorsionModule(Bx).piece(v).is_zero() for v in range(3))
    T = ModulePresentation(Bx, [0, 0], [["0", "u"]])
    assert [TorsionModule(T).piece(v).length() for v in range(3)] == [1, 1, 1]


def test_rees_algebras():
    base = BasePresentation(["u1", "u2"])
    RE, _A = rees_algebra(ModulePairSpec(base, 1, [["u1"], ["u2"]], [["u1"], ["u2"]]))
    # piece v is m^v: minimally generated by v + 1 monomials
    assert [RE.piece(v).dim_mod_m() for v in range(4)] == [1, 2, 3, 4]
    RP, _ = rees_algebra(ModulePairSpec(base, 1, [["u1"]], [["u1"]]))
    assert RP.piece(3).dim_mod_m() == 1
    R2, _ = rees_algebra(ModulePairSpec(base, 2, [["1", "0"], ["0", "1"]], [["1", "0"], ["0", "1"]]))
    assert [R2.piece(v).dim_mod_m() for v in range(3)] == [1, 2, 3]


def test_module_pair_validation():
    base = BasePresentation(["u1", "u2"])
    with pytest.raises(NotContained):
        ModulePairSpec(base, 1, [["u1"]], [["u1^2"], ["u2"]])
    with pytest.raises(RankDeficient):
        ModulePairSpec(base, 2, [["u1", "0"]], [["u1", "0"], ["u2", "0"]])


def test_piece_labels_follow_frame():
    B = polynomial_ring(["u"], ["x", "y"])
    P = B.piece(1)
    assert isinstance(P, PieceModule) and len(P.labels) == 2

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarmult.errors import BudgetExceeded, RankMismatch
from polarmult.exactlin import (
    QQ,
    BaseSubmodule,
    FieldDescriptor,
    PieceModule,
    groebner_basis,
    is_prime,
    kernel_of_map,
    normal_form,
    saturate_irrelevant,
    step_budget,
    truncated_dimension,
)
from polarmult.oracle import _Echelon


def poly(terms, rank_pos=0):
    """{(a, b): c} over Q[u1, u2] -> rank-1 vector."""
    return {(rank_pos, e): c for e, c in terms.items()}


U1, U2 = (1, 0), (0, 1)


def test_prime_check():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    with pytest.raises(ValueError):
        FieldDescriptor.prime(91)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.sampled_from([2, 3, 101, 32003]))
def test_prime_field_arithmetic_is_exact(a, b, p):
    F = FieldDescriptor.prime(p)
    a, b = F(a), F(b)
    assert F.sub(F.add(a, b), b) == a
    if b:
        assert F.mul(F.div(a, b), b) == a


@given(st.fractions(), st.fractions())
def test_rational_arithmetic_is_exact(a, b):
    assert QQ.sub(QQ.add(a, b), b) == a


def test_basis_of_monomials_is_unchanged():
    sub = groebner_basis(BaseSubmodule(1, [poly({(2, 0): 1}), poly({(1, 1): 1})], 2))
    assert sorted(map(sorted, sub.basis())) == sorted(map(sorted, [poly({(2, 0): 1}), poly({(1, 1): 1})]))


def test_redundant_generator_dropped():
    sub = BaseSubmodule(1, [poly({U1: 1}), poly({(2, 0): 1})], 2)
    assert sub.basis() == [poly({U1: 1})]


def test_invertible_change_of_generators():
    sub = BaseSubmodule(1, [poly({U1: 1, U2: 1}), poly({U1: 1, U2: -1})], 2)
    assert sorted(sub.basis(), key=sorted) == sorted([poly({U1: 1}), poly({U2: 1})], key=sorted)


def test_normal_forms():
    assert normal_form(poly({(3, 0): 1}), BaseSubmodule(1, [poly({(2, 0): 1})], 2)) == {}
    sub = BaseSubmodule(1, [poly({(2, 0): 1}), poly({(1, 1): 1})], 2)
    assert normal_form(poly({U2: 1}), sub) == poly({U2: 1})
    assert normal_form(poly({(1, 1): 1, (0, 2): 1}), BaseSubmodule(1, [poly({(1, 1): 1})], 2)) == poly({(0, 2): 1})


def test_rank_mismatch_rejected():
    with pytest.raises(RankMismatch):
        BaseSubmodule(1, [{(1, (0, 0)): 1}], 2)


def test_kernels():
    # multiplication by u1 on Q[u1]
    ker = kernel_of_map([{(0, (1,)): 1}], 1, nvars=1)
    assert ker.is_zero()
    # multiplication by u1 on Q[u1]/(u1^2)
    target = PieceModule(1, [{(0, (2,)): 1}], 1)
    ker = kernel_of_map([{(0, (1,)): 1}], target)
    assert ker.same_as(BaseSubmodule(1, [{(0, (1,)): 1}], 1))
    # (a, b) -> u2 a - u1 b
    ker = kernel_of_map([{(0, U2): 1}, {(0, U1): -1}], 1, nvars=2)
    assert ker.same_as(BaseSubmodule(2, [{(0, U1): 1, (1, U2): 1}], 2))


def test_saturation():
    ambient = PieceModule(1, [{(0, (1,)): 1}], 1)
    assert saturate_irrelevant(BaseSubmodule(1, [], 1), ambient).same_as(BaseSubmodule(1, [{(0, (0,)): 1}], 1))
    free = PieceModule.free(1, 1)
    assert saturate_irrelevant(BaseSubmodule(1, [], 1), free).is_zero()
    sq = saturate_irrelevant(BaseSubmodule(1, [{(0, (2,)): 1}], 1), free)
    assert sq.contains({(0, (0,)): 1})


def test_truncated_dimensions():
    assert truncated_dimension(PieceModule(1, [{(0, (2,)): 1}], 1), 5) == 2
    assert truncated_dimension(PieceModule.free(1, 1), 3) == 4
    assert truncated_dimension(PieceModule(2, [{(0, (1,)): 1}, {(1, (3,)): 1}], 1), 0) == 2


def test_lengths_and_fibers():
    P = PieceModule(2, [{(0, (1,)): 1}, {(1, (3,)): 1}], 1)
    assert P.has_finite_length() and P.length() == 4
    assert P.dim_mod_m() == 2
    assert not PieceModule.free(1, 1).has_finite_length()
    assert PieceModule(1, [{(0, (0,)): 1}], 1).is_zero()
    # over a field every piece has finite length
    assert PieceModule.free(3, 0).length() == 3


def test_budget_is_enforced():
    gens = [poly({(3, 0): 1, (1, 2): 1}), poly({(2, 1): 1, (0, 3): -1}), poly({(1, 1): 1, (0, 2): 1})]
    with step_budget(1), pytest.raises(BudgetExceeded):
        BaseSubmodule(1, gens, 2).basis()


# -- degreewise membership oracle ------------------------------------------------


def _monos(deg):
    return [e for e in itertools.product(range(deg + 1), repeat=2) if sum(e) <= deg]


def member_by_linear_algebra(f, gens, bound):
    """Is f = sum h_i g_i with deg h_i <= bound?  Plain linear algebra over Q."""
    cols = []
    for g in gens:
        for m in _monos(bound):
            cols.append({(e[0] + m[0], e[1] + m[1]): c for (_p, e), c in g.items()})
    ech = _Echelon(0)
    for c in cols:
        ech.add({k[0] * 1000 + k[1]: Fraction(v) for k, v in c.items()})
    before = ech.rank
    ech.add({e[0] * 1000 + e[1]: Fraction(c) for (_p, e), c in f.items()})
    return ech.rank == before


small_poly = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), min_size=1, max_size=3
).map(lambda d: {(0, e): c for e, c in d.items() if c})


@settings(max_examples=40, deadline=None)
@given(st.lists(small_poly.filter(bool), min_size=1, max_size=3), st.lists(small_poly, min_size=1, max_size=3))
def test_normal_form_detects_combinations(gens, mults):
    sub = BaseSubmodule(1, gens, 2)
    combo = {}
    for g, h in zip(gens, mults):
        for (_p, a), c in g.items():
            for (_q, b), d in h.items():
                k = (0, (a[0] + b[0], a[1] + b[1]))
                combo[k] = combo.get(k, 0) + c * d
    combo = {k: v for k, v in combo.items() if v}
    assert normal_form(combo, sub) == {}


@settings(max_examples=40, deadline=None)
@given(st.lists(small_poly.filter(bool), min_size=1, max_size=3), small_poly)
def test_membership_agrees_with_linear_algebra(gens, f):
    sub = BaseSubmodule(1, gens, 2)
    if member_by_linear_algebra(f, gens, 4):
        assert normal_form(f, sub) == {}
    if normal_form(f, sub):
        assert not member_by_linear_algebra(f, gens, 4)


@settings(max_examples=30, deadline=None)
@given(st.lists(small_poly.filter(bool), min_size=1, max_size=3))
def test_basis_generates_the_same_module(gens):
    sub = BaseSubmodule(1, gens, 2)
    plain = BaseSubmodule(1, sub.basis(), 2)
    assert all(sub.contains(g) for g in gens)
    assert all(plain.contains(g) for g in gens) and sub.same_as(plain)

import warnings

import pytest

from polarmult.errors import NoBaseVariables
from polarmult.exactlin import FieldDescriptor
from polarmult.graded import ModulePresentation, polynomial_ring
from polarmult.svlength import chain_stage, cross_validate, length_formula_vector, sample_general


def test_sampling_is_reproducible():
    a, b = sample_general(42, 2, 2), sample_general(42, 2, 2)
    assert a.coefficients == b.coefficients and len(a) == 2
    assert all(any(c) for c in a.coefficients)
    one = sample_general(0, 3, 1)
    assert all(len(x) == 1 for x in one.elements)
    with pytest.raises(NoBaseVariables):
        sample_general(0, 1, 0)


def test_small_characteristic_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        sample_general(0, 1, 2, FieldDescriptor.prime(7))
    assert caught


def test_chain_stages():
    B = polynomial_ring(["u"], ["x", "y"])
    seq = sample_general(0, 2, 1)
    stage = chain_stage(B, seq, 1)
    assert [stage.piece(v).dim_mod_m() for v in range(3)] == [1, 2, 3]
    assert all(stage.piece(v).has_finite_length() for v in range(3))
    Bx = polynomial_ring(["u"], ["x"])
    assert chain_stage(Bx, seq, 0).piece(3).rank == Bx.piece(3).rank
    T = ModulePresentation(Bx, [0], [["u"]])
    assert all(chain_stage(T, seq, 1).torsion_length(v) == 0 for v in range(3))


def test_length_formula_examples():
    assert length_formula_vector(polynomial_ring(["u"], ["x", "y"]), 0).as_list() == [0, 1, 0]
    assert length_formula_vector(polynomial_ring(["u"], ["x"]), 0).as_list() == [0, 1]
    delegated = length_formula_vector(polynomial_ring([], ["x"]))
    assert delegated.as_list() == [1] and "no general elements" in delegated.provenance


def test_cross_validation():
    rep = cross_validate(polynomial_ring(["u"], ["x", "y"]), [0, 1, 2])
    assert rep.all_agree and not rep.disagreements()
    Bx = polynomial_ring(["u"], ["x"])
    rep = cross_validate(ModulePresentation(Bx, [0], [["u"]]), [0, 1])
    assert rep.all_agree and rep.reference.as_list() == [1]
    empty = polynomial_ring(["u"], ["x"], ["x"])
    rep = cross_validate(empty, [0, 1], r=1)
    assert rep.all_agree and rep.reference.as_list() == [0, 0]

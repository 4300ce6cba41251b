import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarmult import fixtures
from polarmult.errors import InputError
from polarmult.problem import ProblemDescription


@pytest.mark.parametrize("name", fixtures.names())
def test_corpus_round_trips(name):
    p = fixtures.load(name)
    again = ProblemDescription.from_json(p.to_json())
    assert again == p and again.to_dict() == p.to_dict()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 20), st.integers(1, 20), st.booleans())
def test_options_round_trip(seed, vmax, nmax, eq):
    doc = {"base_vars": ["u"], "poly_vars": ["x"], "assumptions": {"equidimensional_B": eq},
           "options": {"seed": seed, "vmax": vmax, "nmax": nmax}}
    p = ProblemDescription.from_dict(doc)
    assert ProblemDescription.from_dict(json.loads(json.dumps(p.to_dict()))) == p


def test_with_options_overrides():
    p = fixtures.load("line").with_options(seed=5, vmax=None)
    assert p.options["seed"] == 5 and p.options["vmax"] == 12
    assert p.window().vmax == 12
    assert fixtures.load("line").with_assumption(True).assumptions == {"equidimensional_B": True}


def test_field_forms():
    assert ProblemDescription.from_dict({"field": "GF(7)", "poly_vars": ["x"]}).field.characteristic == 7
    with pytest.raises(InputError):
        ProblemDescription.from_dict({"field": {"kind": "prime", "characteristic": 8}, "poly_vars": ["x"]})


def test_errors_carry_document_positions():
    text = '{\n  "base_vars": ["u"],\n  "poly_vars": ["x"],\n  "relations": ["u*x + q"]\n}'
    with pytest.raises(InputError) as exc:
        ProblemDescription.from_json(text)
    assert exc.value.line == 4 and exc.value.token == "q"
    assert text.splitlines()[3][exc.value.column - 1] == "q"
    with pytest.raises(InputError) as exc:
        ProblemDescription.from_json('{"poly_vars": ["x"],, }')
    assert exc.value.line == 1 and exc.value.column is not None


@pytest.mark.parametrize("doc", [
    {"poly_vars": ["x"], "colour": 1},
    {"poly_vars": ["x"], "options": {"vmax": 0}},
    {"poly_vars": ["x"], "options": {"speed": 2}},
    {"poly_vars": ["x"], "module": {"gens": 2, "shifts": [0]}},
    {"poly_vars": ["x"], "assumptions": {"equidimensional_B": "yes"}},
    {"poly_vars": ["x", "x"]},
    {"poly_vars": ["x"], "relations": ["x + 1"]},
])
def test_invalid_documents(doc):
    with pytest.raises(InputError):
        ProblemDescription.from_json(json.dumps(doc))

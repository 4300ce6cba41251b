"""Named problem descriptions used by the tests, the demos and ``selftest``.

Each entry is a document in the command-line input format.  ``presented``
maps generated (Rees) algebras to explicit presentations of the same ring,
which is what the brute-force counter needs.
"""

from __future__ import annotations

from .problem import ProblemDescription

CORPUS = {
    "line": {"base_vars": ["u"], "poly_vars": ["x"]},
    "plane": {"base_vars": ["u"], "poly_vars": ["x", "y"]},
    "field-line": {"base_vars": [], "poly_vars": ["x"]},
    "field-plane": {"base_vars": [], "poly_vars": ["x", "y"]},
    "double-line": {"base_vars": [], "poly_vars": ["x", "y"], "relations": ["x^2"], "subalgebra_gens": ["y"]},
    "scaled-line": {"base_vars": ["u"], "poly_vars": ["x"], "subalgebra_gens": ["u*x"]},
    "line-identity": {"base_vars": ["u"], "poly_vars": ["x"], "subalgebra_gens": ["x"]},
    "plane-identity": {"base_vars": ["u"], "poly_vars": ["x", "y"], "subalgebra_gens": ["x", "y"]},
    "cross": {"base_vars": ["u"], "poly_vars": ["x", "y"], "relations": ["x*y"]},
    "fiber-line": {"base_vars": ["u"], "poly_vars": ["x"], "module": {"gens": 1, "shifts": [0], "relations": [["u"]]}},
    "two-parameter-plane": {"base_vars": ["u1", "u2"], "poly_vars": ["x", "y"]},
    "degenerate-plane": {"base_vars": ["u1", "u2"], "poly_vars": ["x", "y"], "relations": ["u1*x*y"]},
    "twisted-module": {
        "base_vars": ["u"], "poly_vars": ["x", "y"],
        "module": {"gens": 2, "shifts": [0, 1], "relations": [["u*x^2", "y"]]},
    },
    "line-reduction": {
        "base_vars": [], "poly_vars": ["x", "y"],
        "module": {"gens": 1, "shifts": [0], "relations": [["y^2"]]},
        "ideal_gens": {"I": ["x"], "J": ["x", "y"]},
    },
    "plane-ideals": {"base_vars": ["u"], "poly_vars": ["x", "y"], "ideal_gens": {"I": ["x"], "J": ["x", "y"]}},
    "rees-m": {
        "base_vars": ["u1", "u2"], "poly_vars": [],
        "module_pair": {"ambient_rank": 1, "U": [["u1"], ["u2"]], "E": [["u1"], ["u2"]]},
    },
    "rees-m2": {
        "base_vars": ["u1", "u2"], "poly_vars": [],
        "module_pair": {"ambient_rank": 1, "U": [["u1^2"], ["u1*u2"], ["u2^2"]],
                        "E": [["u1^2"], ["u1*u2"], ["u2^2"]]},
    },
    "module-reduction": {
        "base_vars": ["u1", "u2"], "poly_vars": [],
        "module_pair": {"ambient_rank": 1, "U": [["u1^2"], ["u2^2"]], "E": [["u1^2"], ["u1*u2"], ["u2^2"]]},
    },
    "module-non-reduction": {
        "base_vars": ["u1", "u2"], "poly_vars": [],
        "module_pair": {"ambient_rank": 1, "U": [["u1^2"], ["u1*u2"], ["u2^2"]], "E": [["u1"], ["u2"]]},
    },
    "free-rank-two": {
        "base_vars": ["u1", "u2"], "poly_vars": [],
        "module_pair": {"ambient_rank": 2, "U": [["1", "0"], ["0", "1"]], "E": [["1", "0"], ["0", "1"]]},
    },
    "adversarial": {"base_vars": ["u"], "poly_vars": ["x"], "relations": ["u^10*x"]},
}

# explicit presentations of the Rees algebras in the corpus (same rings)
PRESENTED_REES = {
    "rees-m": {"base_vars": ["u1", "u2"], "poly_vars": ["z1", "z2"], "relations": ["u2*z1 - u1*z2"]},
    "rees-m2": {
        "base_vars": ["u1", "u2"], "poly_vars": ["z1", "z2", "z3"],
        "relations": ["u2*z1 - u1*z2", "u2*z2 - u1*z3", "z1*z3 - z2^2"],
    },
}

# fixtures small enough for exhaustive checks
ALGEBRAS = ["line", "plane", "field-line", "field-plane", "double-line", "cross", "two-parameter-plane",
            "degenerate-plane"]
MODULES = ["fiber-line", "twisted-module", "line-reduction"]


def load(name: str, **options) -> ProblemDescription:
    doc = dict(CORPUS[name])
    if options:
        doc["options"] = {**doc.get("options", {}), **options}
    return ProblemDescription.from_dict(doc)


def presented(name: str) -> ProblemDescription:
    return ProblemDescription.from_dict(PRESENTED_REES[name])


def names():
    return sorted(CORPUS)

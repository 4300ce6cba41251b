"""Problem descriptions: the JSON documents read by the command line.

Example::

    {"field": {"kind": "rational"},
     "base_vars": ["u"], "poly_vars": ["x"], "relations": [],
     "subalgebra_gens": ["u*x"],
     "options": {"seed": 0}}
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, fields

from .errors import InputError
from .exactlin import FieldDescriptor
from .graded import AlgebraPresentation, BasePresentation, ModulePairSpec, ModulePresentation, SubalgebraSpec
from .hilbert import WindowOptions

DEFAULT_OPTIONS = {
    "vmax": 12,
    "nmax": 12,
    "margin": 3,
    "seed": 0,
    "t_cap": 10,
    "n_power_cap": 8,
    "budget": None,
}

_STRING = re.compile(r'"((?:[^"\\]|\\.)*)"')

_TOP_KEYS = {"field", "base_vars", "poly_vars", "relations", "module", "subalgebra_gens", "ideal_gens",
             "module_pair", "assumptions", "options"}


def _field_from_json(obj) -> FieldDescriptor:
    if obj is None:
        return FieldDescriptor.rational()
    if isinstance(obj, str):
        text = obj.strip()
        if text in ("QQ", "rational", "Q"):
            return FieldDescriptor.rational()
        if text.startswith("GF(") and text.endswith(")"):
            try:
                return FieldDescriptor.prime(int(text[3:-1]))
            except ValueError as exc:
                raise InputError(str(exc), field="field") from None
        raise InputError(f"unknown field {obj!r}", field="field", token=obj)
    if not isinstance(obj, dict):
        raise InputError("field must be an object", field="field")
    kind = obj.get("kind", "rational")
    try:
        if kind == "rational":
            return FieldDescriptor.rational()
        if kind == "prime":
            return FieldDescriptor.prime(obj.get("characteristic"))
    except ValueError as exc:
        raise InputError(str(exc), field="field.characteristic") from None
    raise InputError(f"unknown field kind {kind!r}", field="field.kind", token=str(kind))


def _str_list(obj, name):
    if obj is None:
        return ()
    if not isinstance(obj, list) or not all(isinstance(x, (str, int)) and not isinstance(x, bool) for x in obj):
        raise InputError("expected a list of strings", field=name)
    return tuple(str(x) for x in obj)


def _columns(obj, name):
    if obj is None:
        return ()
    if not isinstance(obj, list):
        raise InputError("expected a list of columns", field=name)
    return tuple(_str_list(col, f"{name}[{j}]") for j, col in enumerate(obj))


def _int(obj, name, minimum=None):
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise InputError("expected an integer", field=name)
    if minimum is not None and obj < minimum:
        raise InputError(f"must be at least {minimum}", field=name)
    return obj


@dataclass(frozen=True)
class ProblemDescription:
    field: FieldDescriptor
    base_vars: tuple
    poly_vars: tuple
    relations: tuple = ()
    module: dict | None = None
    subalgebra_gens: tuple | None = None
    ideal_gens: dict | None = None
    module_pair: dict | None = None
    assumptions: dict = field(default_factory=lambda: {"equidimensional_B": False})
    options: dict = field(default_factory=lambda: dict(DEFAULT_OPTIONS))

    def __hash__(self):
        return hash(json.dumps(self.to_dict(), sort_keys=True))

    # -- (de)serialization ---------------------------------------------------

    @classmethod
    def from_dict(cls, doc: dict) -> ProblemDescription:
        if not isinstance(doc, dict):
            raise InputError("the problem description must be a JSON object")
        unknown = set(doc) - _TOP_KEYS
        if unknown:
            raise InputError(f"unknown keys {sorted(unknown)}", field="(top level)", token=sorted(unknown)[0])
        fld = _field_from_json(doc.get("field"))
        base_vars = _str_list(doc.get("base_vars", []), "base_vars")
        poly_vars = _str_list(doc.get("poly_vars", []), "poly_vars")
        relations = _str_list(doc.get("relations", []), "relations")

        module = None
        if doc.get("module") is not None:
            m = doc["module"]
            if not isinstance(m, dict):
                raise InputError("module must be an object", field="module")
            shifts = m.get("shifts")
            gens = m.get("gens", len(shifts) if isinstance(shifts, list) else None)
            gens = _int(gens, "module.gens", 1)
            if shifts is None:
                shifts = [0] * gens
            if not isinstance(shifts, list) or len(shifts) != gens:
                raise InputError("module.shifts must list one degree per generator", field="module.shifts")
            shifts = tuple(_int(d, "module.shifts") for d in shifts)
            module = {"gens": gens, "shifts": shifts, "relations": _columns(m.get("relations", []), "module.relations")}

        sub = doc.get("subalgebra_gens")
        sub = None if sub is None else _str_list(sub, "subalgebra_gens")

        ideal = None
        if doc.get("ideal_gens") is not None:
            ig = doc["ideal_gens"]
            if isinstance(ig, list):
                ig = {"I": ig}
            if not isinstance(ig, dict) or set(ig) - {"I", "J"}:
                raise InputError("ideal_gens must be an object with keys I and J", field="ideal_gens")
            ideal = {k: _str_list(ig[k], f"ideal_gens.{k}") for k in ("I", "J") if k in ig}

        pair = None
        if doc.get("module_pair") is not None:
            mp = doc["module_pair"]
            if not isinstance(mp, dict):
                raise InputError("module_pair must be an object", field="module_pair")
            e = _int(mp.get("ambient_rank"), "module_pair.ambient_rank", 1)
            E = _columns(mp.get("E"), "module_pair.E")
            U = _columns(mp.get("U", mp.get("E")), "module_pair.U")
            pair = {"ambient_rank": e, "U": U, "E": E}

        assumptions = doc.get("assumptions") or {}
        if not isinstance(assumptions, dict) or set(assumptions) - {"equidimensional_B"}:
            raise InputError("assumptions may only contain equidimensional_B", field="assumptions")
        eq = assumptions.get("equidimensional_B", False)
        if not isinstance(eq, bool):
            raise InputError("equidimensional_B must be true or false", field="assumptions.equidimensional_B")

        opts = dict(DEFAULT_OPTIONS)
        given = doc.get("options") or {}
        if not isinstance(given, dict):
            raise InputError("options must be an object", field="options")
        for k, v in given.items():
            if k not in DEFAULT_OPTIONS:
                raise InputError(f"unknown option {k!r}", field="options", token=k)
            if v is None and k == "budget":
                opts[k] = None
                continue
            opts[k] = _int(v, f"options.{k}", 0 if k == "seed" else 1)
        if isinstance(opts["seed"], int) and opts["seed"] < 0:
            raise InputError("seed must be nonnegative", field="options.seed")

        return cls(fld, base_vars, poly_vars, relations, module, sub, ideal, pair,
                   {"equidimensional_B": eq}, opts)

    @classmethod
    def from_json(cls, text: str) -> ProblemDescription:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            tok = exc.doc[exc.pos] if 0 <= exc.pos < len(exc.doc) else None
            raise InputError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno, token=tok) from None
        try:
            problem = cls.from_dict(doc)
            problem.validate()
        except InputError as exc:
            raise _locate(exc, text) from None
        return problem

    def to_dict(self) -> dict:
        out = {
            "field": self.field.to_json(),
            "base_vars": list(self.base_vars),
            "poly_vars": list(self.poly_vars),
            "relations": list(self.relations),
        }
        if self.module is not None:
            out["module"] = {
                "gens": self.module["gens"],
                "shifts": list(self.module["shifts"]),
                "relations": [list(c) for c in self.module["relations"]],
            }
        if self.subalgebra_gens is not None:
            out["subalgebra_gens"] = list(self.subalgebra_gens)
        if self.ideal_gens is not None:
            out["ideal_gens"] = {k: list(v) for k, v in self.ideal_gens.items()}
        if self.module_pair is not None:
            mp = self.module_pair
            out["module_pair"] = {
                "ambient_rank": mp["ambient_rank"],
                "U": [list(c) for c in mp["U"]],
                "E": [list(c) for c in mp["E"]],
            }
        out["assumptions"] = dict(self.assumptions)
        out["options"] = dict(self.options)
        return out

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def with_options(self, **changes) -> ProblemDescription:
        opts = dict(self.options)
        opts.update({k: v for k, v in changes.items() if v is not None})
        kwargs = {f.name: getattr(self, f.name) for f in fields(self)}
        kwargs["options"] = opts
        return ProblemDescription(**kwargs)

    def with_assumption(self, equidimensional: bool) -> ProblemDescription:
        kwargs = {f.name: getattr(self, f.name) for f in fields(self)}
        kwargs["assumptions"] = {"equidimensional_B": bool(equidimensional)}
        return ProblemDescription(**kwargs)

    # -- building objects ----------------------------------------------------

    def validate(self):
        """Parse every polynomial so malformed input fails before any computation."""
        B = self.algebra()
        if self.module is not None:
            self.module_object()
        if self.subalgebra_gens is not None:
            self.subalgebra()
        if self.ideal_gens is not None:
            for k, gens in self.ideal_gens.items():
                B.parse_elements(gens, degree=1, field=f"ideal_gens.{k}")
        if self.module_pair is not None:
            self.pair()

    def base(self) -> BasePresentation:
        return BasePresentation(self.base_vars, self.field)

    def algebra(self) -> AlgebraPresentation:
        cached = self.__dict__.get("_algebra")
        if cached is None:
            cached = AlgebraPresentation(self.base(), self.poly_vars, self.relations)
            object.__setattr__(self, "_algebra", cached)
        return cached

    def module_object(self):
        """The module M (B itself when no module is given)."""
        cached = self.__dict__.get("_module")
        if cached is None:
            B = self.algebra()
            if self.module is None:
                cached = B
            else:
                cols = self.module["relations"]
                for j, c in enumerate(cols):
                    if len(c) != self.module["gens"]:
                        raise InputError(f"column {j} needs {self.module['gens']} entries",
                                         field="module.relations")
                cached = ModulePresentation(B, self.module["shifts"], cols)
            object.__setattr__(self, "_module", cached)
        return cached

    def subalgebra(self) -> SubalgebraSpec:
        if self.subalgebra_gens is None:
            raise InputError("this command needs subalgebra_gens", field="subalgebra_gens")
        return SubalgebraSpec(self.algebra(), list(self.subalgebra_gens))

    def ideals(self):
        if not self.ideal_gens or "I" not in self.ideal_gens:
            raise InputError("this command needs ideal_gens.I", field="ideal_gens")
        return list(self.ideal_gens["I"]), list(self.ideal_gens.get("J", ()))

    def pair(self) -> ModulePairSpec:
        if self.module_pair is None:
            raise InputError("this command needs module_pair", field="module_pair")
        cached = self.__dict__.get("_pair")
        if cached is None:
            mp = self.module_pair
            cached = ModulePairSpec(self.base(), mp["ambient_rank"], [list(c) for c in mp["U"]],
                                    [list(c) for c in mp["E"]], seed=self.options.get("seed", 0))
            object.__setattr__(self, "_pair", cached)
        return cached

    def window(self) -> WindowOptions:
        o = self.options
        return WindowOptions(vmax=o["vmax"], nmax=o["nmax"], margin=o["margin"])


def _locate(exc: InputError, text: str) -> InputError:
    """Report the document line and column of the offending token."""
    token = exc.token
    if not token:
        return exc
    root = (exc.field or "").split(".")[0].split("[")[0]
    rows = text.splitlines()
    start = 0
    if root:
        for k, row in enumerate(rows):
            if f'"{root}"' in row:
                start = k
                break
    order = list(range(start, len(rows))) + list(range(start))
    message = str(exc).split(" (")[0]
    if exc.column is not None:
        # a polynomial string: match the token at the reported offset inside a literal
        for k in order:
            for lit in _STRING.finditer(rows[k]):
                if lit.group(1)[exc.column - 1:].startswith(str(token)):
                    return InputError(message, line=k + 1, column=lit.start(1) + exc.column,
                                      token=token, field=exc.field)
    for k in order:
        at = rows[k].find(str(token))
        if at >= 0:
            return InputError(message, line=k + 1, column=at + 1, token=token, field=exc.field)
    return exc


def load_problem(path_or_text) -> ProblemDescription:
    return ProblemDescription.from_json(path_or_text)

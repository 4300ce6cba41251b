"""Graded objects built from others: quotients, colons, torsion, submodules,
image algebras, I-adic filtrations and associated graded modules, and Rees
algebras of embedded module pairs.
"""

from __future__ import annotations

import random

from ..errors import InputError, NotContained, RankDeficient
from ..exactlin import PieceModule, direct_sum, kernel_vectors, subquotient, torsion_presentation
from ..exactlin.local import rank_of_rows
from ..exactlin.vectors import monomials_of_degree
from .presentation import (
    AlgebraPresentation,
    BasePresentation,
    GeneratedAlgebra,
    GradedObject,
    ModulePresentation,
    SubalgebraSpec,
    prune,
)


def combine(coeffs: dict, vectors, fld) -> dict:
    """sum_j a_j * vectors[j] for a = {(j, u_exps): c}."""
    out = {}
    for (j, ue), c in coeffs.items():
        for (p, e), cv in vectors[j].items():
            t = (p, tuple(x + y for x, y in zip(e, ue)))
            nv = fld.add(out.get(t, 0), fld.mul(c, cv))
            if nv == 0:
                out.pop(t, None)
            else:
                out[t] = nv
    return out


class _Wrapper(GradedObject):
    """Delegates the ambient (frame, act, relations, span) to ``base``."""

    def __init__(self, base: GradedObject):
        self.base = base
        self.ring = base.ring
        self.min_degree = base.min_degree

    def frame(self, v):
        return self.base.frame(v)

    def relations(self, v):
        return self.base.relations(v)

    def span(self, v):
        return self.base.span(v)

    def act(self, b, vec, v):
        return self.base.act(b, vec, v)

    def algebra(self):
        return self.base.algebra()


class QuotientModule(_Wrapper):
    """M / bM for an x-homogeneous element b of B."""

    def __init__(self, base, b):
        super().__init__(base)
        if not b:
            raise InputError("cannot divide by the zero element")
        self.b = b
        self.alpha = self.ring.x_degree(b)
        self._rels = {}

    def relations(self, v):
        r = self._rels.get(v)
        if r is None:
            r = list(self.base.relations(v))
            w = v - self.alpha
            if w >= self.min_degree:
                r.extend(x for x in (self.base.act(self.b, g, w) for g in self.base.generators(w)) if x)
            self._rels[v] = r
        return r


class ColonModule(_Wrapper):
    """(0 :_M b), computed piecewise as the kernel of multiplication by b."""

    def __init__(self, base, b):
        super().__init__(base)
        self.b = b
        self.alpha = self.ring.x_degree(b)
        self._spans = {}

    def span(self, v):
        sp = self._spans.get(v)
        if sp is None:
            gens = self.base.generators(v)
            if not gens or not self.b:
                sp = list(gens)
            else:
                images = [self.base.act(self.b, g, v) for g in gens]
                target = len(self.base.frame(v + self.alpha))
                ker = kernel_vectors(images, target, self.base.relations(v + self.alpha), self.nvars, self.fld)
                sp = prune([combine(a, gens, self.fld) for a in ker], self.fld)
            self._spans[v] = sp
        return sp


class TorsionModule(GradedObject):
    """H^0_m(M) = (0 :_M m^inf); only its pieces are needed."""

    def __init__(self, base):
        self.base = base
        self.ring = base.ring
        self.min_degree = base.min_degree

    def _build_piece(self, v):
        return torsion_presentation(self.base.piece(v))


class SubmoduleGenerated(_Wrapper):
    """The B-submodule of M generated by homogeneous elements given as
    ``(degree, vector of F_degree)``.
    """

    def __init__(self, base, elements):
        super().__init__(base)
        self.elements = [(d, w) for d, w in elements if w]
        self._spans = {}

    def span(self, v):
        sp = self._spans.get(v)
        if sp is None:
            cands = []
            m = self.ring.m
            for d, w in self.elements:
                if v < d:
                    continue
                for mono in monomials_of_degree(m, v - d):
                    cands.append(self.base.act({(mono, self.ring.uzero): 1}, w, d))
            sp = prune(cands, self.fld)
            self._spans[v] = sp
        return sp


class IdealFiltration:
    """Layers [I^k X]_v = sum of (products of k generators of I) * X_{v-k},
    for an ideal I of B generated by degree-1 elements.
    """

    def __init__(self, base: GradedObject, gens):
        self.base = base
        self.gens = list(gens)
        for g in self.gens:
            if base.ring.x_degree(g) != 1:
                raise InputError("ideal generators must have degree 1")
        self._layers = {}

    def layer(self, k, v):
        key = (k, v)
        out = self._layers.get(key)
        if out is None:
            if v < self.base.min_degree:
                out = []
            elif k == 0:
                out = list(self.base.generators(v))
            else:
                prev = self.layer(k - 1, v - 1)
                out = prune([self.base.act(g, w, v - 1) for g in self.gens for w in prev], self.base.fld)
            self._layers[key] = out
        return out

    def layer_piece(self, k, v) -> PieceModule:
        """[I^k X]_v as a k[u]-module."""
        b = self.base
        return subquotient(len(b.frame(v)), self.layer(k, v), [], b.relations(v), b.nvars, b.fld)

    def top_index(self, v):
        return v - self.base.min_degree


class ImageAlgebra(_Wrapper):
    """The image of A in B: pieces A_v = [A_+^v B]_v."""

    def __init__(self, base: AlgebraPresentation, sub: SubalgebraSpec):
        super().__init__(base)
        self.filtration = IdealFiltration(base, sub.gens)

    def span(self, v):
        return self.filtration.layer(v, v)


class GrModule(GradedObject):
    """gr_I(X) = ⊕_k I^kX/I^{k+1}X with its total grading, or the quotient
    G/B_tG that keeps only the summands whose B-degree v-k is below t.
    """

    def __init__(self, filtration: IdealFiltration, t: int | None = None, summand_memo=None):
        self.filtration = filtration
        self.ring = filtration.base.ring
        self.min_degree = filtration.base.min_degree
        self.t = t
        self._summands = summand_memo if summand_memo is not None else {}

    def truncate(self, t):
        """G/B_tG sharing this object's summand cache."""
        return GrModule(self.filtration, t, self._summands)

    def summand(self, k, v) -> PieceModule:
        key = (k, v)
        P = self._summands.get(key)
        if P is None:
            f = self.filtration
            b = f.base
            P = subquotient(len(b.frame(v)), f.layer(k, v), f.layer(k + 1, v), b.relations(v), b.nvars, b.fld)
            self._summands[key] = P
        return P

    def summand_range(self, v):
        top = self.filtration.top_index(v)
        lo = 0 if self.t is None else max(0, v - self.t + 1)
        return range(lo, top + 1)

    def _build_piece(self, v):
        return direct_sum([self.summand(k, v) for k in self.summand_range(v)], self.nvars, self.fld)


# ---------------------------------------------------------------------------
# piece builders used by the criteria


def power_piece(B: AlgebraPresentation, A: SubalgebraSpec, k: int, v: int):
    """Generators of [A_+^k B]_v = A_k B_{v-k} inside the frame of B_v."""
    if k > v:
        raise ValueError("power_piece needs k <= v")
    return _filtration_for(B, A).layer(k, v)


def _filtration_for(B, A):
    cache = B.__dict__.setdefault("_filtrations", {})
    key = id(A)
    f = cache.get(key)
    if f is None or f[0] is not A:
        f = (A, IdealFiltration(B, A.gens))
        cache[key] = f
    return f[1]


def quotient_piece(top, bottom, ambient: PieceModule) -> PieceModule:
    """top/bottom for submodules of an ambient piece given by generators.

    Raises NotContained when some generator of bottom is not in top.
    """
    for b in bottom:
        check = subquotient(ambient.rank, list(top) + [b], list(top), ambient.relations,
                            ambient.nvars, ambient.fld)
        if not check.is_zero():
            raise NotContained("bottom is not contained in top")
    return subquotient(ambient.rank, list(top), list(bottom), ambient.relations, ambient.nvars, ambient.fld)


def quotient_by_element(M, b):
    """M/bM.  For explicit presentations the columns b*e_i are appended."""
    if isinstance(M, ModulePresentation) and not isinstance(M, GeneratedAlgebra) and not isinstance(M, AlgebraPresentation):
        cols = [list(col) for _d, col in M.columns]
        for i in range(M.rank):
            col = [{} for _ in range(M.rank)]
            col[i] = b
            cols.append(col)
        return ModulePresentation(M.algebra(), M.shifts, cols)
    if isinstance(M, AlgebraPresentation) and not isinstance(M, GeneratedAlgebra):
        return ModulePresentation(M, [0], [[b]])
    return QuotientModule(M, b)


def colon_element_piece(M, b, v) -> PieceModule:
    return ColonModule(M, b).piece(v)


def torsion_piece(M, v) -> PieceModule:
    return TorsionModule(M).piece(v)


def locally_contains(ambient_rank, gens, relations, w, nvars, fld) -> bool:
    """Is w in <gens> + <relations> after localizing at m?"""
    if not w:
        return True
    P = subquotient(ambient_rank, [w], list(gens), relations, nvars, fld)
    return P.is_zero()


class ModulePairSpec:
    """U ⊆ E ⊆ R^e, given by columns (lists of e polynomials in the base variables)."""

    def __init__(self, base: BasePresentation, ambient_rank: int, U, E, seed: int = 0):
        if ambient_rank < 1:
            raise InputError("ambient_rank must be at least 1", field="module_pair.ambient_rank")
        self.base = base
        self.e = ambient_rank
        names = _fresh_names(base.base_vars, ambient_rank)
        self.ambient = AlgebraPresentation(base, names, [])
        ring = self.ambient.ring
        self.U = self._parse_columns(U, "U")
        self.E = self._parse_columns(E, "E")
        self.z_names = names
        for which, cols in (("U", self.U), ("E", self.E)):
            if not _generic_rank_ok(cols, self.e, base, seed):
                raise RankDeficient(f"the columns of {which} do not have rank {self.e}")
        Evecs = [self._column_vector(c) for c in self.E]
        for j, c in enumerate(self.U):
            if not locally_contains(self.e, Evecs, [], self._column_vector(c), base.s, base.fld):
                raise NotContained(f"column {j} of U is not in the span of E")
        self._ring = ring

    def _parse_columns(self, cols, which):
        ring = self.ambient.ring
        out = []
        for j, col in enumerate(cols):
            if len(col) != self.e:
                raise InputError(f"column {j} of {which} has {len(col)} entries, expected {self.e}",
                                 field=f"module_pair.{which}")
            parsed = []
            for i, f in enumerate(col):
                g = ring.parse(f, field=f"module_pair.{which}[{j}][{i}]") if isinstance(f, str) else f
                if ring.x_degrees(g) - {0}:
                    raise InputError("module columns must only involve base variables",
                                     field=f"module_pair.{which}[{j}][{i}]")
                parsed.append(g)
            out.append(parsed)
        if not out:
            raise InputError(f"{which} needs at least one column", field=f"module_pair.{which}")
        return out

    def _column_vector(self, col):
        return {(i, u): c for i, f in enumerate(col) for (_x, u), c in f.items()}

    def linear_form(self, col):
        """sum_i col_i z_i as a degree-1 polynomial."""
        ring = self.ambient.ring
        out = {}
        for i, f in enumerate(col):
            z = tuple(1 if j == i else 0 for j in range(self.e))
            for (_x, u), c in f.items():
                out[(z, u)] = c
        return out

    def rees(self, which="E") -> GeneratedAlgebra:
        cols = self.E if which == "E" else self.U
        cache = self.__dict__.setdefault("_rees", {})
        if which not in cache:
            cache[which] = GeneratedAlgebra(self.base, self.z_names, [self.linear_form(c) for c in cols])
        return cache[which]


def _fresh_names(taken, e):
    names = []
    i = 1
    while len(names) < e:
        n = f"z{i}"
        if n not in taken:
            names.append(n)
        i += 1
    return names


def _generic_rank_ok(cols, e, base, seed) -> bool:
    rng = random.Random(seed)
    fld = base.fld
    for _attempt in range(4):
        point = [rng.randint(-97, 97) for _ in range(base.s)]
        rows = []
        for i in range(e):
            row = {}
            for j, col in enumerate(cols):
                val = 0
                for (_x, u), c in col[i].items():
                    term = c
                    for a, p in zip(u, point):
                        term *= p ** a
                    val += term
                val = fld(val)
                if val != 0:
                    row[j] = val
            rows.append(row)
        if rank_of_rows(rows, fld) == e:
            return True
    return False


def rees_algebra(P: ModulePairSpec, which="E"):
    """(Rees algebra of E, subalgebra spec for the Rees algebra of U inside it)."""
    RE = P.rees("E")
    A = SubalgebraSpec(RE, [P.linear_form(c) for c in P.U])
    if which == "U":
        return P.rees("U"), A
    return RE, A


__all__ = [
    "BasePresentation",
    "ColonModule",
    "GrModule",
    "IdealFiltration",
    "ImageAlgebra",
    "ModulePairSpec",
    "QuotientModule",
    "SubmoduleGenerated",
    "TorsionModule",
    "colon_element_piece",
    "locally_contains",
    "power_piece",
    "quotient_by_element",
    "quotient_piece",
    "rees_algebra",
    "torsion_piece",
]

"""Graded algebras and modules over R = k[u]_(u), and their graded pieces.

Every graded object exposes the same small protocol, used by the wrappers in
:mod:`polarmult.graded.derived` and by the Hilbert code:

``frame(v)``
    labels ``(generator, x_monomial)`` of a free k[u]-module F_v
``relations(v)``
    vectors generating a submodule Rel_v of F_v
``span(v)``
    vectors generating a submodule S_v of F_v, or None for all of F_v
``act(b, vec, v)``
    multiply a vector of F_v by an x-homogeneous polynomial b
``piece(v)``
    the k[u]-module (S_v + Rel_v) / Rel_v as a :class:`PieceModule`
"""

from __future__ import annotations

from ..errors import InputError
from ..exactlin import QQ, FieldDescriptor, PieceModule, subquotient
from ..exactlin.groebner import groebner
from ..exactlin.vectors import DegRevLexTOP, monomials_of_degree
from .parse import PolyRing

_ORDER = DegRevLexTOP()


def prune(vectors, fld):
    """Replace a generating set by the reduced Gröbner basis of its span."""
    vectors = [v for v in vectors if v]
    if len(vectors) <= 1:
        return vectors
    return groebner(vectors, _ORDER, fld)


def add_tuples(a, b):
    return tuple(x + y for x, y in zip(a, b))


class BasePresentation:
    """The base ring k[u_1..u_s] localized at (u_1..u_s)."""

    def __init__(self, base_vars=(), fld: FieldDescriptor = QQ):
        self.base_vars = tuple(base_vars)
        self.fld = fld
        if len(set(self.base_vars)) != len(self.base_vars):
            raise InputError("base variable names must be distinct", field="base_vars")

    @property
    def s(self):
        return len(self.base_vars)

    def __repr__(self):
        return f"BasePresentation({list(self.base_vars)}, {self.fld})"


class GradedObject:
    """Shared machinery: memoized pieces and the generators of each S_v."""

    ring: PolyRing
    min_degree: int = 0

    @property
    def nvars(self):
        return self.ring.s

    @property
    def fld(self):
        return self.ring.fld

    def frame(self, v):
        raise NotImplementedError

    def relations(self, v):
        raise NotImplementedError

    def span(self, v):
        return None

    def act(self, b, vec, v):
        raise NotImplementedError

    def generators(self, v):
        """Vectors of F_v generating the piece (unit vectors when span is None)."""
        sp = self.span(v)
        if sp is not None:
            return sp
        zero = self.ring.uzero
        return [{(j, zero): 1} for j in range(len(self.frame(v)))]

    def piece(self, v) -> PieceModule:
        memo = self.__dict__.setdefault("_piece_memo", {})
        P = memo.get(v)
        if P is None:
            P = self._build_piece(v)
            memo[v] = P
        return P

    def _build_piece(self, v):
        fr = self.frame(v)
        return subquotient(len(fr), self.span(v), [], self.relations(v), self.nvars, self.fld, labels=fr)

    def algebra(self):
        raise NotImplementedError


class ModulePresentation(GradedObject):
    """Cokernel of a graded matrix over B: generators e_i of degree shifts[i],
    relation columns given as lists of polynomials (one entry per generator).
    """

    def __init__(self, algebra, shifts, columns=()):
        self._algebra = algebra
        self.ring = algebra.ring
        self.shifts = tuple(int(d) for d in shifts)
        if not self.shifts:
            raise InputError("a module needs at least one generator", field="module.shifts")
        cols = []
        for j, col in enumerate(columns):
            col = [self.ring.parse(f, field=f"module.relations[{j}]") if isinstance(f, str) else f
                   for f in col]
            if len(col) != len(self.shifts):
                raise InputError(
                    f"relation column {j} has {len(col)} entries, expected {len(self.shifts)}",
                    field="module.relations",
                )
            deg = None
            for i, f in enumerate(col):
                d = self.ring.x_degree(f)
                if d is None:
                    continue
                if deg is None:
                    deg = d + self.shifts[i]
                elif deg != d + self.shifts[i]:
                    raise InputError(
                        f"relation column {j} is not homogeneous (entry {i} has degree {d})",
                        field="module.relations",
                    )
            if deg is not None:
                cols.append((deg, col))
        self.columns = cols
        self.min_degree = min(self.shifts)
        self._frames = {}
        self._rels = {}

    def algebra(self):
        return self._algebra

    @property
    def rank(self):
        return len(self.shifts)

    def frame(self, v):
        fr = self._frames.get(v)
        if fr is None:
            m = self.ring.m
            fr = []
            for i, d in enumerate(self.shifts):
                if v - d >= 0:
                    fr.extend((i, mono) for mono in monomials_of_degree(m, v - d))
            index = {lab: k for k, lab in enumerate(fr)}
            self._frames[v] = (fr, index)
            fr = (fr, index)
        return fr[0]

    def frame_index(self, v):
        self.frame(v)
        return self._frames[v][1]

    def element(self, polys, degree):
        """Vector of F_degree for the module element sum polys[i] e_i."""
        index = self.frame_index(degree)
        vec = {}
        for i, f in enumerate(polys):
            for (x, u), c in f.items():
                if sum(x) + self.shifts[i] != degree:
                    raise InputError("element is not homogeneous of the stated degree")
                vec[(index[(i, x)], u)] = c
        return vec

    def act(self, b, vec, v):
        if not b or not vec:
            return {}
        alpha = self.ring.x_degree(b)
        src = self.frame(v)
        dst = self.frame_index(v + alpha)
        fld = self.fld
        out = {}
        for (pos, ue), c in vec.items():
            i, xm = src[pos]
            for (bx, bu), bc in b.items():
                t = (dst[(i, add_tuples(xm, bx))], add_tuples(ue, bu))
                nv = fld.add(out.get(t, 0), fld.mul(c, bc))
                if nv == 0:
                    out.pop(t, None)
                else:
                    out[t] = nv
        return out

    def monomial(self, xexps):
        return {(tuple(xexps), self.ring.uzero): 1}

    def relations(self, v):
        rels = self._rels.get(v)
        if rels is not None:
            return rels
        rels = []
        m = self.ring.m
        for deg, col in self.columns:
            if deg > v:
                continue
            base = self.element(col, deg)
            for mono in monomials_of_degree(m, v - deg):
                rels.append(self.act(self.monomial(mono), base, deg))
        alg = self._algebra
        for i, d in enumerate(self.shifts):
            for f, delta in alg.relation_degrees:
                if v - d - delta < 0:
                    continue
                polys = [{} for _ in self.shifts]
                polys[i] = f
                base = self.element(polys, d + delta)
                for mono in monomials_of_degree(m, v - d - delta):
                    rels.append(self.act(self.monomial(mono), base, d + delta))
        rels = [r for r in rels if r]
        self._rels[v] = rels
        return rels

    def __repr__(self):
        return f"ModulePresentation(shifts={list(self.shifts)}, columns={len(self.columns)})"


class AlgebraPresentation(ModulePresentation):
    """B = R[x_1..x_m]/I with x-homogeneous relations; also B as a module over itself."""

    def __init__(self, base: BasePresentation, poly_vars, relations=(), subalgebra_gens=None,
                 ideal_gens=None):
        self.base = base
        ring = PolyRing(base.base_vars, poly_vars, base.fld)
        self.ring = ring
        parsed = []
        for k, f in enumerate(relations):
            if isinstance(f, str):
                f = ring.parse(f, field=f"relations[{k}]")
            d = ring.x_degree(f)
            if d is None:
                continue
            parsed.append((f, d))
        self.relation_degrees = parsed
        super().__init__(self, [0], [])
        self.subalgebra_gens = subalgebra_gens
        self.ideal_gens = ideal_gens

    @property
    def relation_polys(self):
        return [f for f, _d in self.relation_degrees]

    def algebra_generators(self):
        """Degree-1 algebra generators of B (the x variables)."""
        return [self.ring.var(x) for x in self.ring.poly_vars]

    def embed(self, f):
        """Vector of F_d for an x-homogeneous polynomial f of degree d."""
        d = self.ring.x_degree(f)
        return self.element([f], d)

    def parse_elements(self, items, *, degree=None, field="elements"):
        out = []
        for k, f in enumerate(items):
            if isinstance(f, str):
                f = self.ring.parse(f, field=f"{field}[{k}]")
            d = self.ring.x_degree(f)
            if degree is not None and d is not None and d != degree:
                raise InputError(f"element {self.ring.format(f)} has degree {d}, expected {degree}",
                                 field=field)
            if d is None and degree is not None:
                raise InputError("zero element where a degree-1 generator is required", field=field)
            out.append(f)
        return out

    def __repr__(self):
        return (f"AlgebraPresentation(base={list(self.ring.base_vars)}, vars={list(self.ring.poly_vars)}, "
                f"relations={len(self.relation_degrees)})")


class GeneratedAlgebra(AlgebraPresentation):
    """The R-subalgebra of R[z_1..z_e] generated by given linear forms.

    Pieces are submodules of the free pieces of R[z]; this is how Rees algebras
    of modules embedded in R^e are realized.
    """

    def __init__(self, base: BasePresentation, poly_vars, generators):
        super().__init__(base, poly_vars, [])
        gens = self.parse_elements(generators, degree=1, field="generators")
        if not gens:
            raise InputError("a generated algebra needs at least one generator", field="generators")
        self.gens = gens
        self._spans = {}

    def algebra_generators(self):
        return list(self.gens)

    def span(self, v):
        sp = self._spans.get(v)
        if sp is None:
            if v == 0:
                sp = [{(0, self.ring.uzero): 1}]
            elif v < 0:
                sp = []
            else:
                prev = self.span(v - 1)
                sp = prune([self.act(g, w, v - 1) for g in self.gens for w in prev], self.fld)
            self._spans[v] = sp
        return sp

    def __repr__(self):
        return f"GeneratedAlgebra(vars={list(self.ring.poly_vars)}, generators={len(self.gens)})"


class SubalgebraSpec:
    """A ⊆ B given by degree-1 elements of B generating A_1 over R."""

    def __init__(self, algebra: AlgebraPresentation, generators):
        gens = algebra.parse_elements(generators, degree=1, field="subalgebra_gens")
        if not gens:
            raise InputError("subalgebra needs at least one generator", field="subalgebra_gens")
        self.algebra = algebra
        self.gens = gens

    def __repr__(self):
        return f"SubalgebraSpec({[self.algebra.ring.format(g) for g in self.gens]})"


def algebra_piece(B: AlgebraPresentation, v: int) -> PieceModule:
    return B.piece(v)


def module_piece(M: GradedObject, v: int) -> PieceModule:
    return M.piece(v)


def polynomial_ring(base_vars, poly_vars, relations=(), fld=QQ) -> AlgebraPresentation:
    """Shorthand: k[u][x]/(relations) with the given variable names."""
    return AlgebraPresentation(BasePresentation(base_vars, fld), poly_vars, relations)


def free_module(B: AlgebraPresentation, shifts) -> ModulePresentation:
    return ModulePresentation(B, shifts, [])

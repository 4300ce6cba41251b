"""Buchberger's algorithm for submodules of free k[u]-modules, plus the derived
operations (normal forms, kernels, saturation) the graded layer is built on.
"""

from __future__ import annotations

import heapq
from contextlib import contextmanager
from contextvars import ContextVar

from ..errors import BudgetExceeded, RankMismatch
from .field import QQ
from .vectors import (
    BlockElimination,
    DegRevLexTOP,
    TermOrder,
    axpy,
    canonical,
    divides,
    lcm_exps,
    restrict,
    sub_exps,
)

DEFAULT_BUDGET = 2_000_000
MAX_BASE_VARIABLES = 8

_budget: ContextVar[int] = ContextVar("polarmult_budget", default=DEFAULT_BUDGET)


@contextmanager
def step_budget(n: int | None):
    """Temporarily change the step budget of every completion loop."""
    if n is None:
        yield
        return
    token = _budget.set(int(n))
    try:
        yield
    finally:
        _budget.reset(token)


def current_budget() -> int:
    return _budget.get()


class _Element:
    __slots__ = ("vec", "lt", "pos", "exps")

    def __init__(self, vec, lt):
        self.vec = vec
        self.lt = lt
        self.pos, self.exps = lt


def _make_monic(vec, lt, fld):
    c = vec[lt]
    if c == 1:
        return vec
    inv = fld.inv(c)
    mul = fld.mul
    return {t: mul(inv, cv) for t, cv in vec.items()}


def reduce_vector(f: dict, elements, order: TermOrder, fld, index=None) -> dict:
    """Fully reduce f by monic elements (objects with .vec/.lt) and return the remainder."""
    if index is None:
        index = _index(elements)
    key = order.key
    p = dict(f)
    rem = {}
    neg = fld.neg
    while p:
        t = max(p, key=key)
        c = p[t]
        g = _find_divisor(index, t)
        if g is None:
            rem[t] = c
            del p[t]
            continue
        axpy(p, neg(c), sub_exps(t[1], g.exps), g.vec, fld)
    return rem


def _index(elements):
    idx: dict = {}
    for g in elements:
        idx.setdefault(g.pos, []).append(g)
    return idx


def _find_divisor(index, t):
    pos, e = t
    for g in index.get(pos, ()):
        if divides(g.exps, e):
            return g
    return None


def _spoly(a: _Element, b: _Element, lcm, fld):
    out: dict = {}
    axpy(out, 1, sub_exps(lcm, a.exps), a.vec, fld)
    axpy(out, fld.neg(1), sub_exps(lcm, b.exps), b.vec, fld)
    return out


def groebner(gens, order: TermOrder, fld=QQ, budget: int | None = None) -> list[dict]:
    """Reduced Gröbner basis of the submodule generated by ``gens``.

    Uses the normal selection strategy and the Gebauer-Möller pair criteria.
    The output is sorted by decreasing leading term, so it is fully determined
    by the submodule and the order.
    """
    if budget is None:
        budget = _budget.get()
    key = order.key
    gens = [g for g in gens if g]
    if not gens:
        return []
    ideal_case = all(p == 0 for g in gens for (p, _e) in g)

    elements: list[_Element] = []
    active: list[int] = []
    index: dict = {}
    pairs: dict = {}
    heap: list = []
    steps = 0

    def insert(vec):
        lt = max(vec, key=key)
        vec = _make_monic(vec, lt, fld)
        h = _Element(vec, lt)
        hi = len(elements)
        elements.append(h)
        index.setdefault(h.pos, []).append(h)
        _update(hi)

    def _update(hi):
        h = elements[hi]
        cand = []
        for gi in active:
            g = elements[gi]
            if g.pos != h.pos:
                continue
            cand.append((gi, lcm_exps(g.exps, h.exps)))
        keep = []
        for n, (gi, lc) in enumerate(cand):
            g = elements[gi]
            coprime = ideal_case and all(
                a == 0 or b == 0 for a, b in zip(g.exps, h.exps)
            )
            if coprime:
                keep.append((gi, lc, True))
                continue
            dominated = False
            for m, (gj, lc2) in enumerate(cand):
                if m == n:
                    continue
                if divides(lc2, lc) and (lc2 != lc or m < n):
                    dominated = True
                    break
            if not dominated:
                keep.append((gi, lc, False))
        # drop old pairs killed by the new leading term
        for pk in list(pairs):
            i, j = pk
            lc = pairs[pk]
            a, b = elements[i], elements[j]
            if a.pos != h.pos or not divides(h.exps, lc):
                continue
            if lcm_exps(a.exps, h.exps) != lc and lcm_exps(b.exps, h.exps) != lc:
                del pairs[pk]
        for gi, lc, coprime in keep:
            if coprime:
                continue
            pk = (gi, hi)
            pairs[pk] = lc
            heapq.heappush(heap, (key((h.pos, lc)), pk))
        still = []
        for gi in active:
            g = elements[gi]
            if g.pos == h.pos and divides(h.exps, g.exps):
                continue
            still.append(gi)
        still.append(hi)
        active[:] = still

    for g in gens:
        r = reduce_vector(g, elements, order, fld, index)
        if r:
            insert(r)

    while heap:
        _k, pk = heapq.heappop(heap)
        lc = pairs.pop(pk, None)
        if lc is None:
            continue
        steps += 1
        if steps > budget:
            raise BudgetExceeded(f"Gröbner basis computation exceeded {budget} pair steps")
        i, j = pk
        s = _spoly(elements[i], elements[j], lc, fld)
        r = reduce_vector(s, elements, order, fld, index)
        if r:
            insert(r)

    return _interreduce([elements[i] for i in active], order, fld)


def _interreduce(elems, order, fld):
    key = order.key
    minimal = []
    for g in elems:
        if any(
            h is not g and h.pos == g.pos and divides(h.exps, g.exps) and (h.exps != g.exps or id(h) < id(g))
            for h in elems
        ):
            continue
        minimal.append(g)
    out = []
    for g in minimal:
        others = [h for h in minimal if h is not g]
        tail = dict(g.vec)
        c = tail.pop(g.lt)
        rem = reduce_vector(tail, others, order, fld)
        rem[g.lt] = c
        out.append(_Element(_make_monic(rem, g.lt, fld), g.lt))
    out.sort(key=lambda e: key(e.lt), reverse=True)
    return [e.vec for e in out]


# ---------------------------------------------------------------------------


class BaseSubmodule:
    """A submodule of k[u]^rank given by generators, with a lazily cached basis."""

    def __init__(self, rank: int, gens, nvars: int, fld=QQ, basis=None):
        if nvars > MAX_BASE_VARIABLES:
            raise BudgetExceeded(f"at most {MAX_BASE_VARIABLES} base variables are supported")
        self.rank = rank
        self.nvars = nvars
        self.fld = fld
        cleaned = []
        for g in gens:
            g = {t: c for t, c in g.items() if c != 0}
            for (p, e) in g:
                if not 0 <= p < rank or len(e) != nvars:
                    raise RankMismatch(f"generator term {(p, e)} outside ambient of rank {rank}")
            if g:
                cleaned.append(g)
        self.gens = tuple(cleaned)
        self._basis = None if basis is None else list(basis)
        self._elements = None
        self._order = DegRevLexTOP()

    def basis(self) -> list[dict]:
        if self._basis is None:
            self._basis = groebner(self.gens, self._order, self.fld)
        return self._basis

    def _elems(self):
        if self._elements is None:
            key = self._order.key
            self._elements = [_Element(b, max(b, key=key)) for b in self.basis()]
            self._index = _index(self._elements)
        return self._elements

    def normal_form(self, v: dict) -> dict:
        for (p, e) in v:
            if not 0 <= p < self.rank or len(e) != self.nvars:
                raise RankMismatch(f"vector term {(p, e)} does not fit rank {self.rank}")
        elems = self._elems()
        return reduce_vector(v, elems, self._order, self.fld, self._index)

    def contains(self, v: dict) -> bool:
        return not self.normal_form(v)

    def contains_module(self, other: BaseSubmodule) -> bool:
        return all(self.contains(g) for g in other.gens)

    def same_as(self, other: BaseSubmodule) -> bool:
        return [canonical(b) for b in self.basis()] == [canonical(b) for b in other.basis()]

    def is_zero(self) -> bool:
        return not self.gens

    def leading_terms(self):
        return [e.lt for e in self._elems()]

    def __repr__(self):
        return f"BaseSubmodule(rank={self.rank}, gens={len(self.gens)})"


def groebner_basis(sub: BaseSubmodule) -> BaseSubmodule:
    b = sub.basis()
    return BaseSubmodule(sub.rank, b, sub.nvars, sub.fld, basis=b)


def normal_form(v: dict, sub: BaseSubmodule) -> dict:
    return sub.normal_form(v)


def kernel_vectors(columns, target_rank: int, relations, nvars: int, fld=QQ) -> list[dict]:
    """Generators of {a in k[u]^len(columns) : sum a_j col_j lies in <relations>}.

    Computed from a Gröbner basis of the graph module in an order that
    eliminates the target block.
    """
    k = len(columns)
    if k == 0:
        return []
    p = target_rank
    zero = (0,) * nvars
    vecs = []
    for j, col in enumerate(columns):
        v = dict(col)
        v[(p + j, zero)] = 1
        vecs.append(v)
    vecs.extend(r for r in relations if r)
    order = BlockElimination(p)
    out = []
    for g in groebner(vecs, order, fld):
        lt = max(g, key=order.key)
        if lt[0] >= p:
            out.append(restrict(g, p, p + k, p))
    return out


def kernel_of_map(columns, target, nvars: int | None = None, fld=None) -> BaseSubmodule:
    """Kernel of k[u]^q -> target, e_j -> columns[j].

    ``target`` is a PieceModule, or an integer rank for a free target.
    """
    if isinstance(target, int):
        rank, rels = target, []
        if nvars is None:
            raise ValueError("nvars is required for a free target")
        fld = fld or QQ
    else:
        rank, rels = target.rank, target.relations
        nvars, fld = target.nvars, target.fld
    for col in columns:
        for (p, e) in col:
            if not 0 <= p < rank or len(e) != nvars:
                raise RankMismatch("matrix column does not fit the target")
    vecs = kernel_vectors(columns, rank, rels, nvars, fld)
    return BaseSubmodule(len(columns), vecs, nvars, fld, basis=vecs)


def colon_by_maximal(sub_basis: list[dict], rank: int, nvars: int, fld) -> list[dict]:
    """Generators of (C : (u_1..u_s)) for C given by ``sub_basis``."""
    s = nvars
    columns = []
    for j in range(rank):
        col = {}
        for i in range(s):
            e = tuple(1 if t == i else 0 for t in range(s))
            col[(i * rank + j, e)] = 1
        columns.append(col)
    rels = []
    for i in range(s):
        off = i * rank
        for g in sub_basis:
            rels.append({(p + off, e): c for (p, e), c in g.items()})
    return kernel_vectors(columns, s * rank, rels, nvars, fld)


def saturation_vectors(gens, rank: int, nvars: int, fld=QQ) -> list[dict]:
    """Gröbner basis of (C : m^inf) inside k[u]^rank, C generated by ``gens``."""
    zero = (0,) * nvars
    if nvars == 0:
        # m = 0 annihilates everything
        return [{(j, zero): 1} for j in range(rank)]
    order = DegRevLexTOP()
    current = groebner(gens, order, fld)
    budget = _budget.get()
    rounds = 0
    while True:
        rounds += 1
        if rounds > budget:
            raise BudgetExceeded("saturation did not stabilize within budget")
        colon = colon_by_maximal(current, rank, nvars, fld)
        sub = BaseSubmodule(rank, current, nvars, fld, basis=current)
        new = [g for g in colon if not sub.contains(g)]
        if not new:
            return current
        current = groebner(list(current) + new, order, fld)


def saturate_irrelevant(sub: BaseSubmodule, ambient) -> BaseSubmodule:
    """(sub + relations of ambient) : m^inf, as a submodule of the ambient frame."""
    gens = list(sub.gens) + list(ambient.relations)
    vecs = saturation_vectors(gens, ambient.rank, ambient.nvars, ambient.fld)
    return BaseSubmodule(ambient.rank, vecs, ambient.nvars, ambient.fld, basis=vecs)

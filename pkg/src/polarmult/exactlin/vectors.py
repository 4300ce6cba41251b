"""Sparse vectors over k[u_1..u_s] and the term orders used on them.

A vector of a free module k[u]^p is a dict ``{(pos, exps): coeff}`` where
``exps`` is an exponent tuple of length s.  Zero coefficients are never
stored.  A scalar polynomial is simply a vector living in position 0.
"""

from __future__ import annotations

from itertools import combinations_with_replacement


def monomials_of_degree(nvars: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree d, in a fixed deterministic order."""
    return _monomials_cache(nvars, d)


_MONO_CACHE: dict[tuple[int, int], list[tuple[int, ...]]] = {}


def _monomials_cache(nvars, d):
    key = (nvars, d)
    hit = _MONO_CACHE.get(key)
    if hit is not None:
        return hit
    if nvars == 0:
        out = [()] if d == 0 else []
    else:
        out = []
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
        out.sort(reverse=True)
    _MONO_CACHE[key] = out
    return out


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub_exps(a, b):
    return tuple(x - y for x, y in zip(a, b))


def lcm_exps(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class TermOrder:
    """Total order on module terms; larger key means larger term."""

    name = "abstract"

    def __init__(self):
        self._cache = {}

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            k = self._key(term)
            self._cache[term] = k
        return k

    def _key(self, term):  # pragma: no cover - abstract
        raise NotImplementedError

    def lead(self, vec):
        return max(vec, key=self.key)


class DegRevLexTOP(TermOrder):
    """Graded reverse lexicographic order, term over position (e_0 > e_1 > ...)."""

    name = "degrevlex-top"

    def _key(self, term):
        pos, e = term
        return (sum(e), tuple(-x for x in reversed(e)), -pos)


class BlockElimination(TermOrder):
    """Positions below ``split`` dominate every position at or above it.

    Used for kernels: a Gröbner basis element whose leading term lies in the
    upper block has no component in the lower block at all.
    """

    name = "block-elimination"

    def __init__(self, split: int):
        super().__init__()
        self.split = split

    def _key(self, term):
        pos, e = term
        return (pos < self.split, sum(e), tuple(-x for x in reversed(e)), -pos)


class LazardOrder(TermOrder):
    """Global order on k[h, u]^p whose restriction to homogeneous elements mimics a
    local degree order on k[u]^p: for equal total degree a larger power of the
    homogenizing variable h (stored first in the exponent tuple) wins.
    """

    name = "lazard"

    def _key(self, term):
        pos, e = term
        return (sum(e), e[0], tuple(-x for x in reversed(e[1:])), -pos)


# ---------------------------------------------------------------------------
# vector arithmetic


def axpy(target: dict, c, shift, vec: dict, fld) -> dict:
    """target += c * u^shift * vec, in place."""
    add, mul = fld.add, fld.mul
    if shift is None:
        for t, cv in vec.items():
            nv = add(target.get(t, 0), mul(c, cv))
            if nv == 0:
                target.pop(t, None)
            else:
                target[t] = nv
        return target
    for (pos, e), cv in vec.items():
        t = (pos, tuple(x + y for x, y in zip(e, shift)))
        nv = add(target.get(t, 0), mul(c, cv))
        if nv == 0:
            target.pop(t, None)
        else:
            target[t] = nv
    return target


def scale(vec: dict, c, fld) -> dict:
    if c == 1:
        return dict(vec)
    mul = fld.mul
    return {t: mul(c, cv) for t, cv in vec.items()}


def shift_vec(vec: dict, shift, c=1, fld=None) -> dict:
    if fld is None or c == 1:
        return {(p, add_exps(e, shift)): cv for (p, e), cv in vec.items()}
    return {(p, add_exps(e, shift)): fld.mul(c, cv) for (p, e), cv in vec.items()}


def vec_add(a: dict, b: dict, fld) -> dict:
    out = dict(a)
    return axpy(out, 1, None, b, fld)


def vec_sub(a: dict, b: dict, fld) -> dict:
    out = dict(a)
    return axpy(out, fld.neg(1), None, b, fld)


def poly_times_vec(poly: dict, vec: dict, fld) -> dict:
    """Multiply a scalar polynomial {exps: c} into a vector."""
    out: dict = {}
    for e, c in poly.items():
        axpy(out, c, e, vec, fld)
    return out


def unit_vector(pos: int, nvars: int) -> dict:
    return {(pos, (0,) * nvars): 1}


def reposition(vec: dict, offset: int) -> dict:
    return {(p + offset, e): c for (p, e), c in vec.items()}


def restrict(vec: dict, lo: int, hi: int, offset: int = 0) -> dict:
    """Components with lo <= pos < hi, moved to pos - offset."""
    return {(p - offset, e): c for (p, e), c in vec.items() if lo <= p < hi}


def canonical(vec: dict):
    """Hashable, order-independent form of a vector (for equality tests)."""
    return tuple(sorted(vec.items(), key=lambda kv: (kv[0][0], kv[0][1])))

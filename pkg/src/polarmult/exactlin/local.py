"""Finitely generated modules over the local ring k[u]_(u), presented as
k[u]^q / Rel, and the counts that only depend on the localization.

Hilbert-Samuel counts come from a standard basis for a local degree order,
obtained by Lazard's trick: homogenize with an extra variable h, take a
Gröbner basis for an order that prefers high powers of h inside a degree,
then dehomogenize.
"""

from __future__ import annotations

from ..errors import PolarError
from .field import QQ
from .groebner import (
    BaseSubmodule,
    groebner,
    kernel_vectors,
    saturation_vectors,
)
from .vectors import LazardOrder, divides, monomials_of_degree, reposition


def homogenize(vec: dict) -> dict:
    d = max(sum(e) for (_p, e) in vec)
    return {(p, (d - sum(e),) + e): c for (p, e), c in vec.items()}


def rank_of_rows(rows, fld) -> int:
    """Rank of sparse rows {col: value} by elimination over the field."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        r = {k: v for k, v in row.items() if v != 0}
        while r:
            col = min(r)
            if col not in pivots:
                inv = fld.inv(r[col])
                pivots[col] = {k: fld.mul(inv, v) for k, v in r.items()}
                rank += 1
                break
            prow = pivots[col]
            c = r[col]
            for k, v in prow.items():
                nv = fld.sub(r.get(k, 0), fld.mul(c, v))
                if nv == 0:
                    r.pop(k, None)
                else:
                    r[k] = nv
    return rank


class PieceModule:
    """A single graded piece: the k[u]_(u)-module k[u]^rank / <relations>.

    ``labels`` names the frame elements (for reports and debugging only).
    """

    def __init__(self, rank: int, relations=(), nvars: int = 0, fld=QQ, labels=None):
        self.rank = rank
        self.nvars = nvars
        self.fld = fld
        self.relations = [dict(r) for r in relations if r]
        self.labels = list(labels) if labels is not None else None
        self._leads = None
        self._layers: list[int] = []

    @classmethod
    def free(cls, rank, nvars, fld=QQ, labels=None):
        return cls(rank, (), nvars, fld, labels)

    @classmethod
    def zero(cls, nvars, fld=QQ):
        return cls(0, (), nvars, fld)

    def submodule(self) -> BaseSubmodule:
        return BaseSubmodule(self.rank, self.relations, self.nvars, self.fld)

    # -- local standard basis ------------------------------------------------

    def _standard_leads(self):
        if self._leads is None:
            leads = {p: [] for p in range(self.rank)}
            if self.relations:
                homog = [homogenize(r) for r in self.relations]
                order = LazardOrder()
                for g in groebner(homog, order, self.fld):
                    pos, e = max(g, key=order.key)
                    leads[pos].append(e[1:])
            for p, es in leads.items():
                es = sorted(set(es), key=sum)
                minimal = []
                for e in es:
                    if not any(divides(m, e) for m in minimal):
                        minimal.append(e)
                leads[p] = minimal
            self._leads = leads
        return self._leads

    def _layer(self, d: int) -> int:
        while len(self._layers) <= d:
            k = len(self._layers)
            leads = self._standard_leads()
            count = 0
            monos = monomials_of_degree(self.nvars, k)
            for p in range(self.rank):
                lp = leads[p]
                if not lp:
                    count += len(monos)
                    continue
                for mono in monos:
                    if not any(divides(m, mono) for m in lp):
                        count += 1
            self._layers.append(count)
        return self._layers[d]

    def truncated_dimension(self, n: int) -> int:
        """dim_k of Q / m^(n+1) Q."""
        if n < 0:
            return 0
        if self.nvars == 0:
            return self._layer(0)
        return sum(self._layer(d) for d in range(n + 1))

    def hilbert_samuel(self, nmax: int) -> list[int]:
        out, total = [], 0
        for d in range(nmax + 1):
            total += self._layer(d) if (self.nvars or d == 0) else 0
            out.append(total)
        return out

    def has_finite_length(self) -> bool:
        leads = self._standard_leads()
        zero = (0,) * self.nvars
        for p in range(self.rank):
            lp = leads[p]
            if zero in lp:
                continue
            for i in range(self.nvars):
                if not any(all(x == 0 for j, x in enumerate(m) if j != i) for m in lp):
                    return False
        return True

    def length(self) -> int:
        """Length of a finite-length module; raises PolarError otherwise."""
        if not self.has_finite_length():
            raise PolarError("module does not have finite length")
        if self.nvars == 0:
            return self._layer(0)
        total, d = 0, 0
        while True:
            c = self._layer(d)
            if c == 0:
                return total
            total += c
            d += 1

    def dim_mod_m(self) -> int:
        """dim_k Q/mQ, from the constant parts of the relations (no Gröbner basis)."""
        if self._leads is not None:
            return self._layer(0)
        zero = (0,) * self.nvars
        rows = []
        for r in self.relations:
            row = {p: c for (p, e), c in r.items() if e == zero}
            if row:
                rows.append(row)
        return self.rank - rank_of_rows(rows, self.fld)

    def is_zero(self) -> bool:
        """Nakayama: the localized module vanishes iff Q/mQ does."""
        return self.rank == 0 or self.dim_mod_m() == 0

    def __repr__(self):
        return f"PieceModule(rank={self.rank}, relations={len(self.relations)}, nvars={self.nvars})"


def direct_sum(pieces, nvars=None, fld=None) -> PieceModule:
    pieces = list(pieces)
    if not pieces:
        return PieceModule(0, (), nvars or 0, fld or QQ)
    nvars = pieces[0].nvars
    fld = pieces[0].fld
    rels, labels, off = [], [], 0
    for P in pieces:
        rels.extend(reposition(r, off) for r in P.relations)
        if P.labels is not None:
            labels.extend(P.labels)
        else:
            labels.extend([None] * P.rank)
        off += P.rank
    return PieceModule(off, rels, nvars, fld, labels)


def subquotient(rank: int, top, bottom, relations, nvars: int, fld=QQ, labels=None) -> PieceModule:
    """Presentation of (T + Rel)/(Bot + Rel) inside k[u]^rank.

    ``top`` of None means the whole free module; then no kernel is needed.
    """
    rels = [r for r in relations if r] + [b for b in bottom if b]
    if top is None:
        return PieceModule(rank, rels, nvars, fld, labels)
    top = [t for t in top if t]
    ker = kernel_vectors(top, rank, rels, nvars, fld)
    return PieceModule(len(top), ker, nvars, fld)


def truncated_dimension(Q: PieceModule, n: int) -> int:
    return Q.truncated_dimension(n)


def torsion_presentation(P: PieceModule) -> PieceModule:
    """H^0_m of P, presented on its own frame (finite length)."""
    sat = saturation_vectors(P.relations, P.rank, P.nvars, P.fld)
    return subquotient(P.rank, sat, [], P.relations, P.nvars, P.fld)

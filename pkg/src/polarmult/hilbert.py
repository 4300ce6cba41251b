"""Bivariate Hilbert functions H(v, n) = dim_k M_v / m^(n+1) M_v, their exact
polynomial fits, and the normalized top coefficients e(i, j).

Fits are exact Newton interpolation in the binomial basis
C(v - v0, i) * C(n - n0, j).  A fit is accepted only when the differences
vanish above some total order r <= w - 2 on the w x w window and the
interpolant reproduces every value of a margin band around it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Callable

from .errors import NonIntegerCoefficient, Unstable


@dataclass(frozen=True)
class WindowOptions:
    """Where Hilbert data are sampled and how far the window may grow."""

    vmax: int = 12
    nmax: int = 12
    margin: int = 3
    width: int = 8
    uwidth: int = 6
    start: int = 4

    def origins(self, observed_degree: int = 0):
        """Window origins tried in turn: start, 2*start, ... capped per axis."""
        o = max(self.start, observed_degree + 2)
        seen = []
        while True:
            pair = (min(o, self.vmax), min(o, self.nmax))
            if pair in seen:
                break
            seen.append(pair)
            if o >= max(self.vmax, self.nmax):
                break
            o *= 2
        return seen


DEFAULT_WINDOW = WindowOptions()


@dataclass
class HilbertTable:
    source: str
    v0: int
    n0: int
    width: int
    margin: int
    values: dict = field(default_factory=dict)

    def __getitem__(self, vn):
        return self.values[vn]

    def grid(self):
        w = self.width
        return [[self.values[(self.v0 + a, self.n0 + b)] for b in range(w)] for a in range(w)]

    def cells(self):
        return len(self.values)


def _piece_source(source):
    if hasattr(source, "piece"):
        return source.piece, type(source).__name__
    return source, getattr(source, "__name__", "pieces")


def hilbert_table(source, v0: int, n0: int, width: int = 8, margin: int = 3) -> HilbertTable:
    """Fill H(v, n) on the (width + margin)^2 block starting at (v0, n0).

    ``source`` is a graded object (anything with ``piece(v)``) or a callable
    v -> PieceModule.
    """
    if width < 2:
        raise ValueError("window width must be at least 2")
    piece, name = _piece_source(source)
    t = HilbertTable(name, v0, n0, width, margin)
    top = width + margin
    for a in range(top):
        P = piece(v0 + a)
        counts = P.hilbert_samuel(n0 + top - 1)
        prev = None
        for b in range(top):
            val = counts[n0 + b]
            if prev is not None and val < prev:
                raise AssertionError("Hilbert-Samuel counts must be nondecreasing in n")
            prev = val
            t.values[(v0 + a, n0 + b)] = val
    return t


def forward_differences(grid):
    """D[i][j] = (Δ_v^i Δ_n^j H)(v0, n0) for a square grid of values."""
    w = len(grid)
    rows = []
    for a in range(w):
        seq = list(grid[a])
        diffs = []
        for _j in range(w):
            diffs.append(seq[0])
            seq = [seq[k + 1] - seq[k] for k in range(len(seq) - 1)]
        rows.append(diffs)
    D = [[0] * w for _ in range(w)]
    for j in range(w):
        seq = [rows[a][j] for a in range(w)]
        for i in range(w):
            D[i][j] = seq[0]
            seq = [seq[k + 1] - seq[k] for k in range(len(seq) - 1)]
    return D


@dataclass
class BivariateFit:
    degree: int
    diffs: list
    v0: int
    n0: int
    width: int
    margin: int
    verified: bool = True
    empty: bool = False

    def __call__(self, v, n):
        total = 0
        for i, row in enumerate(self.diffs):
            for j, d in enumerate(row):
                if d:
                    total += d * _gbinom(v - self.v0, i) * _gbinom(n - self.n0, j)
        return total

    def e(self, i, j):
        """Normalized coefficient i! j! [v^i n^j] of the degree-(i+j) part.

        Only the top part is meaningful, so this is D[i][j] when i + j equals
        the fit degree and 0 above it.
        """
        if i + j > self.degree or self.empty:
            return 0
        if i + j < self.degree:
            raise ValueError("only top-degree coefficients are normalized multiplicities")
        if i >= self.width or j >= self.width:
            return 0
        return self.diffs[i][j]

    def window(self):
        return {"v0": self.v0, "n0": self.n0, "width": self.width, "margin": self.margin}


def _gbinom(x, k):
    """Binomial coefficient as a polynomial in x (valid for negative x)."""
    num = 1
    for t in range(k):
        num *= x - t
    return num // factorial(k)


def fit_bivariate(t: HilbertTable, max_degree: int | None = None) -> BivariateFit:
    w = t.width
    D = forward_differences(t.grid())
    nonzero = [i + j for i in range(w) for j in range(w) if D[i][j] != 0]
    empty = not nonzero
    r = max(nonzero) if nonzero else -1
    limit = w - 2 if max_degree is None else min(max_degree, w - 2)
    if r > limit:
        raise Unstable(
            f"Hilbert function not polynomial of degree <= {limit} on window at ({t.v0}, {t.n0})",
            suggestion=2 * max(t.v0, t.n0, 1),
        )
    for i in range(w):
        for j in range(w):
            if i + j > r:
                D[i][j] = 0
    fit = BivariateFit(max(r, 0), D, t.v0, t.n0, w, t.margin, True, empty)
    for (v, n), val in t.values.items():
        if fit(v, n) != val:
            raise Unstable(
                f"fit disagrees with H({v},{n}) on the margin band",
                suggestion=2 * max(t.v0, t.n0, 1),
            )
    for i in range(w):
        j = r - i
        if 0 <= j < w and D[i][j] < 0:
            raise NonIntegerCoefficient(
                f"negative top coefficient e({i},{j}) = {D[i][j]}",
                suggestion=2 * max(t.v0, t.n0, 1),
            )
    return fit


def mixed_coefficients(f: BivariateFit) -> dict:
    if f.empty:
        return {}
    r = f.degree
    out = {}
    for i in range(r + 1):
        val = f.e(i, r - i)
        if val != int(val) or val < 0:
            raise NonIntegerCoefficient(f"e({i},{r - i}) = {val} is not a nonnegative integer")
        out[(i, r - i)] = int(val)
    return out


def fit_source(source, options: WindowOptions = DEFAULT_WINDOW, observed_degree: int = 0):
    """Fit with automatic window growth; returns (fit, table)."""
    last = None
    for v0, n0 in options.origins(observed_degree):
        t = hilbert_table(source, v0, n0, options.width, options.margin)
        try:
            return fit_bivariate(t), t
        except Unstable as exc:
            last = exc
    raise Unstable(
        f"Hilbert function did not stabilize within vmax={options.vmax}, nmax={options.nmax}: {last}",
        suggestion=getattr(last, "suggestion", None),
    )


# ---------------------------------------------------------------------------
# one variable


@dataclass
class UnivariateFit:
    degree: int
    diffs: list
    k0: int
    width: int
    margin: int
    empty: bool = False

    def leading_multiplicity(self, d: int) -> int:
        """d! times the coefficient of k^d (0 when the degree is below d)."""
        if self.empty or self.degree < d:
            return 0
        if self.degree > d:
            raise ValueError(f"values grow with degree {self.degree} > {d}")
        return self.diffs[d]

    def __call__(self, k):
        return sum(c * _gbinom(k - self.k0, i) for i, c in enumerate(self.diffs))


def fit_univariate_values(values, k0: int, width: int, margin: int) -> UnivariateFit:
    """values[i] is the value at k0 + i; needs width + margin entries."""
    if len(values) < width + margin:
        raise ValueError("not enough values for the window")
    seq = list(values[:width])
    diffs = []
    for _ in range(width):
        diffs.append(seq[0])
        seq = [seq[i + 1] - seq[i] for i in range(len(seq) - 1)]
    nonzero = [i for i, d in enumerate(diffs) if d != 0]
    deg = max(nonzero) if nonzero else -1
    if deg > width - 2:
        raise Unstable(f"values not polynomial of degree <= {width - 2} from {k0}", suggestion=2 * max(k0, 1))
    diffs = diffs[: max(deg, 0) + 1] if deg >= 0 else [0]
    fit = UnivariateFit(max(deg, 0), diffs, k0, width, margin, empty=deg < 0)
    for i, val in enumerate(values[: width + margin]):
        if fit(k0 + i) != val:
            raise Unstable(f"univariate fit fails at {k0 + i}", suggestion=2 * max(k0, 1))
    return fit


def fit_univariate(fn: Callable[[int], int], options: WindowOptions = DEFAULT_WINDOW, cap: int | None = None,
                   start: int | None = None) -> UnivariateFit:
    """Fit k -> fn(k) for k >> 0, growing the origin up to ``cap``."""
    cap = options.vmax if cap is None else cap
    k0 = max(options.start if start is None else start, 0)
    last = None
    tried = set()
    while True:
        k0c = min(k0, cap)
        if k0c in tried:
            break
        tried.add(k0c)
        vals = [fn(k0c + i) for i in range(options.uwidth + options.margin)]
        try:
            return fit_univariate_values(vals, k0c, options.uwidth, options.margin)
        except Unstable as exc:
            last = exc
        k0 = 2 * max(k0, 1)
    raise Unstable(f"univariate data did not stabilize up to origin {cap}: {last}")


def univariate_multiplicity(values, d: int, options: WindowOptions = DEFAULT_WINDOW) -> int:
    """e_d of eventually-polynomial data: d! times the coefficient of degree d.

    ``values`` is either a callable k -> value or a list of values at
    k = 0, 1, 2, ... (the tail of the list is used as the window).
    """
    if callable(values):
        fit = fit_univariate(values, options)
    else:
        values = list(values)
        need = options.uwidth + options.margin
        if len(values) >= need:
            k0 = len(values) - need
            fit = fit_univariate_values(values[k0:], k0, options.uwidth, options.margin)
        else:
            w = max(len(values) - 1, 2)
            fit = fit_univariate_values(values, 0, min(w, len(values)), len(values) - min(w, len(values)))
    if fit.degree > d and not fit.empty:
        raise Unstable(f"values have degree {fit.degree}, more than {d}")
    return fit.leading_multiplicity(d)

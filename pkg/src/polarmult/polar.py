"""Polar multiplicity vectors m_r^i read off bivariate Hilbert fits, and the
identities that tie them to j-multiplicities, Samuel multiplicities of large
pieces, and general hyperplane sections.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import EmptySupport, GenericityFailure, InvalidDepth, PolarError, Unstable
from .graded import (
    AlgebraPresentation,
    GrModule,
    IdealFiltration,
    ImageAlgebra,
    ModulePresentation,
    SubalgebraSpec,
    TorsionModule,
    quotient_by_element,
)
from .hilbert import DEFAULT_WINDOW, WindowOptions, fit_source, fit_univariate

COEFF_RANGE = 17
MAX_RESAMPLE = 5


@dataclass
class PolarVector:
    """(m_r^0, ..., m_r^r) together with where it came from."""

    r: int
    values: tuple
    provenance: str = "hilbert-fit"
    fit_degree: int | None = None
    window: dict = field(default_factory=dict)
    margin_verified: bool = True

    def __post_init__(self):
        self.values = tuple(int(x) for x in self.values)
        if len(self.values) != self.r + 1:
            raise ValueError("a polar vector at r has r + 1 entries")

    def __eq__(self, other):
        if not isinstance(other, PolarVector):
            return NotImplemented
        return self.r == other.r and self.values == other.values

    def __hash__(self):
        return hash((self.r, self.values))

    def __getitem__(self, i):
        return self.values[i] if 0 <= i <= self.r else 0

    def __iter__(self):
        return iter(self.values)

    def __add__(self, other):
        if self.r != other.r:
            raise ValueError("cannot add polar vectors at different r")
        return PolarVector(self.r, [a + b for a, b in zip(self.values, other.values)], "sum")

    def as_list(self):
        return list(self.values)

    def __repr__(self):
        return f"PolarVector(r={self.r}, {list(self.values)})"


def observed_degree(M) -> int:
    """Largest degree appearing in a presentation (seeds the window origin)."""
    base = M
    while hasattr(base, "base") and not isinstance(base, ModulePresentation):
        base = base.base
    if hasattr(base, "filtration"):
        base = base.filtration.base
    degs = [0]
    if isinstance(base, ModulePresentation):
        degs.extend(base.shifts)
        degs.extend(d for d, _c in base.columns)
        alg = base.algebra()
        degs.extend(d + max(base.shifts) for _f, d in alg.relation_degrees)
    b = getattr(M, "alpha", None)
    if b:
        degs.append(b + max(degs))
    return max(degs)


def vector_from_fit(fit, r: int, provenance="hilbert-fit") -> PolarVector:
    if r < fit.degree and not fit.empty:
        raise ValueError(f"r = {r} is below the dimension {fit.degree} of the support")
    values = [fit.e(r - i, i) for i in range(r + 1)]
    return PolarVector(r, values, provenance, None if fit.empty else fit.degree, fit.window(), fit.verified)


def polar_vector(M, r_override: int | None = None, options: WindowOptions = DEFAULT_WINDOW) -> PolarVector:
    """m_r^i(M) = e(r - i, i) of the bivariate Hilbert polynomial of M.

    r is the fit degree unless ``r_override`` (>= fit degree) is given; a
    module with zero sheaf then gets the zero vector.
    """
    fit, _t = fit_source(M, options, observed_degree(M))
    if fit.empty:
        if r_override is None:
            raise EmptySupport("the module has empty projective support; pass r_override")
        return vector_from_fit(fit, r_override)
    r = fit.degree if r_override is None else r_override
    return vector_from_fit(fit, r)


def _gr_cache(X):
    return X.__dict__.setdefault("_gr_modules", {})


def associated_graded(ideal_gens, M) -> GrModule:
    key = tuple(tuple(sorted(g.items())) for g in ideal_gens)
    cache = _gr_cache(M)
    G = cache.get(key)
    if G is None:
        G = GrModule(IdealFiltration(M, ideal_gens))
        cache[key] = G
    return G


def polar_wrt_linear_ideal(ideal_gens, M, options: WindowOptions = DEFAULT_WINDOW,
                           r: int | None = None) -> PolarVector:
    """m_r^i(I, M) = m_r^i(gr_I(M)) for I generated by degree-1 elements."""
    ring = M.ring
    gens = [ring.parse(g, field="ideal") if isinstance(g, str) else g for g in ideal_gens]
    for g in gens:
        if ring.x_degree(g) != 1:
            raise PolarError("ideal generators must have degree 1")
    if r is None:
        r = polar_vector(M, options=options).r
    G = associated_graded(gens, M)
    return polar_vector(G, r_override=r, options=options)


def relative_polar(A: SubalgebraSpec, B: AlgebraPresentation, options: WindowOptions = DEFAULT_WINDOW,
                   r: int | None = None) -> PolarVector:
    """m_r^i(A, B) = m_r^i(gr_{A_+B}(B)), at r = r(B)."""
    return polar_wrt_linear_ideal(A.gens, B, options, r)


def truncated_relative(A: SubalgebraSpec, B: AlgebraPresentation, t: int,
                       options: WindowOptions = DEFAULT_WINDOW, r: int | None = None) -> PolarVector:
    """m_r^i(G/B_tG) at r = r(B)."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if r is None:
        r = polar_vector(B, options=options).r
    G = associated_graded(A.gens, B).truncate(t)
    return polar_vector(G, r_override=r, options=options)


def image_algebra(A: SubalgebraSpec, B: AlgebraPresentation) -> ImageAlgebra:
    cache = B.__dict__.setdefault("_images", {})
    key = tuple(tuple(sorted(g.items())) for g in A.gens)
    if key not in cache:
        cache[key] = ImageAlgebra(B, A)
    return cache[key]


def j_multiplicity(M, d: int, options: WindowOptions = DEFAULT_WINDOW) -> int:
    """j_d(M) = e_d(H^0_m(M)), from the lengths of the torsion pieces."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    T = TorsionModule(M)
    fit = fit_univariate(lambda v: T.piece(v).length(), options, cap=options.vmax,
                         start=max(options.start, observed_degree(M) + 2))
    if fit.empty:
        return 0
    if fit.degree > d - 1:
        raise PolarError(f"torsion has dimension {fit.degree + 1} > {d}")
    return fit.leading_multiplicity(d - 1)


@dataclass
class TopPolarReport:
    r: int
    expected: int
    samples: dict
    agrees: bool


def top_polar_check(M, options: WindowOptions = DEFAULT_WINDOW, pv: PolarVector | None = None) -> TopPolarReport:
    """Compare m_r^r(M) with e_r of the Hilbert-Samuel function of large pieces M_v."""
    if pv is None:
        pv = polar_vector(M, options=options)
    r = pv.r
    v0 = (pv.window or {}).get("v0", options.start)
    samples = {}
    for v in (v0 + options.width, v0 + options.width + 1, v0 + options.width + 2):
        P = M.piece(v)
        fit = fit_univariate(lambda n, P=P: P.truncated_dimension(n), options, cap=options.nmax)
        if fit.degree > r and not fit.empty:
            raise Unstable(f"M_{v} has Samuel dimension above {r}")
        samples[v] = fit.leading_multiplicity(r)
    expected = pv[r]
    return TopPolarReport(r, expected, samples, all(x == expected for x in samples.values()))


def general_coefficients(rng: random.Random, count: int) -> list[int]:
    while True:
        cs = [rng.randint(-COEFF_RANGE, COEFF_RANGE) for _ in range(count)]
        if any(cs):
            return cs


def general_degree_one(B, rng) -> dict:
    """A random k-combination of the degree-1 algebra generators of B."""
    gens = B.algebra_generators()
    cs = general_coefficients(rng, len(gens))
    ring = B.ring
    out = {}
    for c, g in zip(cs, gens):
        out = ring.add(out, ring.mul(ring.const(c), g))
    return out


def general_linear_cut(M, seed: int = 0, options: WindowOptions = DEFAULT_WINDOW,
                       max_resample: int = MAX_RESAMPLE, pv: PolarVector | None = None):
    """(y, polar vector of M/yM at r - 1) for a general degree-1 element y."""
    if pv is None:
        pv = polar_vector(M, options=options)
    if pv.r == 0:
        raise InvalidDepth("no hyperplane section below dimension zero")
    B = M.algebra()
    failures = []
    for attempt in range(max_resample):
        rng = random.Random(f"{seed}:{attempt}")
        y = general_degree_one(B, rng)
        if not y:
            continue
        try:
            cut = polar_vector(quotient_by_element(M, y), r_override=pv.r - 1, options=options)
        except (ValueError, EmptySupport) as exc:
            failures.append(str(exc))
            continue
        if cut.values == pv.values[: pv.r]:
            return y, cut
        failures.append(f"{cut.as_list()} != {list(pv.values[: pv.r])}")
    raise GenericityFailure(f"general hyperplane sections kept failing: {failures}")

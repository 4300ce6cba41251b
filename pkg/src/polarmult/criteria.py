"""Verdicts on integrality, birationality and reductions.

Each check combines a direct certificate (a finite membership scan, valid
without hypotheses) with a comparison of polar vectors.  Vector inequalities
only ever prove that a property fails; vector equalities prove that it holds
only where the governing implication is available, and the hypotheses used
are listed in the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PolarError, Unstable
from .graded import AlgebraPresentation, ModulePairSpec, ModulePresentation, SubalgebraSpec, locally_contains
from .graded.presentation import prune
from .exactlin import subquotient
from .hilbert import DEFAULT_WINDOW, WindowOptions, fit_univariate
from .polar import (
    PolarVector,
    associated_graded,
    image_algebra,
    polar_vector,
    polar_wrt_linear_ideal,
    relative_polar,
    truncated_relative,
)

HOLDS, FAILS, INCONCLUSIVE = "Holds", "Fails", "Inconclusive"
EQUIDIMENSIONAL = "B equidimensional (asserted)"
REGULAR_BASE = "R = k[u]_(u) regular local (automatic)"

T_CAP = 10
POWER_CAP = 8
STABLE_RUN = 3


@dataclass
class Verdict:
    outcome: str
    reason: str
    evidence: dict = field(default_factory=dict)
    assumptions_used: list = field(default_factory=list)

    def __bool__(self):
        return self.outcome == HOLDS

    def vectors(self):
        return {k: v for k, v in self.evidence.items() if isinstance(v, PolarVector)}


# ---------------------------------------------------------------------------
# direct certificates


def integrality_certificate(A: SubalgebraSpec, B: AlgebraPresentation, cap: int = POWER_CAP):
    """For each degree-1 algebra generator g of B, the least N <= cap with
    g^N in A_1 B_{N-1}; None for generators where the scan ran out.
    """
    filt = associated_graded(A.gens, B).filtration
    ring = B.ring
    found = {}
    for g in B.algebra_generators():
        label = ring.format(g)
        found[label] = None
        power = ring.const(1)
        for N in range(1, cap + 1):
            power = ring.mul(power, g)
            if not power:
                found[label] = N
                break
            w = B.embed(power)
            if locally_contains(len(B.frame(N)), filt.layer(1, N), B.relations(N), w, B.nvars, B.fld):
                found[label] = N
                break
    return found


def spans_degree_one(A: SubalgebraSpec, B: AlgebraPresentation) -> bool:
    """A_1 = B_1 after localizing (so A = B)."""
    filt = associated_graded(A.gens, B).filtration
    P = subquotient(len(B.frame(1)), B.generators(1), filt.layer(1, 1), B.relations(1), B.nvars, B.fld)
    return P.is_zero()


# ---------------------------------------------------------------------------


def stabilized_truncation(A, B, r, options: WindowOptions = DEFAULT_WINDOW, t_cap: int = T_CAP):
    """m_r(G/B_tG) for t = 1, 2, ... until STABLE_RUN consecutive values agree."""
    history = []
    for t in range(1, t_cap + 1):
        opts = options
        if options.start < t:
            # the window must sit where the truncation has taken effect
            opts = WindowOptions(max(options.vmax, t), max(options.nmax, t), options.margin,
                                 options.width, options.uwidth, t)
        vec = truncated_relative(A, B, t, opts, r=r)
        history.append((t, vec))
        if len(history) >= STABLE_RUN and len({h[1] for h in history[-STABLE_RUN:]}) == 1:
            return vec, history
    raise Unstable(f"truncated relative vectors did not stabilize for t <= {t_cap}")


def _assumptions(equidimensional):
    return [EQUIDIMENSIONAL] if equidimensional else []


def check_integral(A: SubalgebraSpec, B: AlgebraPresentation, equidimensional: bool = False,
                   options: WindowOptions = DEFAULT_WINDOW, t_cap: int = T_CAP,
                   power_cap: int = POWER_CAP) -> Verdict:
    cert = integrality_certificate(A, B, power_cap)
    direct = all(N is not None for N in cert.values())
    pB = polar_vector(B, options=options)
    rel = relative_polar(A, B, options, r=pB.r)
    trunc, history = stabilized_truncation(A, B, pB.r, options, t_cap)
    evidence = {
        "certificate": cert,
        "relative": rel,
        "truncated": trunc,
        "truncation_history": {t: v.as_list() for t, v in history},
        "polar_B": pB,
        "c_comparison_equal": rel == pB,
    }
    if direct:
        if rel != trunc or rel != pB:
            raise PolarError("direct integrality certificate contradicts the multiplicity route")
        return Verdict(HOLDS, "every generator of B_1 has a power in A_1 B_{N-1}", evidence)
    if rel != trunc:
        return Verdict(FAILS, "m(A,B) differs from m(G/B_tG) for large t", evidence)
    if rel != pB:
        return Verdict(FAILS, "m(A,B) differs from m(B), which integrality forces to agree", evidence)
    if equidimensional:
        return Verdict(HOLDS, "m(A,B) = m(G/B_tG) for large t and B is equidimensional", evidence,
                       _assumptions(True))
    return Verdict(INCONCLUSIVE, "vectors agree but B is not asserted equidimensional", evidence)


def check_birational(A: SubalgebraSpec, B: AlgebraPresentation, equidimensional: bool = False,
                     options: WindowOptions = DEFAULT_WINDOW) -> Verdict:
    pB = polar_vector(B, options=options)
    rel = relative_polar(A, B, options, r=pB.r)
    pA = polar_vector(image_algebra(A, B), r_override=pB.r, options=options)
    identity = spans_degree_one(A, B)
    evidence = {"relative": rel, "polar_A": pA, "identity_certificate": identity}
    if identity:
        if rel != pA:
            raise PolarError("A = B but m(A,B) differs from m(A)")
        return Verdict(HOLDS, "A_1 spans B_1, so the inclusion is the identity", evidence)
    if rel != pA:
        return Verdict(FAILS, "m(A,B) differs from m(A)", evidence)
    if equidimensional:
        return Verdict(HOLDS, "m(A,B) = m(A) and B is equidimensional", evidence, _assumptions(True))
    return Verdict(INCONCLUSIVE, "vectors agree but B is not asserted equidimensional", evidence)


# ---------------------------------------------------------------------------
# ideals


def generation_degree(M) -> int:
    base = M
    while not isinstance(base, ModulePresentation) and hasattr(base, "base"):
        base = base.base
    if isinstance(base, ModulePresentation):
        return max(base.shifts)
    return 0


def _ideal_contained(I, J, B) -> bool:
    Jv = [B.embed(g) for g in J]
    return all(locally_contains(len(B.frame(1)), Jv, B.relations(1), B.embed(g), B.nvars, B.fld) for g in I)


def reduction_scan(I, J, M, cap: int = POWER_CAP):
    """Least k <= cap with I J^k M = J^(k+1) M, checked in the degrees where
    J^(k+1) M is generated (enough, since I J^k M ⊆ J^(k+1) M always).
    """
    fJ = associated_graded(J, M).filtration
    lo, hi = M.min_degree, generation_degree(M)
    for k in range(cap + 1):
        ok = True
        for v in range(lo + k + 1, hi + k + 2):
            top = fJ.layer(k + 1, v)
            bottom = prune([M.act(g, w, v - 1) for g in I for w in fJ.layer(k, v - 1)], M.fld)
            P = subquotient(len(M.frame(v)), top, bottom, M.relations(v), M.nvars, M.fld)
            if not P.is_zero():
                ok = False
                break
        if ok:
            return k
    return None


def check_reduction_ideal(I, J, M, options: WindowOptions = DEFAULT_WINDOW, cap: int = POWER_CAP) -> Verdict:
    ring = M.ring
    I = [ring.parse(g, field="ideal_gens.I") if isinstance(g, str) else g for g in I]
    J = [ring.parse(g, field="ideal_gens.J") if isinstance(g, str) else g for g in J]
    B = M.algebra()
    if not _ideal_contained(I, J, B):
        raise PolarError("I is not contained in J")
    r = polar_vector(M, options=options).r
    mI = polar_wrt_linear_ideal(I, M, options, r=r)
    mJ = polar_wrt_linear_ideal(J, M, options, r=r)
    k = reduction_scan(I, J, M, cap)
    evidence = {"polar_I": mI, "polar_J": mJ, "scan_k": k}
    if k is not None:
        if mI != mJ:
            raise PolarError("reduction certificate contradicts the polar vectors")
        return Verdict(HOLDS, f"I J^{k} M = J^{k + 1} M", evidence)
    if mI != mJ:
        return Verdict(FAILS, "m(I,M) differs from m(J,M), so I is not a reduction of J on M", evidence)
    return Verdict(INCONCLUSIVE, "vectors agree; equality alone does not certify a reduction", evidence)


# ---------------------------------------------------------------------------
# modules


def br_r(P: ModulePairSpec) -> int:
    return P.base.s + P.e - 1


def buchsbaum_rim(P: ModulePairSpec, which: str = "E", options: WindowOptions = DEFAULT_WINDOW) -> PolarVector:
    """br_i of E (or U): polar vector of the Rees algebra at r = s + e - 1."""
    return polar_vector(P.rees(which), r_override=br_r(P), options=options)


def relative_buchsbaum_rim(P: ModulePairSpec, options: WindowOptions = DEFAULT_WINDOW) -> PolarVector:
    """br_i(U, E): relative polar vector of Rees(U) ⊆ Rees(E)."""
    RE = P.rees("E")
    A = SubalgebraSpec(RE, [P.linear_form(c) for c in P.U])
    return relative_polar(A, RE, options, r=br_r(P))


def module_reduction_scan(P: ModulePairSpec, cap: int = POWER_CAP):
    """Least v <= cap with E^(v+1) = U E^v (locally)."""
    RE = P.rees("E")
    Uforms = [P.linear_form(c) for c in P.U]
    for v in range(cap + 1):
        top = RE.span(v + 1)
        bottom = prune([RE.act(g, w, v) for g in Uforms for w in RE.span(v)], RE.fld)
        Q = subquotient(len(RE.frame(v + 1)), top, bottom, [], RE.nvars, RE.fld)
        if Q.is_zero():
            return v
    return None


def check_reduction_module(P: ModulePairSpec, options: WindowOptions = DEFAULT_WINDOW,
                           cap: int = POWER_CAP) -> Verdict:
    brUE = relative_buchsbaum_rim(P, options)
    brE = buchsbaum_rim(P, "E", options)
    v = module_reduction_scan(P, cap)
    evidence = {"br_UE": brUE, "br_E": brE, "scan_v": v}
    assumptions = [REGULAR_BASE]
    if brUE == brE:
        reason = "br(U,E) = br(E)"
        if v is not None:
            reason += f"; direct certificate E^{v + 1} = U E^{v}"
        return Verdict(HOLDS, reason, evidence, assumptions)
    if v is not None:
        raise PolarError("E^(v+1) = U E^v but the Buchsbaum-Rim vectors differ")
    return Verdict(FAILS, "br(U,E) differs from br(E)", evidence, assumptions)


# ---------------------------------------------------------------------------


@dataclass
class VanishingBand:
    i_min: int
    i_max: int

    def admits(self, vec: PolarVector) -> bool:
        return all(x == 0 for i, x in enumerate(vec.values) if i > self.i_max or i < self.i_min)

    def as_tuple(self):
        return (self.i_min, self.i_max)


def fiber_dimension(B, options: WindowOptions = DEFAULT_WINDOW) -> int:
    """dim Proj(B/mB): degree of v -> dim_k (B/mB)_v (-1 when eventually zero)."""
    fit = fit_univariate(lambda v: B.piece(v).dim_mod_m(), options, cap=options.vmax)
    return -1 if fit.empty else fit.degree


def vanishing_profile(B, options: WindowOptions = DEFAULT_WINDOW, r: int | None = None) -> VanishingBand:
    if r is None:
        r = polar_vector(B, options=options).r
    return VanishingBand(r - fiber_dimension(B, options), B.nvars)

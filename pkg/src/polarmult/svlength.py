"""Polar multiplicities from a saturation chain of general elements of m.

For general x_1, ..., x_r in m put N_{-1} = 0, x_0 = 0 and
N_i = (N_{i-1} + x_i M) : m^inf.  With Q_i = M / (N_{i-1} + x_i M) the torsion
H^0_m(Q_i) = N_i / (N_{i-1} + x_i M), and m_r^i(M) = j_{r-i+1}(Q_i).
Everything is done one graded piece at a time on the presentation of M_v.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field

from .errors import GenericityFailure, NoBaseVariables
from .exactlin import PieceModule, saturation_vectors, subquotient
from .hilbert import DEFAULT_WINDOW, WindowOptions, fit_univariate
from .polar import MAX_RESAMPLE, PolarVector, general_coefficients, observed_degree, polar_vector


@dataclass
class GeneralSequence:
    seed: object
    coefficients: list
    nvars: int

    @property
    def elements(self):
        """x_i as base polynomials {u_exps: coeff}."""
        out = []
        for cs in self.coefficients:
            out.append({tuple(1 if j == i else 0 for j in range(self.nvars)): c for i, c in enumerate(cs) if c})
        return out

    def __len__(self):
        return len(self.coefficients)


def sample_general(seed, count: int, nvars: int, fld=None) -> GeneralSequence:
    """count general linear combinations of u_1..u_s, reproducible per seed."""
    if nvars == 0:
        raise NoBaseVariables("m = 0 has no general elements")
    if fld is not None and fld.is_prime_field and fld.characteristic < 101:
        warnings.warn(f"general elements over GF({fld.characteristic}) may fail to be general",
                      stacklevel=2)
    rng = random.Random(seed)
    return GeneralSequence(seed, [general_coefficients(rng, nvars) for _ in range(count)], nvars)


def _times_frame(x: dict, rank: int):
    return [{(j, e): c for e, c in x.items()} for j in range(rank)]


class _Chain:
    """Per-degree chain data C_i = N_i (lifted), D_i = N_{i-1} + x_i F."""

    def __init__(self, M, seq: GeneralSequence, depth: int):
        self.M = M
        self.seq = seq
        self.depth = depth
        self._memo = {}

    def stages(self, v):
        data = self._memo.get(v)
        if data is None:
            P = self.M.piece(v)
            q, s, fld = P.rank, P.nvars, P.fld
            xs = [{}] + self.seq.elements
            prev_c = list(P.relations)
            data = []
            for i in range(self.depth + 1):
                d_gens = prev_c + (_times_frame(xs[i], q) if i < len(xs) and xs[i] else [])
                c_gens = saturation_vectors(d_gens, q, s, fld)
                data.append((d_gens, c_gens, q, s, fld))
                prev_c = c_gens
            self._memo[v] = data
        return data

    def torsion_length(self, i, v):
        d_gens, c_gens, q, s, fld = self.stages(v)[i]
        return subquotient(q, c_gens, d_gens, [], s, fld).length()


@dataclass
class ChainStage:
    index: int
    chain: _Chain

    def piece(self, v) -> PieceModule:
        """(Q_i)_v as k[u]^q / D_i."""
        d_gens, _c, q, s, fld = self.chain.stages(v)[self.index]
        return PieceModule(q, d_gens, s, fld)

    def torsion_length(self, v) -> int:
        return self.chain.torsion_length(self.index, v)


def chain_stage(M, seq: GeneralSequence, i: int) -> ChainStage:
    if i < 0 or i > len(seq):
        raise ValueError("stage index out of range")
    return ChainStage(i, _Chain(M, seq, i))


def _sv_vector(M, seq, r, options):
    chain = _Chain(M, seq, r)
    start = max(options.start, observed_degree(M) + 2)
    vals = []
    for i in range(r + 1):
        fit = fit_univariate(lambda v, i=i: chain.torsion_length(i, v), options, cap=options.vmax, start=start)
        d = r - i  # j_{r-i+1} is e of degree r - i
        if not fit.empty and fit.degree > d:
            vals.append(None)
        else:
            vals.append(fit.leading_multiplicity(d))
    return vals


def length_formula_vector(M, seed=0, r: int | None = None, reference: PolarVector | None = None,
                          options: WindowOptions = DEFAULT_WINDOW, max_resample: int = MAX_RESAMPLE) -> PolarVector:
    """(j_{r+1}(Q_0), j_r(Q_1), ..., j_1(Q_r)).

    With a ``reference`` vector, disagreement triggers resampling with fresh
    seeds; GenericityFailure after ``max_resample`` attempts.
    """
    if M.nvars == 0:
        ref = reference or polar_vector(M, r_override=r, options=options)
        return PolarVector(ref.r, ref.values, "hilbert-fit (no general elements when m = 0)",
                           ref.fit_degree, ref.window, ref.margin_verified)
    if r is None:
        r = (reference or polar_vector(M, options=options)).r
    attempts = max_resample if reference is not None else 1
    seen = []
    for attempt in range(attempts):
        s = seed if attempt == 0 else f"{seed}:resample{attempt}"
        seq = sample_general(s, r, M.nvars, M.fld)
        vals = _sv_vector(M, seq, r, options)
        if None not in vals:
            vec = PolarVector(r, vals, "sv-route")
            if reference is None or vec == reference:
                return vec
        seen.append(vals)
    raise GenericityFailure(f"saturation-chain vectors {seen} never matched {reference}")


@dataclass
class CrossValidation:
    reference: PolarVector
    per_seed: dict = field(default_factory=dict)

    @property
    def all_agree(self):
        return all(v == self.reference for v in self.per_seed.values())

    def disagreements(self):
        return {s: v for s, v in self.per_seed.items() if v != self.reference}


def cross_validate(M, seeds, r: int | None = None, options: WindowOptions = DEFAULT_WINDOW) -> CrossValidation:
    seeds = list(seeds)
    if not seeds:
        raise ValueError("at least one seed is required")
    ref = polar_vector(M, r_override=r, options=options)
    report = CrossValidation(ref)
    for s in seeds:
        try:
            report.per_seed[s] = length_formula_vector(M, s, r=ref.r, options=options)
        except GenericityFailure as exc:
            report.per_seed[s] = str(exc)
    return report

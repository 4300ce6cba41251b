"""Brute-force verifiers and randomized property suites.

``brute_hilbert`` counts dim_k M_v / m^(n+1) M_v by writing down every
spanning vector u^a * x^c * e_i of the truncated piece and row reducing the
relation matrix.  It only shares the polynomial parser with the rest of the
package.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceeded, EmptySupport, NotMonomial, PolarError
from .graded import ColonModule, ModulePresentation, PolyRing, SubmoduleGenerated
from .hilbert import DEFAULT_WINDOW, WindowOptions
from .polar import general_coefficients, polar_vector
from .problem import ProblemDescription

BRUTE_BUDGET = 400_000


# ---------------------------------------------------------------------------
# brute force Hilbert function


def _exponents(nvars, total):
    return [e for e in itertools.product(range(total + 1), repeat=nvars) if sum(e) == total]


def _exponents_upto(nvars, bound):
    return [e for e in itertools.product(range(bound + 1), repeat=nvars) if sum(e) <= bound]


def _raw_data(M):
    """(ring, shifts, [columns], [algebra relations]) from a description or presentation."""
    if isinstance(M, ProblemDescription):
        ring = PolyRing(M.base_vars, M.poly_vars, M.field)
        rels = [ring.parse(f) for f in M.relations]
        if M.module is None:
            return ring, [0], [], rels
        cols = [[ring.parse(f) for f in col] for col in M.module["relations"]]
        return ring, list(M.module["shifts"]), cols, rels
    if isinstance(M, ModulePresentation) and not hasattr(M, "gens"):
        alg = M.algebra()
        return M.ring, list(M.shifts), [col for _d, col in M.columns], list(alg.relation_polys)
    raise TypeError("brute_hilbert needs an explicitly presented module")


def _column_degree(col, shifts):
    for f, d in zip(col, shifts):
        for (x, _u), c in f.items():
            if c:
                return sum(x) + d
    return None


class _Echelon:
    """Incremental row echelon form over Q or GF(p), rows as {column: value}."""

    def __init__(self, p):
        self.p = p
        self.pivots = {}
        self.steps = 0

    def _norm(self, row, c):
        a = row[c]
        if self.p:
            inv = pow(a, -1, self.p)
            return {k: v * inv % self.p for k, v in row.items()}
        if a == 1:
            return dict(row)
        if a == -1:
            return {k: -v for k, v in row.items()}
        return {k: Fraction(v) / a for k, v in row.items()}

    def add(self, row):
        row = {k: v for k, v in row.items() if v}
        while row:
            self.steps += 1
            if self.steps > BRUTE_BUDGET:
                raise BudgetExceeded("brute-force elimination ran past its budget")
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                self.pivots[c] = self._norm(row, c)
                return
            a = row[c]
            for k, v in piv.items():
                nv = row.get(k, 0) - a * v
                if self.p:
                    nv %= self.p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)

    @property
    def rank(self):
        return len(self.pivots)


def brute_hilbert(M, v: int, n: int) -> int:
    """dim_k M_v / m^(n+1) M_v by direct linear algebra."""
    if n < 0:
        return 0
    ring, shifts, cols, alg_rels = _raw_data(M)
    s, m = ring.s, ring.m
    umonos = _exponents_upto(s, n)
    frame = {}
    for i, d in enumerate(shifts):
        if v - d < 0:
            continue
        for x in _exponents(m, v - d):
            for a in umonos:
                frame[(i, x, a)] = len(frame)
    if not frame:
        return 0

    # relation generators as (degree, polys per generator)
    gens = []
    for col in cols:
        d = _column_degree(col, shifts)
        if d is not None:
            gens.append((d, col))
    for i, d in enumerate(shifts):
        for f in alg_rels:
            degs = {sum(x) for (x, _u) in f}
            if not f:
                continue
            polys = [{} for _ in shifts]
            polys[i] = f
            gens.append((d + degs.pop(), polys))

    p = ring.fld.characteristic if ring.fld.is_prime_field else 0
    ech = _Echelon(p)
    for d, polys in gens:
        if d > v:
            continue
        for mu in _exponents(m, v - d):
            for beta in umonos:
                row = {}
                for i, f in enumerate(polys):
                    for (x, u), c in f.items():
                        a = tuple(p1 + p2 for p1, p2 in zip(u, beta))
                        if sum(a) > n:
                            continue
                        key = frame[(i, tuple(p1 + p2 for p1, p2 in zip(x, mu)), a)]
                        row[key] = row.get(key, 0) + c
                if p:
                    row = {k: c % p for k, c in row.items()}
                ech.add(row)
    return len(frame) - ech.rank


def brute_table(M, v0: int, n0: int, width: int) -> dict:
    return {(v, nn): brute_hilbert(M, v, nn) for v in range(v0, v0 + width) for nn in range(n0, n0 + width)}


# ---------------------------------------------------------------------------
# reports


@dataclass
class PropertyReport:
    name: str
    instances: int = 0
    failures: list = field(default_factory=list)
    seconds: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.instances > 0 and not self.failures

    def record(self, instance: dict, detail: str):
        self.failures.append({"instance": instance, "detail": detail})

    def summary(self) -> str:
        status = "ok" if self.passed else f"{len(self.failures)} failures"
        total = sum(self.seconds)
        return f"{self.name}: {self.instances} instances, {status}, {total:.1f}s"


# ---------------------------------------------------------------------------
# random monomial fixtures


def _names(s, m):
    base = ["u"] if s == 1 else [f"u{i + 1}" for i in range(s)]
    return base, ["x", "y", "z"][:m]


def _mono_string(names, exps):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def random_monomial(rng, base, poly, xdeg, umax=2):
    u = [rng.randint(0, umax) for _ in base]
    x = [0] * len(poly)
    for _ in range(xdeg):
        x[rng.randrange(len(poly))] += 1
    return _mono_string(base + poly, u + x)


def random_monomial_problem(rng: random.Random, *, allow_field_base=True, allow_module=True) -> ProblemDescription:
    """A small standard graded algebra with monomial relations, sometimes
    with a module over it.
    """
    s = rng.choice([0, 1, 1, 2, 2] if allow_field_base else [1, 1, 2, 2])
    m = rng.choice([1, 2, 2])
    base, poly = _names(s, m)
    relations = [random_monomial(rng, base, poly, rng.randint(1, 2)) for _ in range(rng.randint(0, 2))]
    doc = {"base_vars": base, "poly_vars": poly, "relations": relations}
    if allow_module and rng.random() < 0.3:
        shifts = sorted(rng.choice([0, 1]) for _ in range(2))
        col = [random_monomial(rng, base, poly, 1 + max(shifts) - d, 1) for d in shifts]
        if rng.random() < 0.5:
            col[rng.randrange(2)] = "0"
        doc["module"] = {"gens": 2, "shifts": shifts, "relations": [col]}
    return ProblemDescription.from_dict(doc)


def _support_ok(problem, options):
    try:
        return polar_vector(problem.module_object(), options=options)
    except EmptySupport:
        return None


# ---------------------------------------------------------------------------
# additivity


def _with_column(problem: ProblemDescription, col):
    doc = problem.to_dict()
    mod = doc.get("module") or {"gens": 1, "shifts": [0], "relations": []}
    mod["relations"] = list(mod["relations"]) + [list(col)]
    doc["module"] = mod
    return ProblemDescription.from_dict(doc)


def additivity_instance(problem: ProblemDescription, generator: list, options: WindowOptions = DEFAULT_WINDOW):
    """Check additivity for M' = B*g ⊆ M and M'' = M/M'.  Returns (ok, detail)."""
    M = problem.module_object()
    ring = M.ring
    shifts = M.shifts
    polys = [ring.parse(g) for g in generator]
    deg = None
    for f, d in zip(polys, shifts):
        for (x, _u) in f:
            deg = sum(x) + d
    pv = polar_vector(M, options=options)
    sub = SubmoduleGenerated(M, [(deg, M.element(polys, deg))])
    quot = _with_column(problem, generator).module_object()
    p1 = polar_vector(sub, r_override=pv.r, options=options)
    p2 = polar_vector(quot, r_override=pv.r, options=options)
    if p1 + p2 != pv:
        return False, f"m(M) = {pv.as_list()} but m(M') + m(M'') = {p1.as_list()} + {p2.as_list()}"
    w = pv.window
    top = w["v0"] + w["width"]
    ntop = w["n0"] + w["width"]
    for v in range(w["v0"], top):
        hm = M.piece(v).hilbert_samuel(ntop)
        h1 = sub.piece(v).hilbert_samuel(ntop)
        h2 = quot.piece(v).hilbert_samuel(ntop)
        for nn in range(w["n0"], ntop):
            if h1[nn] + h2[nn] - hm[nn] < 0:
                return False, f"Q({v},{nn}) = {h1[nn] + h2[nn] - hm[nn]} < 0"
    return True, ""


def additivity_suite(generator=random_monomial_problem, trials: int = 25, seed: int = 0,
                     options: WindowOptions = DEFAULT_WINDOW) -> PropertyReport:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(f"additivity:{seed}")
    report = PropertyReport("additivity")
    while report.instances < trials:
        problem = generator(rng)
        if _support_ok(problem, options) is None:
            continue
        M = problem.module_object()
        base, poly = list(problem.base_vars), list(problem.poly_vars)
        i = rng.randrange(len(M.shifts))
        g = ["0"] * len(M.shifts)
        g[i] = random_monomial(rng, base, poly, rng.randint(0, 1), 1)
        instance = {"problem": problem.to_dict(), "submodule_generator": g}
        t0 = time.perf_counter()
        try:
            ok, detail = additivity_instance(problem, g, options)
        except PolarError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        report.seconds.append(time.perf_counter() - t0)
        report.instances += 1
        if not ok:
            report.record(instance, detail)
    return report


# ---------------------------------------------------------------------------
# associativity for monomial relations


def _monomial_exponents(problem: ProblemDescription):
    ring = PolyRing(problem.base_vars, problem.poly_vars, problem.field)
    gens = []
    for f in problem.relations:
        poly = ring.parse(f)
        if len(poly) != 1:
            raise NotMonomial(f"relation {f!r} is not a monomial")
        (x, u), _c = next(iter(poly.items()))
        gens.append(tuple(u) + tuple(x))
    return gens


def minimal_primes(problem: ProblemDescription):
    """Minimal primes of a monomial ideal as sets of variable indices
    (base variables first, then the polynomial variables).
    """
    gens = _monomial_exponents(problem)
    nv = len(problem.base_vars) + len(problem.poly_vars)
    supports = [frozenset(k for k, e in enumerate(g) if e) for g in gens]
    if any(not sup for sup in supports):
        return []
    covers = []
    for size in range(nv + 1):
        for S in itertools.combinations(range(nv), size):
            S = frozenset(S)
            if all(S & sup for sup in supports) and not any(c <= S for c in covers):
                covers.append(S)
    return covers


def local_length(problem: ProblemDescription, prime) -> int:
    """Length of B localized at a minimal prime: standard monomials in the
    prime's variables once the other variables are inverted.
    """
    gens = _monomial_exponents(problem)
    S = sorted(prime)
    proj = [tuple(g[k] for k in S) for g in gens]
    if not S:
        return 1
    bounds = []
    for j in range(len(S)):
        pure = [p[j] for p in proj if all(p[k] == 0 for k in range(len(S)) if k != j)]
        if not pure:
            raise PolarError("prime is not minimal over the relations")
        bounds.append(min(pure))
    count = 0
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(all(e[k] >= p[k] for k in range(len(S))) for p in proj):
            count += 1
    return count


def monomial_support_dimension(problem: ProblemDescription) -> int:
    """dim of the projective support of B = k[u][x]/(monomials); -1 when empty."""
    s, m = len(problem.base_vars), len(problem.poly_vars)
    primes = minimal_primes(problem)
    dims = [s + m - len(S) - 1 for S in primes if not set(range(s, s + m)) <= S]
    return max(dims, default=-1)


def _prime_problem(problem: ProblemDescription, prime):
    names = list(problem.base_vars) + list(problem.poly_vars)
    return ProblemDescription.from_dict({
        "field": problem.field.to_json(),
        "base_vars": list(problem.base_vars),
        "poly_vars": list(problem.poly_vars),
        "relations": [names[k] for k in sorted(prime)],
    })


def associativity_monomial(problem: ProblemDescription, options: WindowOptions = DEFAULT_WINDOW):
    """(m(B), sum over minimal primes of length * m(B/p), terms)."""
    if problem.module is not None:
        raise NotMonomial("associativity is checked for M = B only")
    s, m = len(problem.base_vars), len(problem.poly_vars)
    pv = polar_vector(problem.algebra(), options=options)
    total = [0] * (pv.r + 1)
    terms = []
    for S in minimal_primes(problem):
        if s + m - len(S) != pv.r + 1 or set(range(s, s + m)) <= S:
            continue
        length = local_length(problem, S)
        q = _prime_problem(problem, S)
        vec = polar_vector(q.algebra(), r_override=pv.r, options=options)
        terms.append((sorted(S), length, vec.as_list()))
        total = [a + length * b for a, b in zip(total, vec.values)]
    return pv.as_list(), total, terms


def associativity_suite(trials: int = 25, seed: int = 0, options: WindowOptions = DEFAULT_WINDOW) -> PropertyReport:
    rng = random.Random(f"associativity:{seed}")
    report = PropertyReport("associativity")
    while report.instances < trials:
        problem = random_monomial_problem(rng, allow_module=False)
        if _support_ok(problem, options) is None:
            continue
        t0 = time.perf_counter()
        try:
            lhs, rhs, terms = associativity_monomial(problem, options)
            ok = lhs == rhs
            detail = "" if ok else f"m(B) = {lhs} but the prime sum is {rhs} from {terms}"
        except PolarError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        report.seconds.append(time.perf_counter() - t0)
        report.instances += 1
        if not ok:
            report.record({"problem": problem.to_dict()}, detail)
    return report


# ---------------------------------------------------------------------------
# hypersurface sections


def adic_order(B, b, cap: int = 8):
    """Largest k with b in m^k B_alpha (None when b vanishes locally)."""
    alpha = B.ring.x_degree(b)
    P = B.piece(alpha)
    w = B.embed(b)
    from .exactlin import PieceModule

    with_b = PieceModule(P.rank, list(P.relations) + [w], P.nvars, P.fld)
    k = 0
    while k < cap:
        if with_b.truncated_dimension(k) != P.truncated_dimension(k):
            return k
        k += 1
    return None


def hypersurface_instance(problem: ProblemDescription, b_text: str, general: bool,
                          options: WindowOptions = DEFAULT_WINDOW):
    """Returns (status, detail) with status in {"ok", "fail", "skip"}."""
    M = problem.module_object()
    B = problem.algebra()
    ring = M.ring
    b = ring.parse(b_text)
    if not b:
        return "skip", "zero element"
    pv = polar_vector(M, options=options)
    r = pv.r
    if r < 1:
        return "skip", "r = 0"
    beta = adic_order(B, b)
    if beta is None:
        return "skip", "b vanishes locally"
    alpha = ring.x_degree(b)
    cut = _with_element(problem, b_text).module_object()
    try:
        lhs = polar_vector(cut, r_override=r - 1, options=options)
    except ValueError:
        return "skip", "M/bM has full dimension"
    try:
        colon = polar_vector(ColonModule(M, b), r_override=r - 1, options=options)
    except ValueError:
        return "skip", "(0 :_M b) has full dimension"
    rhs = [alpha * pv[i] + beta * pv[i + 1] + colon[i] for i in range(r)]
    if any(a < c for a, c in zip(lhs.values, rhs)):
        return "fail", f"m(M/bM) = {lhs.as_list()} < {rhs} (alpha={alpha}, beta={beta})"
    if general and list(lhs.values) != rhs:
        return "fail", f"general b: m(M/bM) = {lhs.as_list()} != {rhs} (alpha={alpha}, beta={beta})"
    return "ok", ""


def _with_element(problem: ProblemDescription, b_text: str) -> ProblemDescription:
    rank = problem.module["gens"] if problem.module else 1
    doc = problem.to_dict()
    mod = doc.get("module") or {"gens": 1, "shifts": [0], "relations": []}
    for i in range(rank):
        col = ["0"] * rank
        col[i] = b_text
        mod["relations"] = list(mod["relations"]) + [col]
    doc["module"] = mod
    return ProblemDescription.from_dict(doc)


def _combination(rng, names):
    cs = general_coefficients(rng, len(names))
    terms = [f"({c})*{n}" for c, n in zip(cs, names) if c]
    return " + ".join(terms)


def hypersurface_fixtures(count: int, seed: int = 0):
    """(problem, b, general) triples: monomial b, general linear forms, general elements of m."""
    rng = random.Random(f"hypersurface:{seed}")
    out = []
    kinds = ["monomial", "linear", "base"]
    k = 0
    while len(out) < count:
        problem = random_monomial_problem(rng, allow_field_base=False)
        kind = kinds[k % 3]
        k += 1
        base, poly = list(problem.base_vars), list(problem.poly_vars)
        if kind == "monomial":
            b, general = random_monomial(rng, base, poly, rng.randint(0, 1), 1), False
            if b == "1":
                continue
        elif kind == "linear":
            b, general = _combination(rng, poly), True
        else:
            b, general = _combination(rng, base), True
        out.append((problem, b, general))
    return out


def hypersurface_suite(fixtures=None, seed: int = 0, options: WindowOptions = DEFAULT_WINDOW,
                       minimum: int = 25) -> PropertyReport:
    """Run the section inequality on fixtures (generated when not given).

    Fixtures failing the dimension precondition are skipped; generation
    continues until ``minimum`` instances have actually been checked.
    """
    report = PropertyReport("hypersurface")
    given = fixtures is not None
    queue = list(fixtures) if given else hypersurface_fixtures(2 * minimum, seed)
    batch = 1
    while True:
        for problem, b, general in queue:
            if _support_ok(problem, options) is None:
                continue
            t0 = time.perf_counter()
            try:
                status, detail = hypersurface_instance(problem, b, general, options)
            except PolarError as exc:
                status, detail = "fail", f"{type(exc).__name__}: {exc}"
            if status == "skip":
                continue
            report.seconds.append(time.perf_counter() - t0)
            report.instances += 1
            if status == "fail":
                report.record({"problem": problem.to_dict(), "element": b, "general": general}, detail)
        if given or report.instances >= minimum:
            return report
        queue = hypersurface_fixtures(minimum, f"{seed}:{batch}")
        batch += 1


def rerun(record: dict, options: WindowOptions = DEFAULT_WINDOW):
    """Re-run a failure record from any suite."""
    inst = record.get("instance", record)
    problem = ProblemDescription.from_dict(inst["problem"])
    if "check" in inst:
        return IDENTITY_CHECKS[inst["check"]][0](problem, options)
    if "submodule_generator" in inst:
        return additivity_instance(problem, inst["submodule_generator"], options)
    if "element" in inst:
        return hypersurface_instance(problem, inst["element"], inst["general"], options)
    lhs, rhs, _terms = associativity_monomial(problem, options)
    return lhs == rhs, f"{lhs} vs {rhs}"


# ---------------------------------------------------------------------------
# identities checked one fixture at a time


def _vanishing(problem, options):
    from .criteria import vanishing_profile

    B = problem.algebra()
    pv = polar_vector(B, options=options)
    band = vanishing_profile(B, options, r=pv.r)
    if band.admits(pv):
        return "ok", ""
    return "fail", f"{pv.as_list()} has entries outside [{band.i_min}, {band.i_max}]"


def _j_identity(problem, options):
    from .polar import j_multiplicity

    M = problem.module_object()
    pv = polar_vector(M, options=options)
    j = j_multiplicity(M, pv.r + 1, options)
    if j == pv[0]:
        return "ok", ""
    return "fail", f"m_r^0 = {pv[0]} but j_(r+1) = {j}"


def _top_polar(problem, options):
    from .polar import top_polar_check

    rep = top_polar_check(problem.module_object(), options)
    if rep.agrees:
        return "ok", ""
    return "fail", f"m_r^r = {rep.expected} but e_r(M_v) = {rep.samples}"


def _linear_cut(problem, options, seed=0):
    from .polar import general_linear_cut

    M = problem.module_object()
    pv = polar_vector(M, options=options)
    if pv.r == 0:
        return "skip", "r = 0"
    general_linear_cut(M, seed=seed, options=options, pv=pv)
    return "ok", ""


IDENTITY_CHECKS = {
    "vanishing-band": (_vanishing, False),
    "j-multiplicity": (_j_identity, True),
    "top-polar": (_top_polar, True),
    "linear-cut": (_linear_cut, True),
}


def identity_suite(name: str, trials: int = 25, seed: int = 0,
                   options: WindowOptions = DEFAULT_WINDOW) -> PropertyReport:
    """Run one of IDENTITY_CHECKS on random monomial fixtures."""
    check, modules = IDENTITY_CHECKS[name]
    rng = random.Random(f"{name}:{seed}")
    report = PropertyReport(name)
    while report.instances < trials:
        problem = random_monomial_problem(rng, allow_module=modules)
        if _support_ok(problem, options) is None:
            continue
        t0 = time.perf_counter()
        try:
            status, detail = check(problem, options)
        except PolarError as exc:
            status, detail = "fail", f"{type(exc).__name__}: {exc}"
        if status == "skip":
            continue
        report.seconds.append(time.perf_counter() - t0)
        report.instances += 1
        if status == "fail":
            report.record({"problem": problem.to_dict(), "check": name}, detail)
    return report


def all_suites(trials: int = 25, seed: int = 0, options: WindowOptions = DEFAULT_WINDOW):
    reports = [
        additivity_suite(trials=trials, seed=seed, options=options),
        associativity_suite(trials, seed, options),
        hypersurface_suite(seed=seed, options=options, minimum=trials),
    ]
    reports.extend(identity_suite(name, trials, seed, options) for name in IDENTITY_CHECKS)
    return reports

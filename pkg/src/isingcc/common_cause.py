"""Noncommuting common causes for the EPR-Bohm correlations.

A partition of unity ``{C_k}`` screens off a correlating pair ``(A, B)``
when, for every ``k``,

    E(A B C_k) E(A' B' C_k) == E(A B' C_k) E(A' B C_k)

with ``E = phi o (x -> sum_j C_j x C_j)`` and primes denoting complements.
For trace-1/2 members the same identity reads
``Tr(rho_k A B) Tr(rho_k A' B') == Tr(rho_k A B') Tr(rho_k A' B)`` with
``rho_k = 2 C_k rho C_k``; residuals are reported in this normalization.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .element import ONE, TOL, AlgebraElement, commutator, is_projection, relative_commutant_basis
from .dynamics import joint_event_basis
from .oracle import operator_norm
from .scenario import (
    O_A,
    O_B,
    O_C,
    ScenarioSpec,
    UnitVector3,
    common_past,
    correlation,
    correlation_product_form,
    events,
    state_of,
    supported_in,
)


class PartitionError(ValueError):
    """Members are not orthogonal projections summing to the identity."""


@dataclass(frozen=True)
class Partition:
    members: tuple[AlgebraElement, ...]
    tol: float = TOL

    def __post_init__(self):
        ms = tuple(self.members)
        object.__setattr__(self, "members", ms)
        if not ms:
            raise PartitionError("empty partition")
        for k, c in enumerate(ms):
            if not is_projection(c, self.tol):
                raise PartitionError(f"member {k + 1} is not a projection")
        for j in range(len(ms)):
            for k in range(j + 1, len(ms)):
                if not (ms[j] * ms[k]).is_zero(self.tol):
                    raise PartitionError(f"members {j + 1} and {k + 1} are not orthogonal")
        total = AlgebraElement.zero()
        for c in ms:
            total = total + c
        if not total.isclose(ONE, self.tol):
            raise PartitionError("members do not sum to the identity")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def conditional_expectation(P: Partition, x: AlgebraElement) -> AlgebraElement:
    out = AlgebraElement.zero()
    for c in P:
        out = out + c * x * c
    return out


# Bloch triples (X, Y, iXY) of the two-point algebras inside A(O_C).
# "proof" spans O_{-1/2, 0} and reproduces the rho_1 expansion and the
# residual formula; "printed" spans O_{0, 1/2}.
LAYOUTS = {
    "proof": (-0.5, 0.0),
    "printed": (0.0, 0.5),
}


def common_cause_projection(
    c: Sequence[float] | UnitVector3,
    c_tilde: Sequence[float] | UnitVector3,
    layout: str = "proof",
) -> AlgebraElement:
    """Rank-2 projection of A(O_C) built from two Bloch vectors.

    ``Z = U_{-1/2} U_{1/2}`` is central in A(O_C), so ``(1 +- Z)/2`` split
    it into two copies of M_2; ``c`` and ``c_tilde`` choose a minimal
    projection in each copy.
    """
    c, ct = UnitVector3.of(c), UnitVector3.of(c_tilde)
    try:
        x, y = LAYOUTS[layout]
    except KeyError:
        raise ValueError(f"unknown layout {layout!r}") from None
    U = AlgebraElement.gen
    z = U(-0.5) * U(0.5)
    X, Y = U(x), U(y)
    iXY = 1j * X * Y

    def bloch(v: UnitVector3) -> AlgebraElement:
        return ONE + v.r1 * X + v.r2 * Y + v.r3 * iXY

    return 0.25 * (ONE + z) * bloch(c) + 0.25 * (ONE - z) * bloch(ct)


@dataclass(frozen=True)
class CommonCauseCandidate:
    c: UnitVector3
    c_tilde: UnitVector3
    layout: str = "proof"

    def __post_init__(self):
        object.__setattr__(self, "c", UnitVector3.of(self.c))
        object.__setattr__(self, "c_tilde", UnitVector3.of(self.c_tilde))

    @property
    def C(self) -> AlgebraElement:
        return common_cause_projection(self.c, self.c_tilde, self.layout)

    @property
    def C_perp(self) -> AlgebraElement:
        return common_cause_projection(-self.c, -self.c_tilde, self.layout)

    def partition(self) -> Partition:
        return Partition((self.C, self.C_perp))

    def to_json(self) -> dict:
        out = {"c": self.c.to_json(), "c_tilde": self.c_tilde.to_json()}
        if self.layout != "proof":
            out["layout"] = self.layout
        return out


def rho_k(Ck: AlgebraElement, rho: AlgebraElement) -> AlgebraElement:
    return 2 * (Ck * rho * Ck)


def rho_c_closed_form(c, c_tilde, lam: float) -> AlgebraElement:
    """Generator expansion of ``2 C rho C`` for the special dynamics."""
    c, ct = UnitVector3.of(c), UnitVector3.of(c_tilde)
    c1, c2, c3 = c
    t1, t2, t3 = ct
    M = AlgebraElement.mono
    p, q = (1 + lam) / 2, (1 - lam) / 2
    return (
        ONE
        + lam * M(-0.5, 0.5)
        + p * c1 * (M(-0.5) + M(0.5))
        + q * t1 * (M(-0.5) - M(0.5))
        + p * c2 * (M(0) - M(-0.5, 0, 0.5))
        - lam * c2 * (M(-1, 0, 1) + M(-1, -0.5, 0, 0.5, 1))
        + q * t2 * (M(0) + M(-0.5, 0, 0.5))
        + p * c3 * 1j * (M(-0.5, 0) - M(0, 0.5))
        + q * t3 * 1j * (M(-0.5, 0) + M(0, 0.5))
        + lam * c1 * c2 * (M(-1, -0.5, 0, 1) + M(-1, 0, 0.5, 1))
        + lam * c2 * c2 * (-M(-1, 1) + M(-1, -0.5, 0.5, 1))
        + lam * c2 * c3 * 1j * (M(-1, -0.5, 1) - M(-1, 0.5, 1))
    )


def residual_closed_form(a, b, c, c_tilde, lam: float) -> float:
    """Four times the trace-form screening-off residual, in closed form.

    The same value holds for both members ``C`` and ``C_perp``.
    """
    a, b, c, ct = (UnitVector3.of(v) for v in (a, b, c, c_tilde))
    return (
        lam * c.r1 * c.r2 * (-a.r1 * b.r2 + a.r2 * b.r1)
        - lam * c.r2 ** 2 * (a.r1 * b.r1 + a.r2 * b.r2)
        - (lam - (1 + lam) ** 2 / 4 * c.r3 ** 2 + (1 - lam) ** 2 / 4 * ct.r3 ** 2) * a.r3 * b.r3
    )


@dataclass
class CriterionEntry:
    k: int
    m: int
    n: int
    lhs: float
    rhs: float
    form: str  # "trace" (rho_k normalization) or "phi_E"
    phi_e_lhs: float
    phi_e_rhs: float

    @property
    def residual(self) -> float:
        return self.lhs - self.rhs

    def to_json(self) -> dict:
        return {"k": self.k, "m": self.m, "n": self.n, "lhs": self.lhs, "rhs": self.rhs, "residual": self.residual}


@dataclass
class CriterionReport:
    entries: list[CriterionEntry]
    tol: float = TOL
    max_residual: float = field(init=False)
    passed: bool = field(init=False)

    def __post_init__(self):
        self.max_residual = max((abs(e.residual) for e in self.entries), default=0.0)
        self.passed = self.max_residual < self.tol

    def __add__(self, other: "CriterionReport") -> "CriterionReport":
        return CriterionReport(self.entries + other.entries, min(self.tol, other.tol))


def _half_trace(Ck: AlgebraElement, tol: float) -> bool:
    return abs(Ck.trace() - 0.5) < tol


def cc_criterion(
    P: Partition,
    A: AlgebraElement,
    B: AlgebraElement,
    rho: AlgebraElement,
    tol: float = TOL,
    m: int = 1,
    n: int = 1,
) -> CriterionReport:
    """Screening-off test of one correlating pair against every member of ``P``."""
    if not commutator(A, B).is_zero(tol):
        raise ValueError("the correlating events must commute")
    Ap, Bp = ONE - A, ONE - B
    products = (A * B, Ap * Bp, A * Bp, Ap * B)
    entries = []
    for k, Ck in enumerate(P, start=1):
        sandwiched = Ck * rho * Ck
        # (phi o E)(X C_k) = phi(C_k X C_k) = Tr(C_k rho C_k X)
        e = [sandwiched.trace_with(x).real for x in products]
        lhs_e, rhs_e = e[0] * e[1], e[2] * e[3]
        if _half_trace(Ck, tol):
            # Tr(rho_k X) = 2 (phi o E)(X C_k)
            lhs, rhs, form = 4 * lhs_e, 4 * rhs_e, "trace"
        else:
            lhs, rhs, form = lhs_e, rhs_e, "phi_E"
        entries.append(CriterionEntry(k, m, n, lhs, rhs, form, lhs_e, rhs_e))
    return CriterionReport(entries, tol)


def criterion_all_pairs(P: Partition, spec: ScenarioSpec, rho: AlgebraElement | None = None, tol: float = TOL) -> CriterionReport:
    rho = state_of(spec) if rho is None else rho
    As, Bs = events(spec)
    report = CriterionReport([], tol)
    for m, A in enumerate(As, start=1):
        for n, B in enumerate(Bs, start=1):
            report = report + cc_criterion(P, A, B, rho, tol, m, n)
    return report


@dataclass
class JointReport:
    candidate: CommonCauseCandidate | None
    criterion: CriterionReport
    localized: bool
    region_in_common_past: bool
    commutator_norms: dict[str, float]

    @property
    def passed(self) -> bool:
        return self.criterion.passed

    @property
    def noncommuting(self) -> bool:
        return max(self.commutator_norms.values(), default=0.0) > self.criterion.tol

    def to_json(self) -> dict:
        return {
            "candidate": self.candidate.to_json() if self.candidate else None,
            "residuals": [e.to_json() for e in self.criterion.entries],
            "max_residual": self.criterion.max_residual,
            "pass": self.passed,
            "tol": self.criterion.tol,
            "localized_in_O_C": self.localized,
            "O_C_in_common_past": self.region_in_common_past,
            "noncommuting": self.noncommuting,
            "commutator_norms": self.commutator_norms,
        }


def joint_cc_check(
    P: Partition | CommonCauseCandidate,
    spec: ScenarioSpec,
    rho: AlgebraElement | None = None,
    tol: float = TOL,
) -> JointReport:
    """One partition screening off all four correlations, plus localization."""
    cand = P if isinstance(P, CommonCauseCandidate) else None
    part = P.partition() if cand else P
    rho = state_of(spec) if rho is None else rho
    crit = criterion_all_pairs(part, spec, rho, tol)
    As, Bs = events(spec)
    C1 = part.members[0]
    norms = {}
    for m, A in enumerate(As, start=1):
        norms[f"[C,A{m}]"] = operator_norm(commutator(C1, A))
    for n, B in enumerate(Bs, start=1):
        norms[f"[C,B{n}]"] = operator_norm(commutator(C1, B))
    localized = all(supported_in(c, O_C) for c in part)
    in_cpast = common_past().contains(O_C)
    return JointReport(cand, crit, localized, in_cpast, norms)


# grid search


GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def fibonacci_sphere(n: int) -> list[UnitVector3]:
    """``n`` near-uniform unit vectors; the polar axis is the third component.

    Latitudes ``z_k = 1 - 2k/(n-1)`` include both poles exactly.
    """
    if n < 2:
        raise ValueError("grid needs at least two points")
    pts = []
    for k in range(n):
        z = 1.0 - 2.0 * k / (n - 1)
        r = math.sqrt(max(0.0, 1.0 - z * z))
        ang = k * GOLDEN_ANGLE
        x, y = r * math.cos(ang), r * math.sin(ang)
        s = math.sqrt(x * x + y * y + z * z)
        pts.append(UnitVector3(x / s, y / s, z / s))
    return pts


def grid_spacing(n: int) -> float:
    """Typical nearest-neighbour distance of :func:`fibonacci_sphere`."""
    return math.sqrt(4 * math.pi / n)


@dataclass
class SearchHit:
    i: int
    j: int
    candidate: CommonCauseCandidate
    max_residual: float

    def to_json(self) -> dict:
        return {"grid_index": [self.i, self.j], "candidate": self.candidate.to_json(), "max_residual": self.max_residual}


def _row_residuals(args) -> list[float]:
    i, pts, spec, layout = args
    rho = state_of(spec)
    As, Bs = events(spec)
    prods = []
    for A in As:
        for B in Bs:
            Ap, Bp = ONE - A, ONE - B
            prods.append((A * B, Ap * Bp, A * Bp, Ap * B))
    out = []
    for ct in pts:
        worst = 0.0
        C = common_cause_projection(pts[i], ct, layout)
        for Ck in (C, ONE - C):
            s = Ck * rho * Ck
            for x1, x2, x3, x4 in prods:
                r = 4 * (s.trace_with(x1).real * s.trace_with(x2).real - s.trace_with(x3).real * s.trace_with(x4).real)
                worst = max(worst, abs(r))
        out.append(worst)
    return out


def search_common_causes(
    spec: ScenarioSpec,
    grid_n: int = 40,
    tol: float = TOL,
    workers: int = 1,
    layout: str = "proof",
) -> list[SearchHit]:
    """Scan ``(c, c_tilde)`` over a Fibonacci grid squared.

    Returns the candidates whose worst trace-form residual is below ``tol``,
    in grid order. The result does not depend on ``workers``.
    """
    pts = fibonacci_sphere(grid_n)
    jobs = [(i, pts, spec, layout) for i in range(grid_n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_row_residuals, jobs))
    else:
        rows = [_row_residuals(job) for job in jobs]
    hits = []
    for i, row in enumerate(rows):
        for j, r in enumerate(row):
            if r < tol:
                hits.append(SearchHit(i, j, CommonCauseCandidate(pts[i], pts[j], layout), r))
    return hits


# commuting common causes


@dataclass
class ObstructionReport:
    commutant_dimension: int
    distant_site: float
    d: float
    with_c: list[dict]
    criterion_passed: bool
    tol: float

    @property
    def obstruction_established(self) -> bool:
        scaled_ok = all(abs(r["with_C"] - r["d2_times_corr"]) < self.tol for r in self.with_c)
        nonzero = any(abs(r["with_C"]) >= self.tol for r in self.with_c)
        return self.commutant_dimension == 1 and scaled_ok and nonzero and not self.criterion_passed

    def to_json(self) -> dict:
        return {
            "commutant_dimension": self.commutant_dimension,
            "distant_site": self.distant_site,
            "d": self.d,
            "with_C": self.with_c,
            "criterion_pass": self.criterion_passed,
            "obstruction_established": self.obstruction_established,
            "tol": self.tol,
        }


def commuting_jcc_obstruction(
    spec: ScenarioSpec,
    rho: AlgebraElement | None = None,
    distant_site: float = 3,
    tol: float = TOL,
) -> ObstructionReport:
    """Evidence that no commuting partition screens off the correlations.

    The commutant of A(O_A) v A(O_B) inside itself is the scalars, so a
    commuting projection only contributes through its trace ``d``; a
    concrete far-away projection shows the screened correlation is the
    original one scaled by ``d**2``.
    """
    rho = state_of(spec) if rho is None else rho
    basis = joint_event_basis(spec.dynamics)
    sup = [x.support() for x in basis if x.support()]
    window = (min(s[0] for s in sup) / 2, max(s[1] for s in sup) / 2)
    comm = relative_commutant_basis(basis, window, within=basis, tol=tol)

    C = 0.5 * (ONE + AlgebraElement.gen(distant_site))
    d = C.trace().real
    As, Bs = events(spec)
    rows = []
    for m, A in enumerate(As, start=1):
        for n, B in enumerate(Bs, start=1):
            Ap, Bp = ONE - A, ONE - B
            t = [rho.trace_with(x * C).real for x in (A * B, Ap * Bp, A * Bp, Ap * B)]
            with_c = t[0] * t[1] - t[2] * t[3]
            corr = correlation(A, B, rho)
            rows.append({"m": m, "n": n, "with_C": with_c, "corr": corr, "d2_times_corr": d * d * corr,
                         "product_form_corr": correlation_product_form(A, B, rho)})
    crit = criterion_all_pairs(Partition((C, ONE - C)), spec, rho, tol)
    return ObstructionReport(len(comm), float(distant_site), d, rows, crit.passed, tol)


__all__ = [
    "CommonCauseCandidate", "CriterionEntry", "CriterionReport", "JointReport", "ObstructionReport",
    "O_A", "O_B", "Partition", "PartitionError", "SearchHit", "cc_criterion", "common_cause_projection",
    "commuting_jcc_obstruction", "conditional_expectation", "criterion_all_pairs", "fibonacci_sphere",
    "grid_spacing", "joint_cc_check", "residual_closed_form", "rho_c_closed_form", "rho_k",
    "search_common_causes",
]

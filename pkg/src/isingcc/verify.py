"""Self-contained verification suites behind ``isingcc verify``.

Each suite returns a JSON-ready dict with a top-level ``"pass"`` flag.
Random draws use fixed seeds so reports are reproducible.
"""

from __future__ import annotations

import math

import numpy as np

from . import dynamics as dyn
from .common_cause import (
    CommonCauseCandidate,
    commuting_jcc_obstruction,
    fibonacci_sphere,
    joint_cc_check,
)
from .element import ONE, TOL, AlgebraElement, commutator, is_selfadjoint
from .geometry import enumerate_cones
from .monomial import Monomial, mul_monomials
from .oracle import QubitWindow, normalized_trace, rep_element, rep_monomial
from .scenario import O_A, O_B, O_C, ScenarioSpec, common_past, spacelike_separated

PARAM_TUPLES = [
    dyn.DynamicsParams(0.0, 0.0, 1, 1),
    dyn.DynamicsParams(0.3, 0.0, 1, 1),
    dyn.DynamicsParams(-0.7, 0.0, -1, 1),
    dyn.DynamicsParams(0.4, 0.9, 1, 1),
    dyn.DynamicsParams(1.2, -0.5, 1, -1),
    dyn.DynamicsParams(-1.1, 0.25, -1, -1),
    dyn.DynamicsParams(math.pi / 2, math.pi / 2, 1, 1),
    dyn.DynamicsParams(0.8, math.pi / 2, -1, 1),
]


def random_monomial(rng: np.random.Generator, lo: int, hi: int) -> Monomial:
    """Uniform monomial over doubled sites ``lo..hi``."""
    mask = rng.integers(0, 2, size=hi - lo + 1)
    return tuple(int(lo + k) for k in np.flatnonzero(mask))


def random_element(rng: np.random.Generator, lo: int, hi: int, nterms: int = 6) -> AlgebraElement:
    terms = {}
    for _ in range(nterms):
        m = random_monomial(rng, lo, hi)
        terms[m] = terms.get(m, 0j) + complex(rng.normal(), rng.normal())
    return AlgebraElement(terms)


def _window_for(rng: np.random.Generator, max_qubits: int = 7) -> QubitWindow:
    q = int(rng.integers(1, max_qubits + 1))
    lo = int(rng.integers(-3, 2))
    return QubitWindow(lo, lo + q - 1)


def verify_oracle(seed: int = 0, n_mono: int = 1000, n_elem: int = 200, tol: float = TOL) -> dict:
    rng = np.random.default_rng(seed)
    mono_fail = 0
    for _ in range(n_mono):
        w = _window_for(rng)
        m1 = random_monomial(rng, 2 * w.lo, 2 * w.hi)
        m2 = random_monomial(rng, 2 * w.lo, 2 * w.hi)
        s, m = mul_monomials(m1, m2)
        if not np.array_equal(rep_monomial(m1, w) @ rep_monomial(m2, w), s * rep_monomial(m, w)):
            mono_fail += 1
    worst = {"product": 0.0, "adjoint": 0.0, "trace": 0.0}
    for _ in range(n_elem):
        w = _window_for(rng)
        x = random_element(rng, 2 * w.lo, 2 * w.hi)
        y = random_element(rng, 2 * w.lo, 2 * w.hi)
        rx, ry = rep_element(x, w), rep_element(y, w)
        worst["product"] = max(worst["product"], float(np.abs(rep_element(x * y, w) - rx @ ry).max()))
        worst["adjoint"] = max(worst["adjoint"], float(np.abs(rep_element(x.adjoint(), w) - rx.conj().T).max()))
        worst["trace"] = max(worst["trace"], abs(x.trace() - normalized_trace(rx)))
    ok = mono_fail == 0 and all(v < tol for v in worst.values())
    return {"suite": "oracle", "monomial_pairs": n_mono, "monomial_mismatches": mono_fail,
            "element_pairs": n_elem, "max_errors": worst, "tol": tol, "pass": ok}


def verify_dynamics(seed: int = 0, n_pairs: int = 200, tol: float = TOL) -> dict:
    rng = np.random.default_rng(seed)
    sites = list(range(-10, 10))  # 20 doubled sites: -5 .. 9/2
    rows = []
    ok = True
    for p in PARAM_TUPLES:
        imgs = {d: dyn.beta_generator(d / 2, p) for d in sites}
        unitary = all((g * g).isclose(ONE, tol) and is_selfadjoint(g, tol) for g in imgs.values())
        relations = True
        for i in sites:
            for j in sites:
                if j <= i:
                    continue
                gi, gj = imgs[i], imgs[j]
                if abs(i - j) == 1:
                    good = (gi * gj + gj * gi).is_zero(tol)
                else:
                    good = commutator(gi, gj).is_zero(tol)
                relations &= good
        support = all(
            g.support() is None or (g.support()[0] >= d - 2 + d % 2 and g.support()[1] <= d + 2 - d % 2)
            for d, g in imgs.items()
        )
        rows.append({"params": p.to_json(), "selfadjoint_unitary": unitary, "relations": relations, "support": support})
        ok &= unitary and relations and support
    hom = 0.0
    trc = 0.0
    for k in range(n_pairs):
        p = PARAM_TUPLES[k % len(PARAM_TUPLES)]
        x = random_element(rng, -3, 3, 3)
        y = random_element(rng, -3, 3, 3)
        hom = max(hom, (dyn.beta(x * y, p) - dyn.beta(x, p) * dyn.beta(y, p)).sup_norm())
        trc = max(trc, abs(dyn.beta(x, p).trace() - x.trace()))
    special = all(
        (dyn.beta_generator(x + 0.5, dyn.SPECIAL).terms == {(2 * x, 2 * x + 1, 2 * x + 2): 1 + 0j})
        for x in range(-5, 5)
    )
    ok &= hom < tol and trc < tol and special
    return {"suite": "dynamics", "generators": rows, "homomorphism_error": hom, "trace_error": trc,
            "special_closed_form": special, "tol": tol, "pass": ok}


def verify_dimensions(params=(dyn.SPECIAL, dyn.DynamicsParams(0.3, 0.7, 1, -1)), max_n: int = 5) -> dict:
    rows = []
    ok = True
    for p in params:
        for cone in enumerate_cones(max_n):
            got = dyn.local_algebra_dimension(cone, p)
            want = dyn.expected_dimension(cone)
            rows.append({"params": p.to_json(), "cone": [cone.u_lo, cone.u_hi, cone.v_lo, cone.v_hi],
                         "n": cone.n, "dimension": got, "expected": want, "type": dyn.matrix_type(cone)})
            ok &= got == want
    return {"suite": "dimensions", "cones": rows, "pass": ok}


def verify_primitive_causality(params=(dyn.SPECIAL, dyn.DynamicsParams(0.3, 0.0, 1, 1), dyn.DynamicsParams(0.4, 0.9, -1, 1)),
                               tol: float = TOL) -> dict:
    rows = []
    ok = True
    for p in params:
        good = dyn.primitive_causality_check(p, (-1, 1), 1, tol)
        shrunk = dyn.primitive_causality_check(p, (-0.5, 0.5), 1, tol)
        rows.append({"params": p.to_json(), "report": good.to_json(), "negative_control": shrunk.to_json()})
        ok &= good.passed and not shrunk.passed
    return {"suite": "primitive-causality", "runs": rows, "pass": ok}


def prop1_candidates(n: int = 20) -> list[CommonCauseCandidate]:
    """``c`` on the ``c2 = 0`` circle times ``c_tilde`` on a Fibonacci grid."""
    circle = [(math.cos(2 * math.pi * k / n), 0.0, math.sin(2 * math.pi * k / n)) for k in range(n)]
    return [CommonCauseCandidate(c, ct) for c in circle for ct in fibonacci_sphere(n)]


def verify_prop1(spec: ScenarioSpec | None = None, n: int = 20, tol: float = TOL) -> dict:
    """Every ``c2 = 0`` candidate is a noncommuting joint common cause localized in O_C."""
    spec = spec or ScenarioSpec()
    worst = 0.0
    min_comm = math.inf
    localized = True
    failures = []
    for cand in prop1_candidates(n):
        rep = joint_cc_check(cand, spec, tol=tol)
        worst = max(worst, rep.criterion.max_residual)
        min_comm = min(min_comm, max(rep.commutator_norms.values()))
        localized &= rep.localized
        if not rep.passed:
            failures.append(cand.to_json())
    in_cpast = common_past().contains(O_C)
    ok = not failures and localized and in_cpast and min_comm > 0.1 and spacelike_separated(O_A, O_B)
    return {"suite": "prop1", "scenario": spec.to_json(), "candidates": n * n, "max_residual": worst,
            "failures": failures[:10], "localized_in_O_C": localized, "O_C_in_common_past": in_cpast,
            "min_max_commutator_norm": min_comm, "tol": tol, "pass": ok}


def verify_prop2(spec: ScenarioSpec | None = None, tol: float = TOL, distant_site: float = 3) -> dict:
    """No commuting partition screens off the correlations."""
    spec = spec or ScenarioSpec()
    rep = commuting_jcc_obstruction(spec, distant_site=distant_site, tol=tol)
    return {"suite": "prop2", "scenario": spec.to_json(), **rep.to_json(), "pass": rep.obstruction_established}


SUITES = {
    "oracle": verify_oracle,
    "dynamics": verify_dynamics,
    "dimensions": verify_dimensions,
    "primitive-causality": verify_primitive_causality,
    "prop1": verify_prop1,
    "prop2": verify_prop2,
}


"""The twelve acceptance criteria at their stated tolerances.

Each criterion prints one ``PASS``/``FAIL`` line. Run directly with
``python tests/test_acceptance.py`` for the summary alone.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from isingcc import verify as suites
from isingcc.common_cause import (
    CommonCauseCandidate,
    cc_criterion,
    residual_closed_form,
    rho_c_closed_form,
    rho_k,
)
from isingcc.dynamics import DynamicsParams
from isingcc.element import AlgebraElement
from isingcc.scenario import (
    ScenarioSpec,
    UnitVector3,
    ch_value,
    chsh_value,
    correlation,
    event_A,
    event_B,
    rho_lambda,
    rho_singlet,
    rho_singlet_expanded,
    rho_special,
)

SQRT2 = math.sqrt(2)


def random_unit(rng: np.random.Generator) -> UnitVector3:
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return UnitVector3(*map(float, v))


def coefficient_gap(x: AlgebraElement, y: AlgebraElement) -> float:
    return (x - y).sup_norm()


def criterion_1():
    rng = np.random.default_rng(1)
    worst = 0.0
    pairs = [(random_unit(rng), random_unit(rng)) for _ in range(100)]
    for lam in (0.0, 0.25, 0.5, 1 / SQRT2, 1.0):
        rho = rho_lambda(lam)
        for a, b in pairs:
            got = correlation(event_A(a), event_B(b), rho)
            worst = max(worst, abs(got + lam / 4 * a.dot(b)))
    return worst < 1e-9, f"max |corr - closed form| = {worst:.2e} (tol 1e-9)"


def criterion_2():
    gaps = [
        (abs(ch_value(ScenarioSpec(lam=1.0)) + (1 + SQRT2) / 2), 1e-12),
        (abs(ch_value(ScenarioSpec(lam=1 / SQRT2)) + 1.0), 1e-9),
        (abs(ch_value(ScenarioSpec(lam=0.5)) + (1 + 0.5 * SQRT2) / 2), 1e-12),
    ]
    ok = all(g < t for g, t in gaps)
    return ok, "gaps " + ", ".join(f"{g:.1e}" for g, _ in gaps)


def criterion_3():
    gaps = [abs(chsh_value(ScenarioSpec(lam=lam)) + 2 * SQRT2 * lam) for lam in (0.0, 0.5, 1.0)]
    mismatches = 0
    for k in range(101):
        spec = ScenarioSpec(lam=k / 100)
        ch, chsh = ch_value(spec), chsh_value(spec)
        mismatches += (ch < -1 or ch > 0) != (abs(chsh) > 2)
    ok = max(gaps) < 1e-12 and mismatches == 0
    return ok, f"max CHSH gap {max(gaps):.1e} (tol 1e-12), violation-flag mismatches {mismatches}/101"


def criterion_4():
    generic = DynamicsParams(0.4, -0.8, -1, 1)
    g1 = max(coefficient_gap(rho_singlet(d), rho_singlet_expanded(d)) for d in (DynamicsParams(), generic))
    g2 = coefficient_gap(rho_singlet(DynamicsParams(1.1, 0.0, -1, 1)), rho_special(1.0))
    ok = g1 < 1e-12 and g2 < 1e-12
    return ok, f"matrix units vs expansion {g1:.1e}, special closed form {g2:.1e} (tol 1e-12)"


def criterion_5():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(100):
        c, ct, lam = random_unit(rng), random_unit(rng), float(rng.uniform())
        cand = CommonCauseCandidate(c, ct)
        rho = rho_lambda(lam)
        worst = max(
            worst,
            coefficient_gap(rho_k(cand.C, rho), rho_c_closed_form(c, ct, lam)),
            coefficient_gap(rho_k(cand.C_perp, rho), rho_c_closed_form(-c, -ct, lam)),
        )
    return worst < 1e-9, f"max coefficient gap {worst:.2e} (tol 1e-9)"


def criterion_6():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(500):
        a, b, c, ct = (random_unit(rng) for _ in range(4))
        lam = float(rng.uniform())
        rep = cc_criterion(CommonCauseCandidate(c, ct).partition(), event_A(a), event_B(b), rho_lambda(lam))
        want = residual_closed_form(a, b, c, ct, lam)
        worst = max(worst, max(abs(want - 4 * e.residual) for e in rep.entries))
    return worst < 1e-9, f"max |formula - 4 x residual| = {worst:.2e} over 500 draws (tol 1e-9)"


def criterion_7():
    rep = suites.verify_prop1(n=20)
    detail = (
        f"{rep['candidates']} candidates, max residual {rep['max_residual']:.1e}, "
        f"localized {rep['localized_in_O_C']}, O_C in cpast {rep['O_C_in_common_past']}, "
        f"min commutator norm {rep['min_max_commutator_norm']:.3f}"
    )
    return rep["pass"], detail


def criterion_8():
    rep = suites.verify_prop2()
    worst = max(abs(r["with_C"] - r["d2_times_corr"]) for r in rep["with_C"])
    detail = f"commutant dim {rep['commutant_dimension']}, max |with C - d^2 corr| {worst:.1e}, criterion fails {not rep['criterion_pass']}"
    return rep["pass"], detail


def criterion_9():
    rep = suites.verify_oracle()
    errs = ", ".join(f"{k} {v:.1e}" for k, v in rep["max_errors"].items())
    return rep["pass"], f"{rep['monomial_mismatches']} monomial mismatches of 1000; element errors {errs}"


def criterion_10():
    rep = suites.verify_dynamics()
    return rep["pass"], (
        f"{len(rep['generators'])} parameter tuples, homomorphism {rep['homomorphism_error']:.1e}, "
        f"trace {rep['trace_error']:.1e}, special closed form {rep['special_closed_form']}"
    )


def criterion_11():
    rep = suites.verify_primitive_causality()
    worst = max(r["report"]["max_residual"] for r in rep["runs"])
    control = min(r["negative_control"]["max_residual"] for r in rep["runs"])
    return rep["pass"], f"max residual {worst:.1e} (tol 1e-9), negative-control residual {control:.2f}"


def criterion_12():
    rep = suites.verify_dimensions()
    bad = sum(r["dimension"] != r["expected"] for r in rep["cones"])
    return rep["pass"], f"{len(rep['cones'])} cone/dynamics cases, {bad} mismatches"


CRITERIA = {
    1: ("correlation closed form", criterion_1),
    2: ("CH value", criterion_2),
    3: ("CHSH value", criterion_3),
    4: ("singlet state consistency", criterion_4),
    5: ("rho_1 expansion", criterion_5),
    6: ("residual formula", criterion_6),
    7: ("noncommuting joint common cause", criterion_7),
    8: ("no commuting joint common cause", criterion_8),
    9: ("oracle equivalence", criterion_9),
    10: ("dynamics", criterion_10),
    11: ("primitive causality", criterion_11),
    12: ("dimension formula", criterion_12),
}


def report_line(k: int) -> tuple[bool, str]:
    name, fn = CRITERIA[k]
    ok, detail = fn()
    return ok, f"criterion {k:2d} [{name}]: {'PASS' if ok else 'FAIL'} | {detail}"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    ok, line = report_line(k)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [report_line(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)

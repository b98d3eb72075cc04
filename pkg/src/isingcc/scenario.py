"""EPR-Bohm events, singlet-type states and Bell functionals."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .dynamics import SPECIAL, DynamicsParams, beta_generator
from .element import ONE, TOL, AlgebraElement, commutator, is_selfadjoint
from .geometry import DoubleCone, MinimalCone, Region, past_region, spacelike_separated

SQRT2 = math.sqrt(2.0)


class StateError(ValueError):
    """The density element does not define a state."""


@dataclass(frozen=True)
class UnitVector3:
    r1: float
    r2: float
    r3: float

    def __post_init__(self):
        n2 = self.r1 ** 2 + self.r2 ** 2 + self.r3 ** 2
        if abs(n2 - 1.0) > 1e-9:
            raise ValueError(f"not a unit vector: ({self.r1}, {self.r2}, {self.r3})")

    @classmethod
    def of(cls, v: Sequence[float] | "UnitVector3") -> "UnitVector3":
        if isinstance(v, UnitVector3):
            return v
        r1, r2, r3 = (float(x) for x in v)
        return cls(r1, r2, r3)

    def dot(self, other: "UnitVector3") -> float:
        return self.r1 * other.r1 + self.r2 * other.r2 + self.r3 * other.r3

    def __neg__(self) -> "UnitVector3":
        return UnitVector3(-self.r1, -self.r2, -self.r3)

    def __iter__(self):
        return iter((self.r1, self.r2, self.r3))

    def to_json(self) -> list[float]:
        return [self.r1, self.r2, self.r3]


DEFAULT_A = (UnitVector3(0.0, 1.0, 0.0), UnitVector3(1.0, 0.0, 0.0))
DEFAULT_B = (UnitVector3(1 / SQRT2, 1 / SQRT2, 0.0), UnitVector3(-1 / SQRT2, 1 / SQRT2, 0.0))


@dataclass(frozen=True)
class ScenarioSpec:
    a: tuple[UnitVector3, UnitVector3] = DEFAULT_A
    b: tuple[UnitVector3, UnitVector3] = DEFAULT_B
    lam: float = 1.0
    dynamics: DynamicsParams = field(default=SPECIAL)

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda={self.lam} outside [0, 1]")
        object.__setattr__(self, "a", tuple(UnitVector3.of(v) for v in self.a))
        object.__setattr__(self, "b", tuple(UnitVector3.of(v) for v in self.b))
        if len(self.a) != 2 or len(self.b) != 2:
            raise ValueError("exactly two directions per side")

    def to_json(self) -> dict:
        return {
            "a": [v.to_json() for v in self.a],
            "b": [v.to_json() for v in self.b],
            "lambda": self.lam,
            "dynamics": self.dynamics.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ScenarioSpec":
        dyn = DynamicsParams.from_json(data["dynamics"]) if "dynamics" in data else SPECIAL
        return cls(
            a=tuple(UnitVector3.of(v) for v in data.get("a", [list(v) for v in DEFAULT_A])),
            b=tuple(UnitVector3.of(v) for v in data.get("b", [list(v) for v in DEFAULT_B])),
            lam=float(data.get("lambda", 1.0)),
            dynamics=dyn,
        )

    @classmethod
    def load(cls, path: str | Path) -> "ScenarioSpec":
        return cls.from_json(json.loads(Path(path).read_text()))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# events


def event_A(a: Sequence[float] | UnitVector3, d: DynamicsParams = SPECIAL) -> AlgebraElement:
    """Spin-type minimal projection of A(O_A) in direction ``a``."""
    a = UnitVector3.of(a)
    U = AlgebraElement.gen
    ba = beta_generator(-0.5, d)
    return 0.5 * (ONE + a.r1 * U(-1) + a.r2 * ba + a.r3 * (1j * U(-1) * ba))


def event_B(b: Sequence[float] | UnitVector3, d: DynamicsParams = SPECIAL) -> AlgebraElement:
    """Minimal projection of A(O_B); note the minus sign on the second component."""
    b = UnitVector3.of(b)
    U = AlgebraElement.gen
    bb = beta_generator(0.5, d)
    return 0.5 * (ONE + b.r1 * U(1) - b.r2 * bb + b.r3 * (1j * bb * U(1)))


def events(spec: ScenarioSpec) -> tuple[list[AlgebraElement], list[AlgebraElement]]:
    return (
        [event_A(a, spec.dynamics) for a in spec.a],
        [event_B(b, spec.dynamics) for b in spec.b],
    )


def contraction(p: AlgebraElement) -> AlgebraElement:
    """``2P - 1``: the self-adjoint unitary attached to a projection."""
    return 2 * p - ONE


# states


def matrix_units(d: DynamicsParams = SPECIAL) -> dict[str, dict[tuple[int, int], AlgebraElement]]:
    """Matrix units of the left (O_A) and right (O_B) copies of M_2."""
    U = AlgebraElement.gen
    out = {}
    for side, half, whole in (("L", -0.5, -1), ("R", 0.5, 1)):
        b = beta_generator(half, d)
        u = U(whole)
        out[side] = {
            (1, 1): 0.5 * (ONE + b),
            (2, 2): 0.5 * (ONE - b),
            (1, 2): 0.5 * (ONE + b) * u,
            (2, 1): 0.5 * (ONE - b) * u,
        }
    return out


def rho_singlet(d: DynamicsParams = SPECIAL) -> AlgebraElement:
    """Singlet density element assembled from matrix units."""
    e = matrix_units(d)
    L, R = e["L"], e["R"]
    return 2 * (
        L[1, 1] * R[1, 1] + L[2, 2] * R[2, 2] - L[1, 2] * R[1, 2] - L[2, 1] * R[2, 1]
    )


def rho_singlet_expanded(d: DynamicsParams = SPECIAL) -> AlgebraElement:
    """The same element written directly in generators."""
    U = AlgebraElement.gen
    bl, br = beta_generator(-0.5, d), beta_generator(0.5, d)
    return ONE + bl * br - U(-1) * U(1) + U(-1) * bl * br * U(1)


def rho_lambda(lam: float, d: DynamicsParams = SPECIAL) -> AlgebraElement:
    """Mixture ``lam * rho_singlet + (1 - lam) * 1``."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda={lam} outside [0, 1]")
    return lam * rho_singlet(d) + (1 - lam) * ONE


def rho_special(lam: float) -> AlgebraElement:
    """Closed form of the state for ``theta2 = 0, eta2 = 1``."""
    M = AlgebraElement.mono
    return ONE + lam * (M(-1, -0.5, 0.5, 1) - M(-1, 1) + M(-0.5, 0.5))


def state_of(spec: ScenarioSpec) -> AlgebraElement:
    return rho_lambda(spec.lam, spec.dynamics)


def check_state(rho: AlgebraElement, tol: float = TOL, spectrum: bool = False) -> None:
    """Raise :class:`StateError` unless ``rho`` is a density element."""
    if abs(rho.trace() - 1) > tol:
        raise StateError(f"trace {rho.trace()} != 1")
    if not is_selfadjoint(rho, tol):
        raise StateError("density element is not self-adjoint")
    if spectrum:
        from .oracle import spectrum_bounds

        lo, _ = spectrum_bounds(rho)
        if lo < -tol:
            raise StateError(f"negative eigenvalue {lo}")


def phi(x: AlgebraElement, rho: AlgebraElement, tol: float = TOL) -> float:
    """Expectation ``Tr(rho x)``; real part for self-adjoint ``x``."""
    check_state(rho, tol)
    return rho.trace_with(x).real


def correlation(A: AlgebraElement, B: AlgebraElement, rho: AlgebraElement) -> float:
    return phi(A * B, rho) - phi(A, rho) * phi(B, rho)


def correlation_product_form(A: AlgebraElement, B: AlgebraElement, rho: AlgebraElement) -> float:
    Ap, Bp = ONE - A, ONE - B
    return phi(A * B, rho) * phi(Ap * Bp, rho) - phi(A * Bp, rho) * phi(Ap * B, rho)


def correlation_closed_form(a: UnitVector3, b: UnitVector3, lam: float) -> float:
    return -lam / 4 * UnitVector3.of(a).dot(UnitVector3.of(b))


def correlation_table(spec: ScenarioSpec) -> list[dict]:
    rho = state_of(spec)
    As, Bs = events(spec)
    rows = []
    for m, (A, a) in enumerate(zip(As, spec.a), start=1):
        for n, (B, b) in enumerate(zip(Bs, spec.b), start=1):
            brute = correlation(A, B, rho)
            closed = correlation_closed_form(a, b, spec.lam)
            rows.append({"m": m, "n": n, "corr": brute, "closed_form": closed, "abs_diff": abs(brute - closed)})
    return rows


def ch_value(spec: ScenarioSpec) -> float:
    rho = state_of(spec)
    (A1, A2), (B1, B2) = events(spec)
    return phi(A1 * B1 + A1 * B2 + A2 * B1 - A2 * B2 - A1 - B1, rho)


def chsh_value(spec: ScenarioSpec) -> float:
    rho = state_of(spec)
    (A1, A2), (B1, B2) = events(spec)
    UA1, UA2, UB1, UB2 = (contraction(x) for x in (A1, A2, B1, B2))
    return phi(UA1 * (UB1 + UB2) + UA2 * (UB1 - UB2), rho)


def ch_closed_form(spec: ScenarioSpec) -> float:
    (a1, a2), (b1, b2) = spec.a, spec.b
    return -0.5 - spec.lam / 4 * (a1.dot(b1) + a1.dot(b2) + a2.dot(b1) - a2.dot(b2))


def chsh_closed_form(spec: ScenarioSpec) -> float:
    (a1, a2), (b1, b2) = spec.a, spec.b
    return -spec.lam * (a1.dot(b1) + a1.dot(b2) + a2.dot(b1) - a2.dot(b2))


def events_commute(spec: ScenarioSpec, tol: float = TOL) -> bool:
    As, Bs = events(spec)
    return all(commutator(A, B).is_zero(tol) for A in As for B in Bs)


# regions of the scenario

O_A = DoubleCone.spanned_by(MinimalCone.at(0, -1), MinimalCone.at(1, -0.5))
O_B = DoubleCone.spanned_by(MinimalCone.at(1, 0.5), MinimalCone.at(0, 1))
O_C = DoubleCone.cauchy(-0.5, 0.5)
O_c = O_A.join(O_B).shifted(dt=-1)


def common_past() -> Region:
    return past_region("common", O_A, O_B)


def supported_in(x: AlgebraElement, region: Region | DoubleCone) -> bool:
    """Whether the Cauchy-surface support of ``x`` lies in ``region``."""
    from .geometry import cauchy_localization

    cone = cauchy_localization(x.support())
    if cone is None:
        return True
    return region.contains(cone)


__all__ = [
    "O_A", "O_B", "O_C", "O_c", "DEFAULT_A", "DEFAULT_B", "ScenarioSpec", "StateError", "UnitVector3",
    "ch_closed_form", "ch_value", "check_state", "chsh_closed_form", "chsh_value", "common_past",
    "contraction", "correlation", "correlation_closed_form", "correlation_product_form",
    "correlation_table", "event_A", "event_B", "events", "events_commute", "matrix_units", "phi",
    "rho_lambda", "rho_singlet", "rho_singlet_expanded", "rho_special", "spacelike_separated",
    "state_of", "supported_in",
]

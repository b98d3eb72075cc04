"""Causal unit time translations of the local quantum Ising model.

The automorphism is fixed by its values on the generators. Half-integer
generators have closed-form images; integer generators are built from the
images of their two half-integer neighbours.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .element import ONE, TOL, AlgebraElement, coefficient_matrix, in_span_residual
from .geometry import DoubleCone
from .monomial import Monomial, SiteLike, doubled, monomials_in, shift


@dataclass(frozen=True)
class DynamicsParams:
    theta1: float = 0.0
    theta2: float = 0.0
    eta1: int = 1
    eta2: int = 1

    def __post_init__(self):
        for name in ("theta1", "theta2"):
            th = getattr(self, name)
            if not (-math.pi / 2 < th <= math.pi / 2):
                raise ValueError(f"{name}={th} outside (-pi/2, pi/2]")
        for name in ("eta1", "eta2"):
            if getattr(self, name) not in (1, -1):
                raise ValueError(f"{name} must be +1 or -1")

    def to_json(self) -> dict:
        return {"theta1": self.theta1, "theta2": self.theta2, "eta1": self.eta1, "eta2": self.eta2}

    @classmethod
    def from_json(cls, data: dict) -> "DynamicsParams":
        return cls(float(data["theta1"]), float(data["theta2"]), int(data["eta1"]), int(data["eta2"]))


SPECIAL = DynamicsParams(0.0, 0.0, 1, 1)


def _sc(theta: float) -> tuple[float, float]:
    # exact zeros at the endpoints keep images free of 1e-17 debris
    if theta == math.pi / 2:
        return 1.0, 0.0
    return math.sin(theta), math.cos(theta)


@lru_cache(maxsize=None)
def _generator_image(d: int, p: DynamicsParams) -> AlgebraElement:
    U = AlgebraElement.gen
    if d % 2:
        x, h = (d - 1) // 2, d / 2
        s, c = _sc(p.theta2)
        return (
            p.eta2 * s * s * U(h)
            + p.eta2 * c * c * (U(x) * U(h) * U(x + 1))
            + 1j * s * c * (U(x) * U(h) - U(h) * U(x + 1))
        )
    x = d // 2
    s, c = _sc(p.theta1)
    left = _generator_image(d - 1, p)
    right = _generator_image(d + 1, p)
    ux = U(x)
    return (
        p.eta1 * s * s * ux
        + p.eta1 * c * c * (left * ux * right)
        + 1j * s * c * (left * ux - ux * right)
    )


def beta_generator(site: SiteLike, p: DynamicsParams = SPECIAL) -> AlgebraElement:
    """Image of ``U_site`` under one time step."""
    return _generator_image(doubled(site), p)


@lru_cache(maxsize=65536)
def _monomial_image(mono: Monomial, p: DynamicsParams) -> AlgebraElement:
    out = ONE
    for s in mono:
        out = out * _generator_image(s, p)
    return out


def beta(x: AlgebraElement, p: DynamicsParams = SPECIAL) -> AlgebraElement:
    out: dict = {}
    for m, c in x.terms.items():
        for m2, c2 in _monomial_image(m, p).terms.items():
            out[m2] = out.get(m2, 0j) + c * c2
    return AlgebraElement(out)


def beta_power(x: AlgebraElement, p: DynamicsParams = SPECIAL, t: int = 1) -> AlgebraElement:
    if t < 0:
        raise ValueError("only forward time steps are supported")
    for _ in range(t):
        x = beta(x, p)
    return x


def alpha(x: AlgebraElement, steps: int = 1) -> AlgebraElement:
    """Space translation by whole lattice units."""
    return AlgebraElement({shift(m, steps): c for m, c in x.terms.items()})


def clear_cache() -> None:
    _generator_image.cache_clear()
    _monomial_image.cache_clear()


# local algebras of double cones


def cone_generators(cone: DoubleCone, p: DynamicsParams = SPECIAL) -> list[AlgebraElement]:
    """``beta^t(U_i)`` for every minimal cone ``(t, i)`` of ``cone``.

    The cone is first translated forward in time so that no minimal cone
    sits before ``t = 0``; this changes the algebra only by an automorphism.
    """
    cones = cone.minimal_cones()
    dt = max(0, -min(c.t for c in cones))
    gens = []
    for c in cones:
        gens.append(beta_power(AlgebraElement({(c.doubled_site,): 1.0}), p, c.t + dt))
    return gens


def generated_algebra_basis(gens: list[AlgebraElement], max_dim: int = 1 << 12) -> list[AlgebraElement]:
    """Linear basis of the unital algebra generated by ``gens``.

    Words are grown one generator at a time until the span stops growing;
    independence is decided by Gram-Schmidt over monomial coefficients.
    """
    import numpy as np

    index: dict[Monomial, int] = {}
    q = np.zeros((0, 0), dtype=complex)  # orthonormal rows
    basis: list[AlgebraElement] = []

    def add(x: AlgebraElement) -> bool:
        nonlocal q
        for m in x.terms:
            if m not in index:
                index[m] = len(index)
        if len(index) > q.shape[1]:
            q = np.pad(q, ((0, 0), (0, 2 * len(index) - q.shape[1])))
        v = np.zeros(q.shape[1], dtype=complex)
        for m, c in x.terms.items():
            v[index[m]] = c
        n0 = np.linalg.norm(v)
        if n0 == 0:
            return False
        for _ in range(2):
            v -= q.T @ (q.conj() @ v)
        n = np.linalg.norm(v)
        if n <= 1e-8 * n0:
            return False
        q = np.vstack([q, v / n])
        basis.append(x)
        if len(basis) > max_dim:
            raise ValueError("generated algebra exceeds max_dim")
        return True

    add(ONE)
    frontier = [ONE]
    while frontier:
        new_frontier = []
        for w in frontier:
            for g in gens:
                cand = w * g
                if add(cand):
                    new_frontier.append(cand)
        frontier = new_frontier
    return basis


def local_algebra_dimension(cone: DoubleCone, p: DynamicsParams = SPECIAL) -> int:
    """Linear dimension of the algebra generated inside ``cone``."""
    return len(generated_algebra_basis(cone_generators(cone, p)))


def expected_dimension(cone: DoubleCone) -> int:
    return 2 ** cone.n


def matrix_type(cone: DoubleCone) -> str:
    """Isomorphism type: ``M_k`` for even ``n``, ``M_k + M_k`` for odd ``n``."""
    n = cone.n
    if n % 2 == 0:
        return f"M_{2 ** (n // 2)}"
    k = 2 ** ((n - 1) // 2)
    return f"M_{k} + M_{k}"


# primitive causality


def event_algebra_bases(p: DynamicsParams = SPECIAL) -> tuple[list[AlgebraElement], list[AlgebraElement]]:
    """Self-adjoint unitary bases of the two event algebras A(O_A) and A(O_B)."""
    U = AlgebraElement.gen
    ba, bb = beta_generator(-0.5, p), beta_generator(0.5, p)
    left = [ONE, U(-1), ba, 1j * U(-1) * ba]
    right = [ONE, U(1), bb, 1j * bb * U(1)]
    return left, right


def joint_event_basis(p: DynamicsParams = SPECIAL) -> list[AlgebraElement]:
    """The 16 products spanning A(O_A) v A(O_B)."""
    left, right = event_algebra_bases(p)
    return [a * b for a in left for b in right]


@dataclass
class PrimitiveCausalityReport:
    cauchy: tuple[float, float]
    t: int
    residuals: list[float]
    cone_generator_residuals: list[float]
    tol: float
    max_residual: float = field(init=False)
    passed: bool = field(init=False)

    def __post_init__(self):
        self.max_residual = max(self.residuals + self.cone_generator_residuals, default=0.0)
        self.passed = self.max_residual < self.tol

    def to_json(self) -> dict:
        return {
            "cauchy_sites": list(self.cauchy),
            "t": self.t,
            "residuals": self.residuals,
            "cone_generator_residuals": self.cone_generator_residuals,
            "max_residual": self.max_residual,
            "tol": self.tol,
            "pass": self.passed,
        }


def primitive_causality_check(
    p: DynamicsParams = SPECIAL,
    cauchy: tuple[SiteLike, SiteLike] = (-1, 1),
    t: int = 1,
    tol: float = TOL,
) -> PrimitiveCausalityReport:
    """Check that A(O_A) v A(O_B) sits in ``beta^t(A(O_c))``.

    ``O_c`` is the double cone over the Cauchy sites ``cauchy`` placed ``t``
    steps in the past, so ``beta^t(A(O_c))`` is the span of the monomials on
    those sites at time 0. Every minimal-cone generator ``beta^s(U_i)`` of
    the causal shadow with ``0 <= s <= t`` is checked as well.
    """
    lo, hi = cauchy
    span = [AlgebraElement({m: 1.0}) for m in monomials_in(lo, hi)]
    residuals = [in_span_residual(x, span) for x in joint_event_basis(p)]
    shadow = DoubleCone.cauchy(lo, hi)
    gen_res = []
    for c in shadow.minimal_cones():
        if 0 <= c.t <= t:
            g = beta_power(AlgebraElement({(c.doubled_site,): 1.0}), p, c.t)
            gen_res.append(in_span_residual(g, span))
    return PrimitiveCausalityReport((float(lo), float(hi)), t, residuals, gen_res, tol)

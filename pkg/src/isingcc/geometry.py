"""Double cones of the integer-time lattice in 1+1 Minkowski space.

Minimal double cones have unit diameter. The cone labelled ``(t, i)`` is
the time-``t`` translate of the Cauchy-surface cone of site ``i``; its
center sits at time ``t`` for integer ``i`` and ``t - 1/2`` otherwise. In
light-cone coordinates ``u = time + x``, ``v = time - x`` the centers form
the integer lattice, and a double cone spanned by minimal cones is a
rectangle ``[u_lo, u_hi] x [v_lo, v_hi]`` of lattice points. Regions are
open sets; adjacent minimal cones (sites 1/2 apart) share a boundary
segment and are therefore not spacelike separated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .monomial import SiteLike, doubled


@dataclass(frozen=True)
class MinimalCone:
    t: int
    doubled_site: int

    @classmethod
    def at(cls, t: int, site: SiteLike) -> "MinimalCone":
        return cls(t, doubled(site))

    @classmethod
    def from_uv(cls, u: int, v: int) -> "MinimalCone":
        return cls(-((-(u + v)) // 2), u - v)

    @property
    def site(self) -> Fraction:
        return Fraction(self.doubled_site, 2)

    @property
    def center_time(self) -> Fraction:
        return self.t - Fraction(self.doubled_site % 2, 2)

    @property
    def uv(self) -> tuple[int, int]:
        tau2 = 2 * self.t - self.doubled_site % 2
        return (tau2 + self.doubled_site) // 2, (tau2 - self.doubled_site) // 2


@dataclass(frozen=True)
class DoubleCone:
    """Lattice rectangle of minimal-cone centers in light-cone coordinates."""

    u_lo: int
    u_hi: int
    v_lo: int
    v_hi: int

    def __post_init__(self):
        if self.u_hi < self.u_lo or self.v_hi < self.v_lo:
            raise ValueError(f"malformed double cone {self!r}")

    @classmethod
    def spanned_by(cls, *cones: MinimalCone) -> "DoubleCone":
        if not cones:
            raise ValueError("need at least one minimal cone")
        us, vs = zip(*(c.uv for c in cones))
        return cls(min(us), max(us), min(vs), max(vs))

    @classmethod
    def cauchy(cls, lo: SiteLike, hi: SiteLike, t: int = 0) -> "DoubleCone":
        """Smallest double cone containing the time-``t`` Cauchy cones of sites lo..hi."""
        return cls.spanned_by(MinimalCone.at(t, lo), MinimalCone.at(t, hi))

    @property
    def n_plus(self) -> int:
        return self.u_hi - self.u_lo + 1

    @property
    def n_minus(self) -> int:
        return self.v_hi - self.v_lo + 1

    @property
    def n(self) -> int:
        return self.n_plus + self.n_minus - 1

    def minimal_cones(self) -> list[MinimalCone]:
        return [
            MinimalCone.from_uv(u, v)
            for u in range(self.u_lo, self.u_hi + 1)
            for v in range(self.v_lo, self.v_hi + 1)
        ]

    def shifted(self, dt: int = 0, dx: int = 0) -> "DoubleCone":
        """Translate by ``dt`` time units and ``dx`` lattice units."""
        return DoubleCone(self.u_lo + dt + dx, self.u_hi + dt + dx, self.v_lo + dt - dx, self.v_hi + dt - dx)

    def join(self, other: "DoubleCone") -> "DoubleCone":
        return DoubleCone(
            min(self.u_lo, other.u_lo), max(self.u_hi, other.u_hi),
            min(self.v_lo, other.v_lo), max(self.v_hi, other.v_hi),
        )

    def contains(self, other: "DoubleCone") -> bool:
        return (
            self.u_lo <= other.u_lo and other.u_hi <= self.u_hi
            and self.v_lo <= other.v_lo and other.v_hi <= self.v_hi
        )

    # open point set (u, v) in (u_lo - 1/2, u_hi + 1/2) x (v_lo - 1/2, v_hi + 1/2)
    @property
    def bounds(self) -> tuple[float, float, float, float]:
        return self.u_lo - 0.5, self.u_hi + 0.5, self.v_lo - 0.5, self.v_hi + 0.5


def spacelike_separated(a: DoubleCone, b: DoubleCone) -> bool:
    """Every point of ``a`` is spacelike to every point of ``b``."""
    au0, au1, av0, av1 = a.bounds
    bu0, bu1, bv0, bv1 = b.bounds
    right = bu0 >= au1 and bv1 <= av0
    left = au0 >= bu1 and av1 <= bv0
    return right or left


@dataclass(frozen=True)
class Region:
    """Finite union of past quadrants ``{u < U, v < V}``."""

    quadrants: tuple[tuple[float, float], ...]

    def contains(self, cone: DoubleCone) -> bool:
        # a box lies in a union of down-sets iff its top corner lies in one of them
        _, uh, _, vh = cone.bounds
        return any(uh <= U and vh <= V for U, V in self.quadrants)

    def includes(self, other: "Region") -> bool:
        return all(any(u <= U and v <= V for U, V in self.quadrants) for u, v in other.quadrants)


def past(cone: DoubleCone) -> Region:
    """Backward light cone ``I_-`` of an open double cone."""
    _, uh, _, vh = cone.bounds
    return Region(((uh, vh),))


def past_region(kind: str, a: DoubleCone, b: DoubleCone) -> Region:
    """Weak (union), common (intersection) or strong (pointwise) past of two cones."""
    if kind == "weak":
        return Region(past(a).quadrants + past(b).quadrants)
    if kind == "common":
        (ua, va), = past(a).quadrants
        (ub, vb), = past(b).quadrants
        return Region(((min(ua, ub), min(va, vb)),))
    if kind == "strong":
        au0, _, av0, _ = a.bounds
        bu0, _, bv0, _ = b.bounds
        return Region(((min(au0, bu0), min(av0, bv0)),))
    raise ValueError(f"unknown past kind {kind!r}")


def cauchy_localization(sup: tuple[int, int] | None) -> DoubleCone | None:
    """Double cone of a doubled Cauchy-surface support interval."""
    if sup is None:
        return None
    return DoubleCone.cauchy(Fraction(sup[0], 2), Fraction(sup[1], 2))


def enumerate_cones(max_n: int) -> Iterable[DoubleCone]:
    """Every double cone with ``n <= max_n`` up to lattice translation."""
    for a in range(1, max_n + 1):
        for b in range(1, max_n + 2 - a):
            for parity in (0, 1):
                yield DoubleCone(parity, parity + a - 1, 0, b - 1)



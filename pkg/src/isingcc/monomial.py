"""Generator monomials of the local quantum Ising algebra.

The algebra is generated by self-adjoint unitaries ``U_i`` indexed by the
half-integers. Generators at distance 1/2 anticommute, all others commute.
A monomial is the product of distinct generators in ascending site order;
it is stored as a tuple of *doubled* site indices, so ``U_{-1/2} U_0`` is
``(-1, 0)`` and the identity is ``()``.

The multiplication kernel is compiled when available. Setting the
environment variable ``ISINGCC_BACKEND=python`` forces the pure-Python
fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import _kernels_py

Monomial = tuple  # tuple[int, ...] of doubled sites, strictly ascending
IDENTITY: Monomial = ()

_kernel = _kernels_py
BACKEND = "python"
if os.environ.get("ISINGCC_BACKEND", "").lower() != "python":
    try:
        from . import _kernels as _kernel  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

mul_monomials = _kernel.mul_monomials
multiply_terms = _kernel.multiply_terms
trace_pairing = _kernel.trace_pairing

SiteLike = Union[int, float, Fraction, "SiteIndex"]


@dataclass(frozen=True, order=True)
class SiteIndex:
    """A lattice site ``i`` in (1/2)Z, stored exactly as ``2*i``."""

    doubled: int

    @classmethod
    def of(cls, value: SiteLike) -> "SiteIndex":
        if isinstance(value, SiteIndex):
            return value
        twice = Fraction(value) * 2
        if twice.denominator != 1:
            raise ValueError(f"site {value!r} is not a half-integer")
        return cls(int(twice))

    @property
    def value(self) -> Fraction:
        return Fraction(self.doubled, 2)

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def adjacent(self, other: "SiteIndex") -> bool:
        return abs(self.doubled - other.doubled) == 1

    def __str__(self) -> str:
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/2"


def doubled(site: SiteLike) -> int:
    return SiteIndex.of(site).doubled


def monomial(*sites: SiteLike) -> Monomial:
    """Canonical monomial ``U_{s1} U_{s2} ...`` from strictly ascending sites.

    >>> monomial(-0.5, 0)
    (-1, 0)
    """
    dbl = tuple(doubled(s) for s in sites)
    if any(b <= a for a, b in zip(dbl, dbl[1:])):
        raise ValueError(f"sites must be strictly ascending, got {sites!r}")
    return dbl


def product(*sites: SiteLike) -> tuple[int, Monomial]:
    """Sign and canonical form of ``U_{s1} U_{s2} ...`` in any order."""
    sign, acc = 1, IDENTITY
    for s in sites:
        t, acc = mul_monomials(acc, (doubled(s),))
        sign *= t
    return sign, acc


def is_canonical(mono: Monomial) -> bool:
    return all(b > a for a, b in zip(mono, mono[1:]))


def monomial_trace(mono: Monomial) -> float:
    """Normalized trace: 1 on the identity, 0 on every other monomial."""
    return 1.0 if not mono else 0.0


def adjoint_monomial(mono: Monomial) -> tuple[int, Monomial]:
    """``M*`` is the reversed product, i.e. ``(-1)**(#adjacent pairs) * M``."""
    return (-1 if _kernel.adjacent_pairs(mono) % 2 else 1), mono


def support(mono: Monomial) -> tuple[int, int] | None:
    """Doubled ``(min, max)`` site of the monomial; ``None`` for the identity."""
    if not mono:
        return None
    return mono[0], mono[-1]


def shift(mono: Monomial, steps: int) -> Monomial:
    """Space translation by ``steps`` whole lattice units."""
    return tuple(s + 2 * steps for s in mono)


def monomials_in(lo: SiteLike, hi: SiteLike) -> list[Monomial]:
    """Every monomial supported in the interval of sites ``[lo, hi]``.

    Ordered by the binary counter over ascending sites, identity first.
    """
    a, b = doubled(lo), doubled(hi)
    if b < a:
        return []
    sites = list(range(a, b + 1))
    out = []
    for mask in range(1 << len(sites)):
        out.append(tuple(s for k, s in enumerate(sites) if mask >> k & 1))
    return out


def format_monomial(mono: Monomial) -> str:
    if not mono:
        return "1"
    return " ".join(f"U[{SiteIndex(s)}]" for s in mono)


def parse_monomial(text: str) -> Monomial:
    """Inverse of :func:`format_monomial`."""
    text = text.strip()
    if text == "1":
        return IDENTITY
    sites = []
    for tok in text.split():
        if not (tok.startswith("U[") and tok.endswith("]")):
            raise ValueError(f"bad monomial token {tok!r}")
        sites.append(Fraction(tok[2:-1]))
    return monomial(*sites)

"""Finite linear combinations of generator monomials."""

from __future__ import annotations

import numbers
from typing import Iterable, Mapping, Sequence

import numpy as np

from .monomial import (
    IDENTITY,
    Monomial,
    SiteLike,
    adjoint_monomial,
    doubled,
    format_monomial,
    monomial,
    monomials_in,
    multiply_terms,
    parse_monomial,
    trace_pairing,
)

PRUNE = 1e-12
TOL = 1e-9
RANK_RTOL = 1e-8


class AlgebraElement:
    """An element ``sum_M c_M M`` of the quasilocal algebra.

    Instances are treated as immutable values. Coefficients with modulus
    below ``prune`` are dropped on construction.
    """

    __slots__ = ("terms", "prune")

    def __init__(self, terms: Mapping[Monomial, complex] | None = None, prune: float = PRUNE):
        self.prune = prune
        self.terms: dict[Monomial, complex] = {
            m: complex(c) for m, c in (terms or {}).items() if abs(c) >= prune
        }

    @classmethod
    def _raw(cls, terms: dict, prune: float = PRUNE) -> "AlgebraElement":
        # terms are already pruned and complex
        obj = cls.__new__(cls)
        obj.prune = prune
        obj.terms = terms
        return obj

    @classmethod
    def identity(cls) -> "AlgebraElement":
        return cls({IDENTITY: 1.0})

    @classmethod
    def scalar(cls, value: complex) -> "AlgebraElement":
        return cls({IDENTITY: value})

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls()

    @classmethod
    def gen(cls, site: SiteLike) -> "AlgebraElement":
        """The generator ``U_site``."""
        return cls({(doubled(site),): 1.0})

    @classmethod
    def mono(cls, *sites: SiteLike, coeff: complex = 1.0) -> "AlgebraElement":
        """``coeff * U_{s1} U_{s2} ...`` for strictly ascending sites."""
        return cls({monomial(*sites): coeff})

    # ring structure

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0j) + c
        return AlgebraElement(out, self.prune)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement._raw({m: -c for m, c in self.terms.items()}, self.prune)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return AlgebraElement({m: c * other for m, c in self.terms.items()}, self.prune)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return AlgebraElement._raw(multiply_terms(self.terms, other.terms, self.prune), self.prune)

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Number):
            return self * (1.0 / other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = AlgebraElement.identity()
        for _ in range(n):
            out = out * self
        return out

    def adjoint(self) -> "AlgebraElement":
        out = {}
        for m, c in self.terms.items():
            s, _ = adjoint_monomial(m)
            out[m] = s * c.conjugate()
        return AlgebraElement._raw(out, self.prune)

    @property
    def dag(self) -> "AlgebraElement":
        return self.adjoint()

    # functionals and inspection

    def trace(self) -> complex:
        """Normalized trace: the coefficient of the identity."""
        return self.terms.get(IDENTITY, 0j)

    def trace_with(self, other: "AlgebraElement") -> complex:
        """``trace(self * other)`` without expanding the product."""
        return complex(trace_pairing(self.terms, other.terms))

    def coeff(self, mono: Monomial) -> complex:
        return self.terms.get(mono, 0j)

    def support(self) -> tuple[int, int] | None:
        """Doubled ``(min, max)`` site over all non-identity monomials."""
        sites = [s for m in self.terms for s in m]
        if not sites:
            return None
        return min(sites), max(sites)

    def sup_norm(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def isclose(self, other, tol: float = TOL) -> bool:
        return (self - _coerce(other)).sup_norm() <= tol

    def is_zero(self, tol: float = TOL) -> bool:
        return self.sup_norm() <= tol

    def is_scalar(self, tol: float = TOL) -> bool:
        return all(abs(c) <= tol for m, c in self.terms.items() if m)

    def real_if_close(self, tol: float = TOL) -> "AlgebraElement":
        return AlgebraElement(
            {m: (c.real if abs(c.imag) < tol else c) for m, c in self.terms.items()}, self.prune
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def __repr__(self) -> str:
        if not self.terms:
            return "AlgebraElement(0)"
        parts = [f"({_fmt_complex(c)}) {format_monomial(m)}" for m, c in self]
        return "AlgebraElement(" + " + ".join(parts) + ")"

    def to_json(self) -> dict[str, list[float]]:
        return {format_monomial(m): [c.real, c.imag] for m, c in self}

    @classmethod
    def from_json(cls, data: Mapping[str, Sequence[float]]) -> "AlgebraElement":
        return cls({parse_monomial(k): complex(v[0], v[1]) for k, v in data.items()})


def _fmt_complex(c: complex) -> str:
    if abs(c.imag) < PRUNE:
        return f"{c.real:.6g}"
    if abs(c.real) < PRUNE:
        return f"{c.imag:.6g}j"
    return f"{c.real:.6g}{c.imag:+.6g}j"


def _coerce(x):
    if isinstance(x, AlgebraElement):
        return x
    if isinstance(x, numbers.Number):
        return AlgebraElement.scalar(x)
    return NotImplemented


ONE = AlgebraElement.identity()


def commutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y - y * x


def anticommutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y + y * x


def is_selfadjoint(x: AlgebraElement, tol: float = TOL) -> bool:
    return (x.adjoint() - x).sup_norm() < tol


def is_projection(x: AlgebraElement, tol: float = TOL) -> bool:
    return is_selfadjoint(x, tol) and (x * x - x).sup_norm() < tol


def is_selfadjoint_contraction(x: AlgebraElement, window=None, tol: float = TOL) -> bool:
    """Check ``-1 <= x <= 1`` through the matrix representation."""
    from .oracle import covering_window, spectrum_bounds

    if not is_selfadjoint(x, tol):
        return False
    w = window if window is not None else covering_window(x)
    lo, hi = spectrum_bounds(x, w, tol)
    return lo >= -1 - tol and hi <= 1 + tol


def coefficient_matrix(
    xs: Sequence[AlgebraElement], basis: Sequence[Monomial] | None = None
) -> tuple[list[Monomial], np.ndarray]:
    """Rows are elements, columns are monomials (sorted unless ``basis`` given)."""
    if basis is None:
        seen = set()
        for x in xs:
            seen.update(x.terms)
        basis = sorted(seen, key=lambda m: (len(m), m))
    col = {m: j for j, m in enumerate(basis)}
    mat = np.zeros((len(xs), len(basis)), dtype=complex)
    for i, x in enumerate(xs):
        for m, c in x.terms.items():
            mat[i, col[m]] = c
    return list(basis), mat


def _rank(mat: np.ndarray, rtol: float = RANK_RTOL) -> int:
    if mat.size == 0:
        return 0
    s = np.linalg.svd(mat, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def span_dimension(xs: Sequence[AlgebraElement], rtol: float = RANK_RTOL) -> int:
    """Linear dimension of the span of ``xs``."""
    _, mat = coefficient_matrix(list(xs))
    return _rank(mat, rtol)


def in_span_residual(x: AlgebraElement, basis: Sequence[AlgebraElement]) -> float:
    """Least-squares distance (coefficient 2-norm) from ``x`` to span(basis)."""
    monos, mat = coefficient_matrix(list(basis) + [x])
    a, b = mat[:-1].T, mat[-1]
    if a.shape[1] == 0:
        return float(np.linalg.norm(b))
    coef, *_ = np.linalg.lstsq(a, b, rcond=None)
    return float(np.linalg.norm(a @ coef - b))


def _rref_rows(mat: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Reduced row echelon form of a full-row-rank matrix."""
    m = mat.astype(complex).copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = r + int(np.argmax(np.abs(m[r:, c])))
        if abs(m[piv, c]) < tol:
            continue
        m[[r, piv]] = m[[piv, r]]
        m[r] /= m[r, c]
        for i in range(rows):
            if i != r:
                m[i] -= m[i, c] * m[r]
        r += 1
    m[np.abs(m) < tol] = 0
    return m[:r]


def relative_commutant_basis(
    generators: Iterable[AlgebraElement],
    window: tuple[SiteLike, SiteLike],
    margin: int = 0,
    within: Sequence[AlgebraElement] | None = None,
    tol: float = TOL,
) -> list[AlgebraElement]:
    """Basis of the elements commuting with every generator.

    The search space is spanned by ``within`` if given, otherwise by all
    monomials supported in ``window`` shrunk by ``margin`` lattice units on
    each side. Generators must be supported in ``window``.
    """
    gens = list(generators)
    lo, hi = doubled(window[0]), doubled(window[1])
    lo_in, hi_in = lo + 2 * margin, hi - 2 * margin
    if hi_in < lo_in:
        raise ValueError(f"window {window!r} is empty after a margin of {margin}")
    for g in gens:
        sup = g.support()
        if sup is not None and (sup[0] < lo or sup[1] > hi):
            raise ValueError("generator not supported in the window")

    if within is None:
        candidates = [AlgebraElement._raw({m: 1 + 0j}) for m in monomials_in(lo_in / 2, hi_in / 2)]
        monomial_search = True
    else:
        candidates = list(within)
        monomial_search = False

    if monomial_search and all(len(g.terms) == 1 for g in gens):
        # monomials either commute or anticommute: keep the commuting ones
        return [x for x in candidates if all(commutator(g, x).is_zero(tol) for g in gens)]

    blocks = []
    for g in gens:
        comms = [commutator(g, x) for x in candidates]
        _, mat = coefficient_matrix(comms)
        if mat.shape[1]:
            blocks.append(mat.T)
    if not blocks:
        constraint = np.zeros((0, len(candidates)), dtype=complex)
    else:
        constraint = np.vstack(blocks)
    if constraint.shape[0] == 0:
        null = np.eye(len(candidates), dtype=complex)
    else:
        _, s, vh = np.linalg.svd(constraint)
        scale = s[0] if s.size and s[0] > 0 else 1.0
        rank = int(np.sum(s > RANK_RTOL * scale))
        null = vh[rank:].conj()
    if null.shape[0] == 0:
        return []
    # express the null space in the candidate span, then tidy the basis
    _, cand_mat = coefficient_matrix(candidates)
    elems = null @ cand_mat
    basis_monos, _ = coefficient_matrix(candidates)
    tidy = _rref_rows(elems)
    return [
        AlgebraElement({m: row[j] for j, m in enumerate(basis_monos)}).real_if_close()
        for row in tidy
    ]

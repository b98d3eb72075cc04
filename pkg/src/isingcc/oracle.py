"""Dense matrix representation of the algebra on a finite qubit window.

Integer sites ``x`` carry one qubit each. ``U_x`` acts as Pauli Z on qubit
``x`` and ``U_{x+1/2}`` as X on qubits ``x`` and ``x+1``. Kronecker factors
run over ascending qubits, most significant first. These images satisfy
the generator relations and separate monomials, so the representation is
faithful on the window.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .element import TOL, AlgebraElement
from .monomial import Monomial

DEFAULT_CAP = 13

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class WindowError(ValueError):
    """Raised when a support does not fit the qubit window."""


@dataclass(frozen=True)
class QubitWindow:
    lo: int
    hi: int
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.hi < self.lo:
            raise WindowError(f"empty window [{self.lo}, {self.hi}]")
        if self.qubits > self.cap:
            raise WindowError(f"window of {self.qubits} qubits exceeds the cap of {self.cap}")

    @property
    def qubits(self) -> int:
        return self.hi - self.lo + 1

    @property
    def dim(self) -> int:
        return 1 << self.qubits

    def represents(self, mono: Monomial) -> bool:
        """Integer sites in [lo, hi], half-integer sites in [lo+1/2, hi-1/2]."""
        return not mono or (mono[0] >= 2 * self.lo and mono[-1] <= 2 * self.hi)


def covering_window(*xs: AlgebraElement, cap: int = DEFAULT_CAP) -> QubitWindow:
    """Smallest window representing every monomial of ``xs``."""
    lo, hi = None, None
    for x in xs:
        sup = x.support()
        if sup is None:
            continue
        a, b = sup[0] // 2, -(-sup[1] // 2)
        lo = a if lo is None else min(lo, a)
        hi = b if hi is None else max(hi, b)
    if lo is None:
        lo = hi = 0
    return QubitWindow(lo, hi, cap)


def rep_monomial(mono: Monomial, window: QubitWindow) -> np.ndarray:
    if not window.represents(mono):
        raise WindowError(f"monomial {mono!r} not representable on {window}")
    local = [_I] * window.qubits
    for s in mono:
        if s % 2 == 0:
            q = s // 2 - window.lo
            local[q] = local[q] @ _Z
        else:
            q = (s - 1) // 2 - window.lo
            local[q] = local[q] @ _X
            local[q + 1] = local[q + 1] @ _X
    return reduce(np.kron, local)


def rep_element(x: AlgebraElement, window: QubitWindow | None = None) -> np.ndarray:
    w = window if window is not None else covering_window(x)
    out = np.zeros((w.dim, w.dim), dtype=complex)
    for m, c in x.terms.items():
        out += c * rep_monomial(m, w)
    return out


def normalized_trace(mat: np.ndarray) -> complex:
    return complex(np.trace(mat)) / mat.shape[0]


def spectrum_bounds(
    x: AlgebraElement, window: QubitWindow | None = None, tol: float = TOL
) -> tuple[float, float]:
    """Smallest and largest eigenvalue of a self-adjoint element."""
    if (x.adjoint() - x).sup_norm() >= tol:
        raise ValueError("spectrum_bounds needs a self-adjoint element")
    ev = np.linalg.eigvalsh(rep_element(x, window))
    return float(ev[0]), float(ev[-1])


def operator_norm(x: AlgebraElement, window: QubitWindow | None = None) -> float:
    """C*-norm of ``x``; window-independent once the window covers ``x``."""
    return float(np.linalg.norm(rep_element(x, window), 2))

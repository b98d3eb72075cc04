"""Pure-Python monomial kernels.

Monomials are tuples of doubled site indices in strictly ascending order
(site ``i`` is stored as ``2*i``). The compiled module ``_kernels`` exposes
the same three functions with identical results.
"""

from __future__ import annotations


def mul_monomials(left: tuple, right: tuple) -> tuple[int, tuple]:
    """Multiply two canonical monomials.

    Each factor of ``right`` is moved leftwards into the running product.
    Passing a factor whose doubled index differs by exactly one flips the
    sign; meeting an equal factor cancels both (``U**2 == 1``).
    """
    if not right:
        return 1, left
    if not left:
        return 1, right
    acc = list(left)
    sign = 1
    for r in right:
        k = len(acc)
        while k > 0 and acc[k - 1] > r:
            if acc[k - 1] == r + 1:
                sign = -sign
            k -= 1
        if k > 0 and acc[k - 1] == r:
            del acc[k - 1]
        else:
            acc.insert(k, r)
    return sign, tuple(acc)


def adjacent_pairs(mono: tuple) -> int:
    """Number of factor pairs at doubled distance one."""
    n = 0
    for a, b in zip(mono, mono[1:]):
        if b - a == 1:
            n += 1
    return n


def multiply_terms(left: dict, right: dict, prune: float) -> dict:
    out: dict = {}
    get = out.get
    for m1, c1 in left.items():
        for m2, c2 in right.items():
            s, m = mul_monomials(m1, m2)
            out[m] = get(m, 0j) + (c1 * c2 if s > 0 else -(c1 * c2))
    return {m: c for m, c in out.items() if abs(c) >= prune}


def trace_pairing(left: dict, right: dict) -> complex:
    """Normalized trace of ``left * right`` without forming the product."""
    if len(right) < len(left):
        small, big = right, left
    else:
        small, big = left, right
    total = 0j
    for m, c in small.items():
        d = big.get(m)
        if d is None:
            continue
        # M*M = (-1)**adjacent_pairs(M)
        total += c * d if adjacent_pairs(m) % 2 == 0 else -(c * d)
    return total

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled monomial kernels; must agree exactly with ``_kernels_py``."""

cdef enum:
    MAXLEN = 512


cdef inline tuple _mul(tuple left, tuple right, int* sign_out):
    cdef int acc[MAXLEN]
    cdef Py_ssize_t n = len(left), q = len(right), i, k, j
    cdef int r, sign = 1
    if n + q > MAXLEN:
        raise ValueError("monomial too long for compiled kernel")
    for i in range(n):
        acc[i] = left[i]
    for j in range(q):
        r = right[j]
        k = n
        while k > 0 and acc[k - 1] > r:
            if acc[k - 1] == r + 1:
                sign = -sign
            k -= 1
        if k > 0 and acc[k - 1] == r:
            for i in range(k - 1, n - 1):
                acc[i] = acc[i + 1]
            n -= 1
        else:
            for i in range(n, k, -1):
                acc[i] = acc[i - 1]
            acc[k] = r
            n += 1
    sign_out[0] = sign
    return tuple([acc[i] for i in range(n)])


def mul_monomials(tuple left, tuple right):
    cdef int sign = 1
    if not right:
        return 1, left
    if not left:
        return 1, right
    prod = _mul(left, right, &sign)
    return sign, prod


cpdef int adjacent_pairs(tuple mono):
    cdef Py_ssize_t i, n = len(mono)
    cdef int count = 0
    cdef long a, b
    for i in range(n - 1):
        a = mono[i]
        b = mono[i + 1]
        if b - a == 1:
            count += 1
    return count


def multiply_terms(dict left, dict right, double prune):
    cdef dict out = {}
    cdef int sign = 1
    cdef tuple m1, m2, m
    cdef double complex c1, c2, v
    for m1, c1 in left.items():
        for m2, c2 in right.items():
            if not m2:
                m = m1
                sign = 1
            elif not m1:
                m = m2
                sign = 1
            else:
                m = _mul(m1, m2, &sign)
            v = c1 * c2
            if sign < 0:
                v = -v
            if m in out:
                out[m] = <double complex>out[m] + v
            else:
                out[m] = v
    return {m: c for m, c in out.items() if abs(c) >= prune}


def trace_pairing(dict left, dict right):
    cdef dict small, big
    cdef double complex total = 0, c, d
    if len(right) < len(left):
        small, big = right, left
    else:
        small, big = left, right
    for m, c in small.items():
        dv = big.get(m)
        if dv is None:
            continue
        d = dv
        if adjacent_pairs(m) % 2 == 0:
            total += c * d
        else:
            total -= c * d
    return total

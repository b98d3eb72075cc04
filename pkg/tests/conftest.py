from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from isingcc.element import AlgebraElement

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def monomials(lo: int = -6, hi: int = 6):
    """Canonical monomials over doubled sites ``lo..hi``."""
    return st.sets(st.integers(lo, hi), max_size=hi - lo + 1).map(lambda s: tuple(sorted(s)))


def coefficients():
    part = st.floats(-2, 2, allow_nan=False).map(lambda v: round(v, 6))
    return st.builds(complex, part, part)


def elements(lo: int = -4, hi: int = 4, max_terms: int = 5):
    return st.dictionaries(monomials(lo, hi), coefficients(), max_size=max_terms).map(AlgebraElement)


def unit_vectors():
    comp = st.floats(-1, 1, allow_nan=False)
    return (
        st.tuples(comp, comp, comp)
        .filter(lambda v: sum(x * x for x in v) > 1e-2)
        .map(lambda v: tuple(x / sum(y * y for y in v) ** 0.5 for x in v))
    )

from __future__ import annotations

from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def rationals(height: int = 12, nonzero: bool = False):
    num = st.integers(-height, height)
    if nonzero:
        num = num.filter(bool)
    return st.builds(Fraction, num, st.integers(1, height))


def signatures(height: int = 6):
    return st.tuples(*(rationals(height) for _ in range(4)))

from fractions import Fraction
from math import gcd

from hypothesis import settings, strategies as st

from sasakicone.topology import JoinParams

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# filled by tests/test_acceptance.py, printed once at the end of the run
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0][2:])):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


rationals = st.fractions(min_value=-10, max_value=10, max_denominator=50)
small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)


@st.composite
def join_params(draw, max_g=40, max_l=8, max_w=20, strict=False):
    g = draw(st.integers(1, max_g))
    l = draw(st.integers(1, max_l))
    w1 = draw(st.integers(1, max_w))
    w2 = draw(st.integers(1, max_w))
    if gcd(w1, w2) != 1 or (strict and w1 == w2):
        w1, w2 = w1 + 1 if w1 == w2 else w1, 1
    return JoinParams(g, l, max(w1, w2), min(w1, w2))


@st.composite
def profiles_input(draw):
    """(p, q, r, s) with -1 < r < 1, r != 0."""
    p = draw(st.integers(1, 12))
    q = draw(st.integers(1, 12))
    r = draw(st.fractions(min_value=Fraction(-59, 60), max_value=Fraction(59, 60), max_denominator=60)
             .filter(lambda x: x != 0))
    s = draw(st.fractions(min_value=-20, max_value=20, max_denominator=30))
    return p, q, r, s

import os
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from kahlerstar.ring import RingElem, Space
from kahlerstar.scalars import RationalH

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, max_deg=3, nonzero=False):
    cs = draw(st.lists(small_fracs, min_size=1, max_size=max_deg + 1))
    if nonzero and not any(cs):
        cs[0] = Fraction(1)
    return tuple(cs)


@st.composite
def rational_h(draw):
    num = draw(polys())
    # denominators nonvanishing at h = 0 keep series expansions defined
    den = list(draw(polys(max_deg=2)))
    den[0] = draw(st.sampled_from([Fraction(1), Fraction(2), Fraction(-3, 2)]))
    return RationalH(num, tuple(den))


spaces = st.sampled_from([Space.cpn(1), Space.chn(1), Space.cpn(2), Space.chn(2)])


@st.composite
def ring_elems(draw, space=None, max_terms=3, max_deg=2, bmin=-2, bmax=1):
    sp = space if space is not None else draw(spaces)
    out = RingElem.zero(sp)
    for _ in range(draw(st.integers(1, max_terms))):
        a = tuple(draw(st.integers(0, max_deg)) for _ in range(sp.N))
        b = tuple(draw(st.integers(0, max_deg)) for _ in range(sp.N))
        p = draw(st.integers(bmin, bmax))
        c = draw(st.integers(-3, 3).filter(bool))
        out = out + RingElem.monomial(sp, a=a, b=b, p=p, c=c)
    return out


ACCEPTANCE_LINES = {}


def record_acceptance(number: int, ok: bool, title: str, detail: str = "") -> str:
    line = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}" + (f" :: {detail}" if detail else "")
    ACCEPTANCE_LINES[number] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])

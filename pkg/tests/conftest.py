from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bianchi_periods.quadfield import FIELDS, get_field

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIELD_CODES = sorted(FIELDS)

# filled by tests/test_acceptance.py, printed once at the end of the session
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture(params=FIELD_CODES, ids=lambda d: f"D{d}")
def field(request):
    return get_field(request.param)


fields = st.sampled_from(FIELD_CODES).map(get_field)
small_ints = st.integers(min_value=-30, max_value=30)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def field_and_elems(draw, count=1, integral=False, nonzero=False):
    f = draw(fields)
    out = []
    for _ in range(count):
        coord = small_ints if integral else rationals
        v = f(draw(coord), draw(coord))
        out.append(f.one if nonzero and v.is_zero() else v)
    return (f, *out)

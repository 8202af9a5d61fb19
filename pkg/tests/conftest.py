import random
from fractions import Fraction

import pytest

from negabase import parse_base

ACCEPTANCE_LINES: list[str] = []

NEG_BASES = ["-(1+sqrt(5))/2", "-(3+sqrt(5))/2", "-5/2", "-39/10"]
POS_CONFLUENT = ["(1+sqrt(5))/2", "1+sqrt(2)"]


def uniform_in(lo, hi, rng: random.Random):
    """Exact point ``lo + (hi - lo) u`` with a 53-bit dyadic ``u`` in [0, 1]."""
    u = Fraction(rng.getrandbits(53), (1 << 53) - 1)
    return lo + (hi - lo) * u


@pytest.fixture(params=NEG_BASES)
def neg_system(request):
    return parse_base(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

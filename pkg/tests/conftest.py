import random

import pytest
import sympy

from qverify.qcoeff import QScalar

QSYM = sympy.Symbol("q")


def to_sympy(x: QScalar):
    num = sum(int(c) * QSYM**e for e, c in enumerate(x.num_coeffs()))
    den = sum(int(c) * QSYM**e for e, c in enumerate(x.den_coeffs()))
    return num / den


def random_qscalar(rng: random.Random, deg: int = 3) -> QScalar:
    while True:
        num = {e: rng.randint(-3, 3) for e in range(-deg, deg + 1)}
        den = {e: rng.randint(-3, 3) for e in range(deg + 1)}
        if any(den.values()):
            return QScalar.from_laurent(num) / QScalar.from_laurent(den)


@pytest.fixture
def rng():
    return random.Random(1234)


# --------------------------------------------------------- acceptance lines
_ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    from contextlib import contextmanager

    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, {})

    @contextmanager
    def record(number: int, title: str):
        try:
            yield
        except BaseException:
            lines[number] = f"FAIL criterion {number}: {title}"
            print(lines[number])
            raise
        lines[number] = f"PASS criterion {number}: {title}"
        print(lines[number])

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])

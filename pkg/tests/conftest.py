import numpy as np
import pytest

from jetfield.algebra import build_algebra
from jetfield.lattice import Grid
from jetfield.scenarios import abelian


@pytest.fixture
def so3():
    return build_algebra("so3")


@pytest.fixture
def so21():
    return build_algebra("so21")


@pytest.fixture
def maxwell():
    return abelian()


@pytest.fixture
def grid8():
    return Grid.cubic(8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def maxabs(x) -> float:
    return float(np.max(np.abs(x), initial=0.0))


ACCEPTANCE_LINES: list[str] = []


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

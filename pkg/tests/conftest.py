from pathlib import Path

import pytest

import autocat
from autocat.formats import load
from autocat.oracle import OracleBounds, corpus

FIXTURE_DIR = Path(autocat.__file__).parent / "fixtures"
FIXTURE_NAMES = sorted(p.stem for p in FIXTURE_DIR.glob("*.rn"))


def fixture_path(name):
    return FIXTURE_DIR / f"{name}.rn"


def fixture_network(name):
    return load(fixture_path(name)).network


@pytest.fixture(scope="session")
def random_corpus():
    """200 seeded networks: <=5 entities, <=5 reactions, coefficients <=3, catalysis 0.3."""
    return corpus(OracleBounds(instance_count=200, seed=0))


@pytest.fixture(scope="session")
def unit_corpus():
    return corpus(OracleBounds(instance_count=100, seed=10_000), unit=True)


ACCEPTANCE_LINES = []


def acceptance(number, ok, detail=""):
    """Record one acceptance verdict line and fail the calling test when it is negative."""
    line = f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)

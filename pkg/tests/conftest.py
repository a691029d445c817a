from __future__ import annotations

import random

import pytest

from coweights.rootdata import build_group

# rank <= 3: simple types, products, adjoint forms and a central torus
RANK3_SPECS = [
    "A1", "A2", "A3", "B2", "B3", "C3", "G2",
    "A1xA1", "A1xA2", "A1xA1xA1", "A1xB2",
    "A1 ad", "A2 ad", "B2 ad", "A1+Z1", "A2+Z1",
]
RANK2_SPECS = ["A1", "A2", "B2", "G2", "A1xA1", "A1 ad", "A2 ad", "A1+Z1"]
SIMPLE_RANK4 = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"]


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def groups():
    cache = {}

    def get(spec):
        if spec not in cache:
            cache[spec] = build_group(spec)
        return cache[spec]

    return get


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"ACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append((number, line))
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)

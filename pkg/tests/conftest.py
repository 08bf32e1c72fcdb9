from __future__ import annotations

import random

import pytest

from gccp.core import Instance


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="also run the multi-minute exact queen counts")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def random_instance(rng: random.Random, max_w: int = 12, max_h: int = 6) -> Instance:
    w = rng.randint(1, max_w)
    h = rng.randint(1, max_h)
    goals = [rng.sample(range(w), rng.randint(1, w)) for _ in range(h)]
    return Instance.from_sets(w, goals)


@pytest.fixture
def rng():
    return random.Random(20240611)


# One line per acceptance criterion, appended by test_acceptance and echoed
# in the terminal summary so it shows without -s.
ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, ok: bool, detail: str) -> bool:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

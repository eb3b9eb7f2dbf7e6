import random

import pytest
from hypothesis import HealthCheck, settings

from twistham.algebra import HamiltonianAlgebra
from twistham.instances import all_nat, desk1, desk2

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def d1():
    return HamiltonianAlgebra(desk1())


@pytest.fixture(scope="session")
def d2():
    return HamiltonianAlgebra(desk2())


@pytest.fixture(scope="session")
def nat():
    return HamiltonianAlgebra(all_nat())


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, from the properties its test recorded."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and rep.when == "call":
                rows.append((props["criterion"], outcome, rep.duration, props))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, outcome, dur, props in sorted(rows):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        budget = f"budget {props['budget']} s" if props["budget"] is not None else "no time budget"
        terminalreporter.write_line(f"criterion {num:2d}  {verdict}  {dur:6.2f} s ({budget})  {props['title']}")

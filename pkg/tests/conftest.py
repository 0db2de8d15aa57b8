import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from wittquot.truncpoly import ambient

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def B1():
    return ambient(5, 1)


@pytest.fixture(scope="session")
def B2():
    return ambient(5, 2)


@pytest.fixture(scope="session")
def B3():
    return ambient(5, 3)


def pytest_terminal_summary(terminalreporter):
    rows = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            props = dict(getattr(rep, "user_properties", []))
            if "criterion" in props:
                rows.append((props["criterion"], key.upper(), props.get("elapsed_s"), props["budget_s"], props.get("detail", "")))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for crit, status, elapsed, budget, detail in sorted(rows):
        took = "n/a" if elapsed is None else f"{elapsed:.1f}s"
        terminalreporter.write_line(f"[{crit:2d}] {status:6s} {took:>7s} / {budget}s  {detail}")

from __future__ import annotations

import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "dgtor",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("dgtor")


ACCEPTANCE: dict = {}


def pytest_runtest_logreport(report):
    # one verdict per acceptance criterion, failing if any of its tests fail
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for mark in report.keywords:
        if mark.startswith("criterion_"):
            n = mark.split("_", 1)[1]
            prev = ACCEPTANCE.get(n, (True, 0.0))
            ACCEPTANCE[n] = (prev[0] and report.passed, prev[1] + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE, key=int):
        ok, secs = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({secs:.1f} s)")


def pytest_configure(config):
    for n in range(1, 9):
        config.addinivalue_line("markers", f"criterion_{n}: acceptance criterion {n}")

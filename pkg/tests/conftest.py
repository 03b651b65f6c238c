import random

import pytest


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criteria")


def pytest_terminal_summary(terminalreporter):
    rows = []
    for status in ("passed", "failed"):
        for rep in terminalreporter.stats.get(status, []):
            if rep.when == "call" and "test_criterion_" in rep.nodeid:
                name = rep.nodeid.split("test_criterion_")[1]
                rows.append((name, "PASS" if status == "passed" else "FAIL", rep.duration))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, status, dur in sorted(rows):
            num, label = name.split("_", 1)
            terminalreporter.write_line(f"criterion {int(num):2d} {status}  {label.replace('_', ' ')} ({dur:.1f}s)")

import re

import pytest


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion after the run."""
    stats = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            m = re.search(r"test_criterion_(\d+)", getattr(report, "nodeid", ""))
            if m:
                key = int(m.group(1))
                ok = outcome == "passed"
                stats[key] = stats.get(key, True) and ok
    if not stats:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(stats):
        terminalreporter.write_line(
            f"criterion {key:2d}: {'PASS' if stats[key] else 'FAIL'}")

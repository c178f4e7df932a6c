"""Prints the acceptance-criterion verdict lines.

Tests tagged with the `criterion` decorator (see test_acceptance.py)
carry a `(number, summary)` attribute.  Writing the verdicts through
the terminal reporter keeps them visible on passing tests, where
ordinary stdout is captured and discarded.
"""

import pytest

_config = None


def pytest_configure(config):
    # the terminal reporter is not registered yet at this point, so only
    # keep the config and resolve the reporter per report
    global _config
    _config = config


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        meta = getattr(getattr(item, "function", None), "_criterion", None)
        if meta is not None:
            report._criterion = meta


@pytest.hookimpl(trylast=True)
def pytest_runtest_logreport(report):
    meta = getattr(report, "_criterion", None)
    if meta is None or report.when != "call" or _config is None:
        return
    terminal = _config.pluginmanager.get_plugin("terminalreporter")
    if terminal is None:
        return
    number, summary = meta
    verdict = "PASS" if report.passed else "FAIL"
    terminal.write_line(f"criterion {number:2d}: {verdict} - {summary}")

import importlib
import math
import re

import pytest

from mfgs import _pycore


def _compiled():
    try:
        return importlib.import_module("mfgs._core")
    except ImportError:
        return None


BACKENDS = [pytest.param(_pycore, id="python")]
if _compiled() is not None:
    BACKENDS.append(pytest.param(_compiled(), id="compiled"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    """Kernel module under test: the pure-Python core and, if built, the compiled one."""
    return request.param


def rel_err(a, b):
    return abs(a - b) / abs(b)


# ---------------------------------------------------------------------------
# one summary line per acceptance criterion

_CRITERION = re.compile(r"test_criterion_(\d+)")
_outcomes: dict[int, list[tuple[str, str]]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    m = _CRITERION.search(report.nodeid)
    if m:
        _outcomes.setdefault(int(m.group(1)), []).append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        results = _outcomes[number]
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "PASS" if not failed else "FAIL"
        detail = "" if not failed else "  (failing: " + ", ".join(failed) + ")"
        terminalreporter.write_line(f"criterion {number:2d}: {status}{detail}")

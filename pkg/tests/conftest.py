import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import support  # noqa: E402

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_outcomes: dict[int, str] = {}


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=0,
                     help="offset added to every seed of the randomized tests")


def pytest_configure(config):
    support.SEED = config.getoption("--seed")


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.when == "call" or report.failed:
        if report.failed:
            _outcomes[k] = "FAIL"
        else:
            _outcomes.setdefault(k, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_outcomes):
        terminalreporter.write_line(f"criterion {k}: {_outcomes[k]}")

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vsetaccess.automaton import running_example  # noqa: E402
from vsetaccess.grammar import example_grammar  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def aex():
    return running_example()


@pytest.fixture
def w0():
    return "abababcab"


@pytest.fixture
def example_slp():
    return example_grammar().to_cnf()


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])

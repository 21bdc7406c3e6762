import sys
from pathlib import Path

import pytest

from tba.characters import character_table
from tba.constructions import (
    corpus,
    group_algebra,
    klein_four_table,
    q_example,
    symmetric_table,
)

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def algebras():
    return corpus()


@pytest.fixture(scope="session")
def tables(algebras):
    return {name: character_table(A) for name, A in algebras.items()}


@pytest.fixture(scope="session")
def q3():
    return q_example(3)


@pytest.fixture(scope="session")
def s3():
    return group_algebra(symmetric_table(3))


@pytest.fixture(scope="session")
def klein():
    return group_algebra(klein_four_table())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

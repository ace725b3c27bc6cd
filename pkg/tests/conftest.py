from pathlib import Path

import pytest

from knotlift.diagram import load

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "knotlift" / "fixtures"


def fixture(name):
    return load(FIXTURES / f"{name}.kd")


@pytest.fixture
def fx():
    return fixture


ACCEPTANCE = {}


def record(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])

from pathlib import Path

import pytest

from fax.automata import Alphabet, load

DATA = Path(__file__).resolve().parent.parent / "data"
SIGNATURE_REGEX = "(abcd+)|(ab[c-z]e+)|(bc+da)|(bc+)"


@pytest.fixture(scope="session")
def third_b():
    return load(DATA / "third_b.aut")


@pytest.fixture(scope="session")
def signatures():
    return load(DATA / "signatures.aut")


@pytest.fixture(scope="session")
def az():
    return Alphabet.from_spec("a-z")


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")

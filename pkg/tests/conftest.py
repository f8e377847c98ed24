import pytest

from mbgame.fixtures import example4_spec
from mbgame.meag import build_meag


@pytest.fixture(scope="session")
def ex4():
    return example4_spec()


@pytest.fixture(scope="session")
def ex4_meag(ex4):
    return build_meag(ex4, method="stp")


# --- acceptance summary ---------------------------------------------------
# test_acceptance.py records one verdict per criterion here; the terminal
# summary prints them as a block after the normal pytest output.

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        verdict, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {verdict}  {detail}")

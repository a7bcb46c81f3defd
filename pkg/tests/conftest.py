import pathlib
import sys

import pytest

from quasifix import GALLERY_KEYS, gallery_instance, load_space, verify_gallery

TESTS_DIR = pathlib.Path(__file__).parent
sys.path.insert(0, str(TESTS_DIR))  # makes `import oracles` work everywhere

DATA = TESTS_DIR / "data"


@pytest.fixture(scope="session")
def trio():
    """Three points with a long direct edge the two short hops undercut."""
    return load_space(str(DATA / "triangle_break.json"))


@pytest.fixture(scope="session")
def one_way():
    """Two points at distance zero one way, one the other."""
    return load_space(str(DATA / "one_way_zero.json"))


@pytest.fixture(scope="session")
def gallery_reports():
    """One full verification pass over every instance, shared by all tests."""
    return {key: verify_gallery(gallery_instance(key)) for key in GALLERY_KEYS}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LOG
    except ImportError:  # acceptance module not collected in this run
        return
    if not ACCEPTANCE_LOG and not any(
        "test_acceptance" in str(item)
        for group in terminalreporter.stats.values()
        for item in group
        if hasattr(item, "nodeid")
    ):
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 9):
        if n in ACCEPTANCE_LOG:
            terminalreporter.write_line(f"ACCEPTANCE {n}: PASS — {ACCEPTANCE_LOG[n]}")
        else:
            terminalreporter.write_line(
                f"ACCEPTANCE {n}: FAIL — criterion did not complete"
            )

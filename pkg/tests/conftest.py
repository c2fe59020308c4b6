import os

import pytest


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", help="run the slow E-series checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended") or os.environ.get("LIE2_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="needs --extended or LIE2_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def kv34():
    from lie2.contragredient import kac_veisfeiler

    return kac_veisfeiler("w", 2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in RESULTS.values():
        terminalreporter.write_line(line)

from fractions import Fraction

import pytest

from findcode import BlockCode, bec, bsc, noiseless


@pytest.fixture
def bsc_quarter():
    return bsc(Fraction(1, 4))


@pytest.fixture
def repetition3():
    # majority decoding of {111, 222}
    return BlockCode.build([(1, 1, 1), (2, 2, 2)], [1, 1, 1, 2, 1, 2, 2, 2], 2, 2)


@pytest.fixture
def identity_code():
    return BlockCode.build([(1,), (2,)], [1, 2], 2, 2)


@pytest.fixture
def noiseless2():
    return noiseless(2)


@pytest.fixture
def bec_half():
    return bec(Fraction(1, 2))


@pytest.fixture
def repetition2_bec():
    """{11, 22} over BEC(1/2); any unerased symbol decides, full erasure -> 1."""
    decoder = []
    for y1 in (1, 2, 3):
        for y2 in (1, 2, 3):
            decoder.append(2 if 2 in (y1, y2) else 1)
    return BlockCode.build([(1, 1), (2, 2)], decoder, 2, 3)


# -- acceptance report -----------------------------------------------------

_criteria: dict[int, bool] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number = marker.args[0]
    failed = report.failed or (report.when == "call" and report.skipped)
    if report.when == "call" or failed:
        _criteria[number] = _criteria.get(number, True) and not failed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if _criteria[number] else 'FAIL'}")

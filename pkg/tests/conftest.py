import pytest

_criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _criteria.append((marker.args[0], item.name, "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, name, status in _criteria:
        terminalreporter.write_line(f"{status}  {label}  ({name})")


@pytest.fixture(scope="session")
def ref_table():
    from sirscreen import load_reference_table

    return load_reference_table()


@pytest.fixture(scope="session")
def ref_test():
    from sirscreen import TestCharacteristics

    return TestCharacteristics(0.95, 0.99)


@pytest.fixture(scope="session")
def reference():
    from sirscreen import reference_scenario

    return reference_scenario()


@pytest.fixture(scope="session")
def reference_traj(reference):
    from sirscreen.report import simulate

    return simulate(reference)

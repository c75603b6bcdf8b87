import os

from hypothesis import HealthCheck, settings, strategies as st

from k3lattice.lattice import direct_sum, make_standard

settings.register_profile(
    "default",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ADE_SYMBOLS = ["A1", "A2", "A3", "A4", "D4", "D5", "E6", "E7", "E8"]


def ade_sums(max_parts=4):
    return st.lists(st.sampled_from(ADE_SYMBOLS), min_size=1, max_size=max_parts)


def lattice_of(symbols):
    return direct_sum([make_standard(s) for s in symbols])


def pytest_terminal_summary(terminalreporter):
    import sys

    test_acceptance = sys.modules.get("tests.test_acceptance")
    if test_acceptance is None or not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in test_acceptance.summary_lines():
        terminalreporter.write_line(line)

import sys


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, elapsed, title in sorted(module.RESULTS):
        terminalreporter.write_line(module.format_line(number, ok, elapsed, title))

from collections import OrderedDict

VERDICTS: "OrderedDict[tuple, str]" = OrderedDict()


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(VERDICTS):
        terminalreporter.write_line(VERDICTS[number])

import acceptance_report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not acceptance_report.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance_report.LINES:
        terminalreporter.write_line(line)

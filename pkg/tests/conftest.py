def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, config):
    # one PASS/FAIL line per acceptance criterion, whatever the capture mode
    if config._acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in config._acceptance_lines:
            terminalreporter.write_line(line)

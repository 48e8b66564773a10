"""Shared test plumbing.

The acceptance tests record one PASS/FAIL line per criterion here; the
terminal-summary hook prints them after the run so they survive output
capture and land in teed logs.
"""

acceptance_lines = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.write_line("")
        for line in acceptance_lines:
            terminalreporter.write_line(line)

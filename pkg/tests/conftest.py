import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance verdict lines after the run; they are also
    printed inside the tests but pytest captures that output."""
    for name, mod in sys.modules.items():
        if name.rpartition(".")[2] == "test_acceptance":
            verdicts = getattr(mod, "VERDICTS", None)
            if verdicts:
                terminalreporter.section("acceptance criteria")
                for line in verdicts:
                    terminalreporter.write_line(line)
            break

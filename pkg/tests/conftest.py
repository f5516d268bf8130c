import sys


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance lines so the gate is readable without ``-s``."""
    mods = [m for name, m in sys.modules.items() if name.split(".")[-1] == "test_acceptance"]
    results = getattr(mods[0], "RESULTS", {}) if mods else {}
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])

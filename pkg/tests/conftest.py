import time

SESSION_T0 = time.perf_counter()


def session_elapsed() -> float:
    return time.perf_counter() - SESSION_T0


def pytest_terminal_summary(terminalreporter):
    terminalreporter.write_line(
        f"total suite wall time: {session_elapsed():.1f}s")

import functools
import time

ACCEPTANCE: dict[int, str] = {}


def criterion(number: int, title: str, budget: float = None):
    """Record a pass/fail line for an acceptance test, with its runtime."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as e:
                took = time.perf_counter() - t0
                ACCEPTANCE[number] = f"criterion {number} FAIL  {title} ({took:.2f} s): {e!s:.200}"
                raise
            took = time.perf_counter() - t0
            extra = f"; {detail}" if detail else ""
            if budget is not None and took >= budget:
                ACCEPTANCE[number] = (f"criterion {number} FAIL  {title}: {took:.2f} s, "
                                      f"over the {budget:g} s limit")
                raise AssertionError(ACCEPTANCE[number])
            ACCEPTANCE[number] = f"criterion {number} PASS  {title} ({took:.2f} s{extra})"

        return run

    return wrap


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])

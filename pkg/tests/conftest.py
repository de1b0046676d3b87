import sys
from pathlib import Path

# the sympy oracle lives next to the tests
sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(results):
        parts = results[criterion]
        verdict = "PASS" if all(ok for ok, _ in parts) else "FAIL"
        detail = " | ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {criterion:>2}: {verdict}  {detail}")

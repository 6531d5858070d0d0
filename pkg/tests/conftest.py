import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for res in sorted(results, key=lambda r: r.number):
        terminalreporter.write_line(res.line)
    passed = sum(r.passed for r in results)
    terminalreporter.write_line(f"{passed}/{len(results)} criteria passed")

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LOG: list[tuple[str, str, bool]] = []


def record_criterion(cid: str, description: str, passed: bool) -> None:
    ACCEPTANCE_LOG.append((cid, description, passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for cid, description, passed in ACCEPTANCE_LOG:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{cid}] {description}: {status}")

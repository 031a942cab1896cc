"""The ten acceptance criteria, run exactly.  One pass/fail line per criterion is
printed in the terminal summary (or on stdout when run as a script)."""

import pytest

from braidlab.suite import CRITERIA, run_criterion

RESULTS: dict[str, tuple[str, list]] = {}


def summary_lines() -> list[str]:
    lines = []
    for key in CRITERIA:
        if key in RESULTS:
            name, failed = RESULTS[key]
            verdict = "PASS" if not failed else "FAIL"
            extra = f"  (failed: {', '.join(failed)})" if failed else ""
            lines.append(f"{verdict}  criterion {name}{extra}")
    return lines


@pytest.mark.parametrize("key", list(CRITERIA))
def test_criterion(key):
    rep, _ = run_criterion(key)
    RESULTS[key] = (rep.name, rep.details["failed"])
    assert rep.passed, f"{rep.name}: failed sub-checks {rep.details['failed']}"


if __name__ == "__main__":
    for key in CRITERIA:
        rep, _ = run_criterion(key)
        RESULTS[key] = (rep.name, rep.details["failed"])
    print("\n".join(summary_lines()))

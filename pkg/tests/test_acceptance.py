"""The ten acceptance criteria at full size, one test each.

Every test prints a single PASS/FAIL line (also visible without -s) and
then asserts the verdict, so a failing criterion shows up as a failed test.
"""

import pytest

from grext.verify import CHECKS, run_check

# seconds allowed per criterion, where one is stated
TIME_LIMITS = {1: 30, 2: 600, 3: 300, 10: 120}


@pytest.mark.parametrize("number", [c[0] for c in CHECKS], ids=[f"criterion_{c[0]:02d}" for c in CHECKS])
def test_criterion(number, capsys):
    result = run_check(number, level="full", seed=0)
    limit = TIME_LIMITS.get(number)
    in_time = limit is None or result.seconds < limit
    verdict = "PASS" if result.ok and in_time else "FAIL"
    with capsys.disabled():
        print(f"\n{verdict} criterion {number}: {result.name} ({result.seconds:.1f}s)")
    if not result.ok:
        pytest.fail("\n".join(result.details), pytrace=False)
    if not in_time:
        pytest.fail(f"took {result.seconds:.1f}s, limit {limit}s", pytrace=False)

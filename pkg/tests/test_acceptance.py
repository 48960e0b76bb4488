"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

from __future__ import annotations

import json

import pytest

from nilhoro.suites import CRITERIA, run_criterion

TITLES = {
    1: "h3_norm equals BFS distance on the radius-12 ball",
    2: "d(e, (a^ea b^eb)^n) = 2n for n <= 6, all sign pairs",
    3: "all two-letter words of length <= 12 are geodesic",
    4: "gamma, lambda and two-letter paths converge on the radius-4 window within t <= 40",
    5: "closed-form action matches the definition; corners fixed by the radius-4 ball",
    6: "exactly the four corners have singleton orbits; all others reach >= 9",
    7: "AType(+,m,n) agrees with Corner(+,+) on the radius-4 window for n >= 8, m >= 100",
    8: "H3 polytope, facet alphabets, facet words geodesic, facet word limits",
    9: "class-3 group: staircase vs collection, permutation lemma, (ab)^l lengths, eta excess",
    10: "property suites: axioms, phi homomorphism, Lipschitz, reversal, case overlap",
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    report = run_criterion(number)
    with capsys.disabled():
        status = "PASS" if report.passed else "FAIL"
        print(f"\ncriterion {number:2d}: {status}  {TITLES[number]}  ({report.wall_time:.2f}s)")
        for check in report.checks:
            if not check.passed:
                print(f"    {check.id}: {check.status} expected={json.dumps(check.expected)} actual={json.dumps(check.actual)}")
    assert report.passed, [c.to_json() for c in report.checks if not c.passed]

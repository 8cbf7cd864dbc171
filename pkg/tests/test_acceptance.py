"""One test per acceptance criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line with the compared
values and then asserts exact agreement. Criteria 2, 6 and 11 are expected
to fail as stated; see the decisions ledger for the analysis.
"""
import pytest

from abelian_cover_lab.checks import run_suite


def _is_diagnostic(name):
    return "m1_over_3" in name or "YZ_swapped" in name


CRITERIA = {
    1: ("branch formula reproduction", "branch"),
    2: ("dual pencil identity", "dual"),
    3: ("triangle degenerations", "triangle"),
    4: ("smoothness dichotomy", "smoothness"),
    5: ("cusp structure", "cusps"),
    6: ("Heisenberg invariants", "heisenberg"),
    7: ("Pluecker conic", "plucker"),
    8: ("bidouble degeneration", "bidouble"),
    9: ("numerical invariants", "invariants"),
    10: ("lattice arithmetic", "lattice"),
    11: ("eigenspace dimensions", "eigenspaces"),
    12: ("property suites", "properties"),
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    title, suite = CRITERIA[number]
    checks = [c for c in run_suite(suite) if not _is_diagnostic(c.name)]
    ok = bool(checks) and all(c.passed for c in checks)
    bad = [c for c in checks if not c.passed]
    detail = "; ".join(f"{c.name}: observed {c.observed}, expected {c.expected}" for c in bad)
    with capsys.disabled():
        print(f"\ncriterion {number} ({title}): {'PASS' if ok else 'FAIL'}"
              f" [{len(checks) - len(bad)}/{len(checks)} checks]" + (f" {detail}" if detail else ""))
    assert ok, detail

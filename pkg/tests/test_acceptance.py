"""One test per acceptance criterion; each prints its PASS/FAIL line."""

import time

from artifact import checks

ITEM_SECONDS = 1.0
SUITE_SECONDS = 30.0
NUMERIC_TOL = 1e-8


def report(result):
    print(result.line())
    for line in result.detail:
        print("    " + line)
    assert result.passed, "\n".join(result.detail)


def test_01_weyl_table():
    report(checks.check_table())


def test_02_rank_one_rules():
    report(checks.check_rank_one())


def test_03_siegel_coefficient():
    report(checks.check_siegel_coefficient())


def test_04_nonsiegel_coefficient():
    report(checks.check_nonsiegel_coefficient())


def test_05_laurent_displays():
    report(checks.check_laurent())


def test_06_hyperplane_residues():
    report(checks.check_hyperplane_residues())


def test_07_vanishing():
    report(checks.check_vanishing())


def test_08_cancellation_and_constant():
    report(checks.check_cancellation())


def test_09_spectrum_lists():
    report(checks.check_spectrum())


def test_10_satake_matching():
    report(checks.check_satake())


def test_11_property_suites():
    r = checks.CheckResult("11", "property suites", True)
    for title, run in (
        ("64 Weyl pairs", checks.property_weyl_pairs),
        ("reduced-word independence", checks.property_reduced_words),
        ("Laurent ring laws, 200 cases", lambda: checks.property_laurent(200)),
        (f"numeric zeta check, tolerance {NUMERIC_TOL:g}", lambda: checks.property_numeric(NUMERIC_TOL)),
    ):
        failures = run()
        r.passed &= not failures
        r.detail.append(f"{title}: {'ok' if not failures else '; '.join(failures[:5])}")
    report(r)


def test_time_budget():
    start = time.perf_counter()
    slow = []
    for fn in checks.CHECKS:
        t = time.perf_counter()
        fn()
        took = time.perf_counter() - t
        print(f"{fn.__name__}: {took:.2f} s")
        if took >= ITEM_SECONDS:
            slow.append(fn.__name__)
    total = time.perf_counter() - start
    print(f"{'PASS' if not slow and total < SUITE_SECONDS else 'FAIL'} timing: total {total:.2f} s")
    assert not slow
    assert total < SUITE_SECONDS

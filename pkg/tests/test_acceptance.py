"""The eight acceptance criteria, each printing one PASS/FAIL line (run with -s to see them)."""

import time

import pytest

from ultracoh import report as rpt
from ultracoh.suites import SUITES, run_suite


def _timed(name, params=None):
    t0 = time.perf_counter()
    res = run_suite(name, params or {})
    return res, time.perf_counter() - t0


def _failed(res):
    return [a for a in res.checks.to_list() if not a["passed"]]


def _counts(res):
    return {a["name"]: a["checked"] for a in res.checks.to_list()}


def _verdict(k, ok, what):
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {what}")
    assert ok, what


def test_criterion_1_commutators():
    total, ok, notes = 0.0, True, []
    for n, p, N, j in [(2, 2, 8, 2), (2, 3, 6, 1)]:
        res, dt = _timed("commutators", {"n": n, "p": p, "N": N, "j": j, "samples": 500})
        total += dt
        pairs = sum(res.payload["level_histogram"].values())
        ok = (ok and not _failed(res) and pairs == 500
              and res.payload["quotient_order"] == p ** (n * n))
        notes.append(f"({n},{p},{N},{j}) {pairs} pairs, |quotient| {res.payload['quotient_order']}")
    _verdict(1, ok and total < 30, f"commutators {'; '.join(notes)}, {total:.1f}s < 30s")


def test_criterion_2_banach():
    res, dt = _timed("banach")
    counts = _counts(res)
    ok = not _failed(res) and counts["rank_nullity"] == 1000 and counts["base_change_invariance"] == 1000
    _verdict(2, ok and dt < 20, f"banach 1000 maps, rank <= 6, N = 8, e = 2, {dt:.1f}s < 20s")


def test_criterion_3_cochains():
    res, dt = _timed("cochains")
    counts = _counts(res)
    ok = (not _failed(res) and counts["dd_zero"] >= 100
          and counts["koszul_d1_equals_procyclic"] == 200)
    _verdict(3, ok and dt < 60,
             f"cochains d∘d = 0 on {counts['dd_zero']} tables, "
             f"koszul(d=1) = procyclic on 200 actions, {dt:.1f}s < 60s")


def test_criterion_4_homotopy():
    res, dt = _timed("homotopy")
    reading = res.payload.get("reading")
    counts = _counts(res)
    ok = (not _failed(res) and reading == "term1-args=tail,term2-sign=plain"
          and counts["identity_exact_under_displayed_reading"] > 0
          and counts["bound_strictly_increasing_under_setup"] > 0)
    _verdict(4, ok and dt < 60, f"homotopy identity exact under reading {reading}, {dt:.1f}s < 60s")


def test_criterion_5_main_theorem():
    res, dt = _timed("main-theorem")
    counts = _counts(res)
    ok = not _failed(res) and counts["koszul_vanishing"] == 100 and counts["procyclic_vanishing"] == 100
    _verdict(5, ok and dt < 30, f"main theorem on 100 specs, {dt:.1f}s < 30s")


def test_criterion_6_kostant():
    res, dt = _timed("lie-kostant")
    rows = res.tables["dims"]["rows"]
    counts = _counts(res)
    ok = not _failed(res) and counts["dims_equal_weyl_length_counts"] == 9
    _verdict(6, ok and dt < 120, f"kostant on 9 weights ({len(rows)} rows), {dt:.1f}s < 120s")


def test_criterion_7_hochschild_serre():
    res, dt = _timed("lie-hs")
    counts = _counts(res)
    n = counts["euler_equality"]
    ok = not _failed(res) and n >= 5 and counts["degreewise_inequality"] == n
    _verdict(7, ok and dt < 120, f"HS euler equality and inequality on {n} instances, {dt:.1f}s < 120s")


# reduced sizes for the slow suites; every other suite runs at its defaults
DETERMINISM = {
    "banach": {"maps": 60},
    "cochains": {"tables": 10, "actions": 20, "heavy_points": 10**5},
    "homotopy": {"primes": [3], "max_rank": 2},
}


def test_criterion_8_determinism():
    bad = []
    for name in sorted(SUITES):
        params = DETERMINISM.get(name, {})
        a = rpt.stable_text(rpt.build_report(run_suite(name, dict(params))))
        b = rpt.stable_text(rpt.build_report(run_suite(name, dict(params))))
        if a != b:
            bad.append(name)
    _verdict(8, not bad, f"stable sections byte-identical for {len(SUITES)} suites"
             + (f", differing: {bad}" if bad else ""))

"""
Acceptance gate: one test per criterion, each printing a single pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also echoed in the terminal summary.
"""

import time

import numpy as np
import pytest

from adhmkit.adhm import (BlowupConfig, blowup_is_nondegenerate, config_distance, gauge_apply,
                          gauge_equivalent, is_costable, is_stable, random_gauge,
                          random_nondegenerate, random_nondegenerate_blowup, residual)
from adhmkit.bar.complex import build_bar, homology
from adhmkit.bar.monoids import FiniteMonoid, MonoidModule
from adhmkit.bar.multidegree import check_support_initiality
from adhmkit.bar.ordinals import check_cofinal_inclusion, check_initial_object
from adhmkit.gluing import (GluingContext, Isometry, boxplus_oo, boxplus_oy, boxplus_xo,
                            from_delta_chart, glue_denominators, isometry_act, pullback,
                            to_delta_chart, translate, whitney_sum)
from adhmkit.suites import WHITNEY_CONVENTION
from oracles import costable_oracle, mixed_config, oracle_group_homology, stable_oracle

CTX = GluingContext((0, 0), (1.5, 0.5j), 0.5)
LINES = []


def report(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    LINES.append(line)
    print(line)
    return ok


def charge_one(rng, r=2):
    return to_delta_chart(random_nondegenerate(1, r, int(rng.integers(2**31))), CTX)


def charge_one_blowup(rng, r=2):
    return to_delta_chart(random_nondegenerate_blowup(1, r, int(rng.integers(2**31))), CTX)


def glue_pair(rng, first, second, side):
    while True:
        a, b = first(rng), second(rng)
        if glue_denominators(a, b, CTX, side) > 0.1:
            return a, b


def gauge_ok(a, b, tol=1e-6):
    return gauge_equivalent(a, b, tol) is not None


def test_c01_integrability_of_gluing():
    t0 = time.perf_counter()
    worst = 0.0
    for seed in range(1000):
        rng = np.random.default_rng(seed)
        c1, c2 = glue_pair(rng, charge_one, charge_one, "oo")
        m1, d1 = glue_pair(rng, charge_one_blowup, charge_one, "xo")
        d2, m2 = glue_pair(rng, charge_one, charge_one_blowup, "oy")
        for out in (boxplus_oo(c1, c2, CTX), boxplus_xo(m1, d1, CTX), boxplus_oy(d2, m2, CTX)):
            worst = max(worst, residual(out))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-9 and elapsed < 10
    assert report(1, ok, f"1000 pairs x 3 maps, worst residual {worst:.2e}, {elapsed:.2f} s")


def test_c02_pullback_compatibility():
    t0 = time.perf_counter()
    bad = 0
    for seed in range(200):
        rng = np.random.default_rng(seed)
        c1, c2 = glue_pair(rng, charge_one, charge_one, "oo")
        glued = boxplus_oo(c1, c2, CTX)
        d2 = lambda: random_gauge(2, rng).g1
        d1 = lambda: random_gauge(1, rng).g1
        x_ok = gauge_ok(pullback(glued, d2(), CTX.x), boxplus_xo(pullback(c1, d1()), c2, CTX))
        y_ok = gauge_ok(pullback(glued, d2(), CTX.y), boxplus_oy(c1, pullback(c2, d1()), CTX))
        bad += (not x_ok) + (not y_ok)
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 30
    assert report(2, ok, f"200 trials x 2 sides, {bad} mismatches, {elapsed:.2f} s")


def test_c03_isometry_equivariance():
    alpha = Isometry.inclusion(2, 4)
    bad = 0
    for seed in range(200):
        rng = np.random.default_rng(seed)
        c1, c2 = glue_pair(rng, charge_one, charge_one, "oo")
        lhs = isometry_act(alpha, boxplus_oo(c1, c2, CTX))
        rhs = boxplus_oo(isometry_act(alpha, c1), isometry_act(alpha, c2), CTX)
        bad += not gauge_ok(lhs, rhs)
    assert report(3, bad == 0, f"200 trials, alpha = C^2 -> C^4, {bad} mismatches")


def test_c04_whitney_factorization():
    iota, iota2 = Isometry.inclusion(2, 4, 0), Isometry.inclusion(2, 4, 2)
    bad = 0
    for seed in range(200):
        rng = np.random.default_rng(seed)
        c1, c2 = glue_pair(rng, charge_one, charge_one, "oo")
        lhs = whitney_sum(translate(c1, CTX.x), translate(c2, CTX.y))
        rhs = boxplus_oo(isometry_act(iota, c1), isometry_act(iota2, c2), CTX)
        bad += not gauge_ok(lhs, rhs)
    assert report(4, bad == 0, f"200 trials, {bad} mismatches; convention: {WHITNEY_CONVENTION}")


def test_c05_delta_chart_round_trip():
    worst = 0.0
    for seed in range(1000):
        m = random_nondegenerate_blowup(1, 2, seed)
        inside = to_delta_chart(random_nondegenerate_blowup(1, 2, seed + 10**6), CTX)
        worst = max(worst,
                    config_distance(from_delta_chart(to_delta_chart(m, CTX), CTX), m),
                    config_distance(to_delta_chart(from_delta_chart(inside, CTX), CTX), inside))
    assert report(5, worst < 1e-12, f"1000 configs, both orders, worst error {worst:.2e}")


def test_c06_nondegeneracy_oracle():
    rng = np.random.default_rng(2024)
    disagree = 0
    for _ in range(500):
        k, r = int(rng.integers(1, 3)), int(rng.integers(1, 4))
        cfg = mixed_config(rng, k, r)
        want = (stable_oracle(cfg.a1, cfg.a2, cfg.b, cfg.c),
                costable_oracle(cfg.a1, cfg.a2, cfg.b, cfg.c))
        disagree += (is_stable(cfg), is_costable(cfg)) != want
    blowup_disagree = 0
    for _ in range(500):
        b = rng.standard_normal((1, 2)) * rng.integers(2)
        c = rng.standard_normal((2, 1)) * rng.integers(2)
        m = BlowupConfig(rng.standard_normal((1, 1)), rng.standard_normal((1, 1)),
                         rng.uniform(0.5, 2, (1, 1)), b, c)
        exact = bool(np.any(b != 0)) and bool(np.any(c != 0))
        blowup_disagree += blowup_is_nondegenerate(m) != exact
    ok = disagree == 0 and blowup_disagree == 0
    assert report(6, ok, f"500 quadruples: {disagree} disagreements; "
                         f"500 k=1 quintuples: {blowup_disagree} disagreements")


def _invariants(cfg):
    if isinstance(cfg, BlowupConfig):
        return np.array([np.trace(cfg.a1 @ cfg.d), np.trace(cfg.a2 @ cfg.d)])
    return np.array([np.trace(cfg.a1), np.trace(cfg.a2)])


def test_c07_gauge_solver():
    rng = np.random.default_rng(77)
    worst, missed, false_pos, skipped = 0.0, 0, 0, 0
    for i in range(500):
        k, blowup = 1 + i % 2, bool(i % 4 >= 2)
        draw = random_nondegenerate_blowup if blowup else random_nondegenerate
        cfg = draw(k, 2, int(rng.integers(2**31)))
        target = gauge_apply(random_gauge(k, rng, blowup=blowup, max_cond=10), cfg)
        g = gauge_equivalent(cfg, target)
        if g is None:
            missed += 1
        else:
            worst = max(worst, config_distance(gauge_apply(g, cfg), target))
    for i in range(500):
        k, blowup = 1 + i % 2, bool(i % 4 >= 2)
        draw = random_nondegenerate_blowup if blowup else random_nondegenerate
        a, b = draw(k, 2, int(rng.integers(2**31))), draw(k, 2, int(rng.integers(2**31)))
        if np.linalg.norm(_invariants(a) - _invariants(b)) < 1e-3:
            skipped += 1
            continue
        false_pos += gauge_equivalent(a, b) is not None
    ok = missed == 0 and worst < 1e-8 and false_pos == 0
    assert report(7, ok, f"recovery: {missed} missed, worst apply-residual {worst:.2e}; "
                         f"distinct invariants: {false_pos} false positives ({skipped} skipped)")


def test_c08_bar_lemmas():
    t0 = time.perf_counter()
    checks = {}
    for flavor in ("DeltaBar", "DeltaHat"):
        rep = check_initial_object(flavor, 5)
        checks[f"{flavor} initial"] = rep.initial
        checks[f"{flavor} final"] = rep.final
    for which in ("Delta->DeltaBar", "DeltaBar->DeltaHat"):
        checks[f"{which} cofinal"] = check_cofinal_inclusion(which, 5).passed
    elapsed = time.perf_counter() - t0
    failed = [k for k, v in checks.items() if not v]
    ok = not failed and elapsed < 5
    detail = f"objects up to [5], {elapsed:.2f} s; " + (
        "all sub-checks pass" if not failed else "failing: " + ", ".join(failed))
    assert report(8, ok, detail)


def test_c09_bar_homology():
    c2 = FiniteMonoid.cyclic(2)
    pr, pl = MonoidModule.point(c2, "right"), MonoidModule.point(c2, "left")
    oracle = oracle_group_homology(c2.table, 0, 2, 3)
    got = [(g.rank, g.torsion) for g in homology(build_bar(pr, c2, pl, 5), 3)]
    expected = [(1, ()), (0, (2,)), (0, ()), (0, (2,))]
    free = homology(build_bar(MonoidModule.regular(c2, "right"), c2, pl, 5), 3)
    point_like = [(g.rank, g.torsion) for g in free] == [(1, ())] + [(0, ())] * 3
    ok = oracle == expected and got == expected and point_like
    assert report(9, ok, f"B(*,C2,*) = {got}, oracle agrees: {oracle == got}; "
                         f"B(C2,C2,*) point-like: {point_like}")


def test_c10_support_initiality():
    results = [check_support_initiality(k, "xyz"[:size]).passed
               for size in range(4) for k in range(4)]
    assert report(10, all(results), f"{sum(results)}/{len(results)} (k, I) cases pass")


@pytest.fixture(scope="module", autouse=True)
def _summary(request):
    yield
    reporter = request.config.pluginmanager.getplugin("terminalreporter")
    if reporter is not None and LINES:
        reporter.write_sep("-", "acceptance criteria")
        for line in sorted(LINES):
            reporter.write_line(line)

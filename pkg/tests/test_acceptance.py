"""Acceptance gate: one PASS/FAIL line per criterion, at the stated tolerances."""

import math
import time

import numpy as np
import pytest

from starcert.criteria import (
    Verdict,
    a_integrand,
    a_of,
    c1_threshold,
    g1_profile,
    rho_star,
    t1_threshold,
    t2_bounds,
    t3_factor,
)
from starcert.disk import DiskGrid
from starcert.harness import (
    EXAMPLE_ALPHA,
    EXAMPLE_DECLARED_A,
    EXAMPLE_G,
    FunctionFamily,
    example1_k_max,
    example1_report,
    fuzz_theorem,
    instance_rng,
    touching_family,
)
from starcert.series import PowerSeries, convexity_quotient, evaluate, starlike_quotient
from starcert.subordination import RotatedHalfPlaneTarget, mm_witness, sigma1, sigma2

from conftest import random_disk_points, record_acceptance


def brute_force_inf(fn, count=2001):
    r = np.linspace(0, 1, count)[:, None]
    t = np.linspace(0, 2 * np.pi, 4 * count)[None, :]
    return float(fn(r * np.exp(1j * t)).min())


def test_criterion_1_worked_example_numbers():
    start = time.perf_counter()
    k_max = example1_k_max(2)
    thr = t1_threshold(2, EXAMPLE_DECLARED_A, EXAMPLE_ALPHA)
    A = a_of(EXAMPLE_G, EXAMPLE_ALPHA, DiskGrid(), EXAMPLE_DECLARED_A)
    elapsed = time.perf_counter() - start
    oracle = brute_force_inf(a_integrand(EXAMPLE_G, EXAMPLE_ALPHA))
    n = 2
    checks = {
        "k_max": abs(k_max - 7 / 88) <= 1e-12,
        "threshold": abs(thr - 17 / 24) <= 1e-12 and abs(thr - (-n * n + 6 * n + 9) / (12 * n)) <= 1e-12,
        "declared_A_valid": A.estimated_inf.value >= EXAMPLE_DECLARED_A,
        "A_value": abs(A.estimated_inf.value - (math.sqrt(2) / 2 - 1 / 3)) <= 1e-4,
        "A_oracle": abs(oracle - (math.sqrt(2) / 2 - 1 / 3)) <= 1e-4,
        "runtime": elapsed < 10,
    }
    ok = all(checks.values())
    record_acceptance(1, ok, f"k_max={k_max:.12g} threshold={thr:.12g} A_inf={A.estimated_inf.value:.8g} "
                             f"oracle={oracle:.8g} t={elapsed:.2f}s {checks}")
    assert ok


def test_criterion_2_end_to_end_certification():
    k_max = example1_k_max(2)
    rep, rec = example1_report(2, 0.9 * k_max)
    sup_arg = rep.conclusion_sup_arg.value
    part_a = (
        rep.verdict is Verdict.CERTIFIED
        and abs(sup_arg - math.asin(0.9 * k_max)) <= 1e-4
        and sup_arg < math.pi / 4
    )
    rep_max, rec_max = example1_report(2)
    part_b = abs(rep_max.hypothesis_margin) <= 1e-3 and rep_max.boundary
    ok = part_a and part_b
    record_acceptance(
        2, ok,
        f"0.9*k_max: verdict={rep.verdict.value} sup|arg p|={sup_arg:.8g} "
        f"(arcsin={math.asin(0.9 * k_max):.8g}) [{'pass' if part_a else 'fail'}]; "
        f"k_max: sampled hypothesis margin={rep_max.hypothesis_margin:.6g} boundary={rep_max.boundary} "
        f"chain margin={rec_max.chain_margin:.3g} [{'pass' if part_b else 'fail'}: the triangle-inequality "
        f"chain is not attained on the disk, so the sampled margin stays positive]",
    )
    assert part_a, "certification at 0.9 k_max"
    assert part_b, (
        f"hypothesis margin at k_max is {rep_max.hypothesis_margin:.6g}, outside +-1e-3; "
        "the equality case of the coefficient bound is not attained by the functional"
    )


def test_criterion_3_second_bounds_vs_brute_force():
    rng = np.random.default_rng(3)
    rho = np.linspace(1e-4, 10, 100_000)
    worst_val = worst_arg = 0.0
    for _ in range(50):
        n, alpha = int(rng.integers(1, 6)), float(rng.uniform(0, 1.4))
        prof = g1_profile(n, alpha, rho)
        i = int(np.argmin(prof))
        worst_val = max(worst_val, abs(t2_bounds(n, alpha)[1] - prof[i]))
        worst_arg = max(worst_arg, abs(rho[i] - rho_star(n, alpha)))
    lo, hi = t2_bounds(1, 0.0)
    at_zero = abs(lo + math.sqrt(3)) <= 1e-12 and abs(hi - math.sqrt(3)) <= 1e-12
    ok = worst_val <= 1e-6 and worst_arg <= 1e-4 and at_zero
    record_acceptance(3, ok, f"max|high - min g1|={worst_val:.3g} max|argmin - rho*|={worst_arg:.3g} "
                             f"(n=1, alpha=0) bounds=({lo:.12g}, {hi:.12g})")
    assert ok


def test_criterion_4_third_factor():
    ok = t3_factor(1, 0.0) == 1.5
    record_acceptance(4, ok, f"factor(n=1)={t3_factor(1, 0.0)!r}")
    assert ok


def test_criterion_5_witness():
    q = RotatedHalfPlaneTarget(0.0)
    w = mm_witness(PowerSeries([1, -2]), q)
    hand = (
        abs(w.z0.z - 0.5) <= 1e-6 and abs(w.zeta0 + 1) <= 1e-6 and abs(w.rho) <= 1e-6
        and abs(w.sigma + 0.5) <= 1e-6 and abs(w.m - 2) <= 1e-6
    )
    grid = DiskGrid()
    rng = np.random.default_rng(55)
    worst = math.inf
    count = 0
    for n in (1, 2, 3):
        for batch in range(4):
            alpha = float(rng.uniform(-1.3, 1.3))
            target = RotatedHalfPlaneTarget(alpha)
            for h in touching_family(n, alpha, seed=1000 * n + batch, count=17):
                wit = mm_witness(h, target, grid)
                worst = min(worst, wit.m - n)
                count += 1
    ok = hand and count >= 200 and worst >= -1e-4
    record_acceptance(5, ok, f"hand check z0={w.z0.z:.8g} zeta0={w.zeta0:.8g} rho={w.rho:.3g} sigma={w.sigma:.8g} "
                             f"m={w.m:.8g}; {count} fuzzed witnesses, min(m - n)={worst:.6g}")
    assert ok


def test_criterion_6_sigma_and_symmetry():
    rng = np.random.default_rng(6)
    rho = rng.uniform(-100, 100, 10_000)
    alpha = rng.uniform(-(math.pi / 2 - 1e-3), math.pi / 2 - 1e-3, 10_000)
    s1 = np.array([sigma1(r, a) for r, a in zip(rho, alpha)])
    negative = bool(np.all(s1 < 0))
    reflect = all(sigma2(r, a) == sigma1(-r, a) for r, a in zip(rho, alpha))
    even = max(
        abs(t1_threshold(n, A, a) - t1_threshold(n, A, -a))
        for n, A, a in zip(rng.integers(1, 9, 1000), rng.uniform(0.01, 5, 1000), rng.uniform(-1.5, 1.5, 1000))
    )
    mapping = max(
        abs(c1_threshold(n, A, m) - t1_threshold(n, A, math.pi / 2 - math.pi * m / 2))
        for n, A, m in zip(rng.integers(1, 9, 1000), rng.uniform(0.01, 5, 1000), rng.uniform(1e-3, 1, 1000))
    )
    ok = negative and reflect and even <= 1e-15 and mapping <= 1e-12
    record_acceptance(6, ok, f"sigma1<0: {negative}; reflection exact: {reflect}; "
                             f"max evenness gap={even:.3g}; max mapping gap={mapping:.3g}")
    assert ok


@pytest.mark.slow
def test_criterion_7_falsification_suite():
    grid = DiskGrid()
    start = time.perf_counter()
    runs = {
        "T1 g=1": fuzz_theorem("T1", FunctionFamily("poly_p", 1, 0.3), grid, 2024, 1000, alpha=0.0, A=1.0),
        "T1 g=1+z/3": fuzz_theorem("T1", FunctionFamily("poly_p", 2, 0.1), grid, 2024, 1000,
                                   alpha=EXAMPLE_ALPHA, g=EXAMPLE_G, A=EXAMPLE_DECLARED_A),
        "T2": fuzz_theorem("T2", FunctionFamily("poly_p", 1, 0.5), grid, 2024, 1000, alpha=0.0),
        "T3": fuzz_theorem("T3", FunctionFamily("poly_p", 2, 0.4), grid, 2024, 1000, alpha=0.0),
    }
    elapsed = time.perf_counter() - start
    counts = {k: (r.counterexample_count, r.certified_count) for k, r in runs.items()}
    ok = all(r.counterexample_count == 0 and r.trials == 1000 for r in runs.values()) and elapsed < 900
    record_acceptance(7, ok, f"(counterexamples, certified) per run {counts}; t={elapsed:.1f}s")
    assert ok


def _quotient_series(f, order=400):
    """Coefficients of p = f' / (f/z) by recursive series division."""
    num = np.zeros(order + 1, dtype=complex)
    d = f.derivative().coefficients
    num[: d.size] = d
    den = f.shift_down().coefficients
    out = np.zeros(order + 1, dtype=complex)
    for k in range(order + 1):
        acc = num[k] - sum(den[j] * out[k - j] for j in range(1, min(k, den.size - 1) + 1))
        out[k] = acc / den[0]
    return PowerSeries(out)


def test_criterion_8_bridge_identities():
    g = PowerSeries([1, 1 / 3])
    worst_5 = worst_2 = 0.0
    for i in range(100):
        rng = instance_rng(8, i)
        n = int(rng.integers(1, 4))
        coef = np.zeros(7, dtype=complex)
        coef[1] = 1
        coef[n + 1 :] = (0.4 / (6 - n)) * np.sqrt(rng.random(6 - n)) * np.exp(2j * np.pi * rng.random(6 - n))
        f = PowerSeries(coef)
        p = _quotient_series(f)
        z = random_disk_points(rng, 100, 0.9)
        pz = evaluate(p, z)
        zp1 = z * evaluate(p.derivative(), z)
        P, Q = starlike_quotient(f, z), convexity_quotient(f, z)
        worst_5 = max(worst_5, float(np.max(np.abs(pz + zp1 / pz - (1 + Q)))))
        gz = evaluate(g, z)
        worst_2 = max(worst_2, float(np.max(np.abs(pz + gz * zp1 - (P + gz * P * (1 - P + Q))))))
    ok = worst_5 <= 1e-9 and worst_2 <= 1e-9
    record_acceptance(8, ok, f"max error p + zp'/p vs 1 + zf''/f' = {worst_5:.3g}; functional expansion = {worst_2:.3g}")
    assert ok

import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from starcert.criteria import Verdict, t1_threshold
from starcert.disk import DiskGrid, min_modulus
from starcert.errors import ConfigError, PreconditionError
from starcert.harness import (
    EXAMPLE_DECLARED_A,
    FunctionFamily,
    example1_chain_bound,
    example1_k_max,
    example1_report,
    example1_sweep,
    example1_threshold,
    fuzz_theorem,
    generate,
    instance_rng,
    sharpness_consistent,
    sharpness_probe,
    write_sharpness_csv,
)
from starcert.series import HClassFunction, PowerSeries
from starcert.subordination import RotatedHalfPlaneTarget, is_subordinate_halfplane


def boundary_crossing_k(n):
    """k at which inf over the unit circle of Re(p + g z p') meets the threshold.

    On |z| = 1 the functional is 1 + k((1+n) cos(n t) + (n/3) cos((n+1) t)).
    """
    f = lambda t: (1 + n) * np.cos(n * t) + (n / 3) * np.cos((n + 1) * t)  # noqa: E731
    t = np.linspace(0, 2 * np.pi, 400_001)
    i = int(np.argmin(f(t)))
    res = minimize_scalar(f, bracket=(t[i - 1], t[i], t[i + 1]), tol=1e-14)
    return (1 - example1_threshold(n)) / -res.fun


class TestFamilies:
    def test_poly_p_deterministic(self):
        fam = FunctionFamily("poly_p", 2, 0.3)
        a, b = generate(fam, 42, 3), generate(fam, 42, 3)
        assert [x.series.coefficients.tobytes() for x in a] == [x.series.coefficients.tobytes() for x in b]
        for p in a:
            assert p.series.coef(0) == 1 and p.series.coef(1) == 0
            assert np.abs(p.series.coefficients[2:]).sum() <= 0.3

    def test_counter_based(self):
        fam = FunctionFamily("poly_p", 1)
        assert generate(fam, 7, 5)[3].series == generate(fam, 7, 2, start=3)[0].series
        assert instance_rng(7, 3).random() == instance_rng(7, 3).random()

    def test_cap_keeps_zero_free(self, small_grid):
        fam = FunctionFamily("poly_p", 1, 0.9, 5)
        for p in generate(fam, 1, 20):
            assert min_modulus(p, small_grid).value >= 0.1

    def test_every_poly_p_in_class(self):
        for p in generate(FunctionFamily("poly_p", 3, 0.5, 6), 3, 100):
            HClassFunction(p.series, 3)

    def test_poly_f(self):
        for f in generate(FunctionFamily("poly_f", 2, 0.3), 0, 10):
            assert f.series.coef(1) == 1 and f.series.coef(2) == 0

    def test_schwarz_composed_subordinate(self, small_grid):
        fam = FunctionFamily("schwarz_composed", 2, 0.5, 4, rotation=0.4)
        q = RotatedHalfPlaneTarget(0.4)
        assert all(is_subordinate_halfplane(h, q, small_grid).subordinate for h in generate(fam, 5, 100))

    @pytest.mark.parametrize("kw, key", [
        (dict(family_id="nope"), "family"),
        (dict(family_id="poly_p", coefficient_cap=0), "cap"),
        (dict(family_id="poly_p", index_n=5, degree_cap=4), "degree"),
        (dict(family_id="poly_p", index_n=0), "n"),
    ])
    def test_invalid(self, kw, key):
        with pytest.raises(ConfigError) as info:
            FunctionFamily(**kw)
        assert info.value.key == key


class TestFuzz:
    def test_t1_all_certified(self, small_grid):
        rep = fuzz_theorem("T1", FunctionFamily("poly_p", 1, 0.3), small_grid, 3, 50, alpha=0.0, A=1.0)
        assert rep.certified_count == 50 and rep.counterexample_count == 0

    def test_deterministic(self, small_grid):
        fam = FunctionFamily("poly_p", 1, 0.5)
        a = fuzz_theorem("T2", fam, small_grid, 9, 20, alpha=0.0)
        b = fuzz_theorem("T2", fam, small_grid, 9, 20, alpha=0.0)
        assert a == b
        assert a.trials == sum([a.certified_count, a.hypothesis_fail_count, a.precondition_fail_count, a.counterexample_count])

    def test_family_mismatch(self, small_grid):
        with pytest.raises(PreconditionError):
            fuzz_theorem("C5", FunctionFamily("poly_p"), small_grid, 0, 1)

    def test_f_theorem(self, small_grid):
        rep = fuzz_theorem("C8", FunctionFamily("poly_f", 1, 0.2), small_grid, 0, 20, mu=1.0)
        assert rep.counterexample_count == 0 and rep.certified_count > 0


class TestExample:
    def test_closed_forms(self):
        assert example1_k_max(2) == pytest.approx(7 / 88, abs=1e-15)
        assert example1_k_max(3) == pytest.approx(0.1, abs=1e-15)
        assert example1_threshold(3) == pytest.approx(0.5, abs=1e-15)
        for n in (2, 3, 4, 7):
            assert example1_threshold(n) == pytest.approx(t1_threshold(n, EXAMPLE_DECLARED_A, math.pi / 4), abs=1e-12)
            assert example1_chain_bound(n, example1_k_max(n)) == pytest.approx(example1_threshold(n), abs=1e-12)

    def test_vacuous_n1(self):
        assert example1_k_max(1) < 0
        with pytest.raises(PreconditionError, match="vacuous"):
            example1_report(1)

    def test_certified_below_k_max(self):
        rep, rec = example1_report(2, 0.9 * 7 / 88)
        assert rep.verdict is Verdict.CERTIFIED
        assert rep.hypothesis_margin > 0 and rep.conclusion_margin > 0
        assert rec.conclusion_sup_arg == pytest.approx(math.asin(0.9 * 7 / 88), abs=1e-4)
        assert rec.declared_A == pytest.approx(0.235702, abs=1e-6)
        assert rec.numerical_A >= rec.declared_A

    def test_at_k_max(self):
        rep, rec = example1_report(3)
        assert rec.k == pytest.approx(0.1)
        assert rec.chain_margin == pytest.approx(0.0, abs=1e-12)
        # The sampled infimum sits above the chain bound: the cosines never align.
        assert rec.hypothesis_margin > 1e-3
        assert any("not attained" in note for note in rec.notes)

    def test_k_out_of_range(self):
        with pytest.raises(PreconditionError):
            example1_report(2, 0.1)


class TestSharpness:
    def test_example_sweep(self):
        grid = DiskGrid(128, 512, 1 - 1e-4)
        rows = example1_sweep(2, 41, grid)
        margins = np.array([r.hypothesis_margin for r in rows])
        ks = np.array([r.parameter for r in rows])
        assert np.all(np.diff(margins) < 0)
        assert sharpness_consistent(rows)
        # affine in k: constant second differences
        assert np.allclose(np.diff(margins, 2), 0, atol=1e-6)
        # chain margin crosses zero exactly at k_max; the sampled margin at the true boundary minimum
        chain = np.array([example1_chain_bound(2, k) - example1_threshold(2) for k in ks])
        i = int(np.argmax(chain < 0))
        assert ks[i - 1] <= example1_k_max(2) < ks[i]
        slope = np.polyfit(ks, margins, 1)
        assert -slope[1] / slope[0] == pytest.approx(boundary_crossing_k(2), rel=1e-3)

    def test_t3_family(self, medium_grid):
        # At z = -1: k + k/(1-k) = (3/2)(1-k)  <=>  k = 1 - sqrt(0.4).
        k_cross = 1 - math.sqrt(0.4)
        make = lambda k: HClassFunction(PowerSeries([1, k]), 1)  # noqa: E731
        rows = sharpness_probe("T3", make, np.linspace(0.01, 0.35, 8), medium_grid, alpha=0.0)
        assert all(r.hypothesis_margin > 0 for r in rows)
        assert sharpness_consistent(rows)
        below, above = sharpness_probe("T3", make, [k_cross - 1e-3, k_cross + 1e-3], medium_grid, alpha=0.0)
        assert below.hypothesis_margin > 0 > above.hypothesis_margin

    def test_t2_family_crossing(self, small_grid):
        alpha = math.pi / 2 - 0.01
        rows = sharpness_probe("T2", lambda k: HClassFunction(PowerSeries([1, k]), 1), np.linspace(0.001, 0.3, 12), small_grid, alpha=alpha)
        margins = [r.hypothesis_margin for r in rows]
        assert margins[0] > 0 and margins[-1] < 0
        assert sharpness_consistent(rows)

    def test_csv(self, tmp_path, small_grid):
        rows = example1_sweep(2, 5, small_grid)
        write_sharpness_csv(rows, tmp_path / "s.csv")
        lines = (tmp_path / "s.csv").read_text().splitlines()
        assert lines[0] == "parameter,hypothesis_margin,conclusion_margin,verdict"
        assert len(lines) == 5

"""Seeded instance generation, falsification fuzzing and the worked example.

Random streams come from numpy's PCG64 bit generator.  Instance ``i`` of a
run seeded with ``seed`` is drawn from ``PCG64(SeedSequence([seed, i]))``, so
any single instance can be regenerated without replaying the stream and
trials can be evaluated in any order.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .criteria import (
    CERT_TOL,
    F_THEOREMS,
    P_THEOREMS,
    ALowerBound,
    SectorParam,
    TheoremReport,
    Verdict,
    a_of,
    check,
    check_t1,
    t1_threshold,
)
from .disk import DEFAULT_REFINE_STEPS, DiskGrid
from .errors import ConfigError, PreconditionError
from .series import HClassFunction, NormalizedFunction, PowerSeries
from .subordination import RotatedHalfPlaneTarget, SchwarzComposition

FAMILIES = ("poly_p", "poly_f", "schwarz_composed")


def instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(index)])))


def _disk_sample(rng, radius, size):
    r = radius * np.sqrt(rng.random(size))
    return r * np.exp(2j * np.pi * rng.random(size))


@dataclass(frozen=True)
class FunctionFamily:
    """Random polynomial families matching the classes the criteria act on.

    ``poly_p`` draws ``1 + sum c_k z^k`` for ``n <= k <= degree_cap``;
    ``poly_f`` draws ``z + sum c_k z^k`` for ``n + 1 <= k <= degree_cap``.
    Each ``c_k`` is uniform on the disk of radius ``coefficient_cap /
    degree_cap``, which keeps ``sum |c_k| <= coefficient_cap``.
    ``schwarz_composed`` draws ``q(c z^m)`` with ``|c| <= coefficient_cap``
    and ``n <= m <= degree_cap``.
    """

    family_id: str
    index_n: int = 1
    coefficient_cap: float = 0.3
    degree_cap: int = 4
    rotation: float = 0.0

    def __post_init__(self):
        if self.family_id not in FAMILIES:
            raise ConfigError("family", f"unknown family {self.family_id!r}")
        if int(self.index_n) != self.index_n or self.index_n < 1:
            raise ConfigError("n", "index n must be an integer >= 1")
        if not self.coefficient_cap > 0:
            raise ConfigError("cap", "coefficient cap must be positive")
        lowest = self.index_n + 1 if self.family_id == "poly_f" else self.index_n
        if self.degree_cap < lowest:
            raise ConfigError("degree", f"degree cap {self.degree_cap} leaves no free coefficient for n={self.index_n}")
        if self.family_id in ("poly_p", "schwarz_composed") and not self.coefficient_cap < 1:
            raise ConfigError("cap", "coefficient cap must be < 1 for this family")

    def draw(self, rng):
        n, cap, deg = self.index_n, self.coefficient_cap, self.degree_cap
        if self.family_id == "schwarz_composed":
            c = complex(_disk_sample(rng, cap, 1)[0])
            power = int(rng.integers(n, deg + 1))
            return SchwarzComposition(RotatedHalfPlaneTarget(self.rotation), c, power)
        coef = np.zeros(deg + 1, dtype=complex)
        if self.family_id == "poly_p":
            coef[0] = 1.0
            coef[n:] = _disk_sample(rng, cap / deg, deg + 1 - n)
            return HClassFunction(PowerSeries(coef), n)
        coef[1] = 1.0
        coef[n + 1 :] = _disk_sample(rng, cap / deg, deg - n)
        return NormalizedFunction(PowerSeries(coef), n)


def generate(family: FunctionFamily, seed: int, count: int, start: int = 0):
    """``count`` instances; instance ``i`` depends only on ``(seed, i)``."""
    return [family.draw(instance_rng(seed, i)) for i in range(start, start + count)]


@dataclass
class FuzzReport:
    theorem_id: str
    trials: int
    seed: int
    certified_count: int = 0
    hypothesis_fail_count: int = 0
    precondition_fail_count: int = 0
    counterexample_count: int = 0
    worst_conclusion_margin: float | None = None
    family: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    def tally(self, report: TheoremReport):
        v = report.verdict
        if v is Verdict.CERTIFIED:
            self.certified_count += 1
        elif v is Verdict.HYPOTHESIS_FAILS:
            self.hypothesis_fail_count += 1
        elif v is Verdict.PRECONDITION_FAILS:
            self.precondition_fail_count += 1
        else:
            self.counterexample_count += 1
        if v in (Verdict.CERTIFIED, Verdict.COUNTEREXAMPLE):
            m = report.conclusion_margin
            if self.worst_conclusion_margin is None or m < self.worst_conclusion_margin:
                self.worst_conclusion_margin = m


def fuzz_theorem(theorem_id, family: FunctionFamily, grid=None, seed=0, trials=1000, *,
                 alpha=None, mu=None, g=None, A=None, tolerance=CERT_TOL,
                 refine_steps=DEFAULT_REFINE_STEPS) -> FuzzReport:
    """Run ``trials`` random instances through a checker and tally verdicts.

    A conclusion violation under a satisfied hypothesis is recorded with the
    seed, instance index and coefficients needed to reproduce it.
    """
    tid = theorem_id.upper()
    grid = grid or DiskGrid()
    if tid in P_THEOREMS:
        if family.family_id != "poly_p":
            raise PreconditionError(f"{tid} acts on p in H[1,n]; use the poly_p family")
    elif tid in F_THEOREMS:
        if family.family_id != "poly_f":
            raise PreconditionError(f"{tid} acts on f in A_n; use the poly_f family")
    else:
        raise PreconditionError(f"unknown theorem id {theorem_id!r}")
    if tid in {"T1", "C1", "C2", "C3"} and not isinstance(A, ALowerBound):
        # The g integrand does not depend on the instance: estimate it once.
        if alpha is None:
            sector_alpha = SectorParam.from_mu(mu if mu is not None else 1.0).alpha
        else:
            sector_alpha = alpha
        g = g if g is not None else PowerSeries([1.0])
        A = a_of(g, sector_alpha, grid, A, absolute=(tid != "C3"), refine_steps=refine_steps)
    report = FuzzReport(
        tid, int(trials), int(seed),
        family={
            "family_id": family.family_id, "index_n": family.index_n,
            "coefficient_cap": family.coefficient_cap, "degree_cap": family.degree_cap,
        },
        params={"alpha": alpha, "mu": mu, "A": A.declared if isinstance(A, ALowerBound) else A},
    )
    for i in range(int(trials)):
        fn = family.draw(instance_rng(seed, i))
        rep = check(tid, fn, grid, alpha=alpha, mu=mu, g=g, A=A, tolerance=tolerance, refine_steps=refine_steps)
        report.tally(rep)
        if rep.verdict is Verdict.COUNTEREXAMPLE:
            coef = fn.series.coefficients
            report.counterexamples.append({
                "seed": int(seed),
                "index": i,
                "coefficients": [[float(c.real), float(c.imag)] for c in coef],
                "hypothesis_margin": rep.hypothesis_margin,
                "conclusion_margin": rep.conclusion_margin,
            })
    return report


# --------------------------------------------------------------------------
# worked example: p = 1 + k z^n, g = 1 + z/3, alpha = pi/4


EXAMPLE_G = PowerSeries([1.0, 1.0 / 3.0])
EXAMPLE_ALPHA = math.pi / 4
EXAMPLE_DECLARED_A = 1.0 / (3.0 * math.sqrt(2.0))


def example1_k_max(n: int) -> float:
    return (n * n + 6 * n - 9) / (4 * n * (4 * n + 3))


def example1_threshold(n: int) -> float:
    """Closed form of the threshold at ``A = 1/(3 sqrt 2)``, ``alpha = pi/4``."""
    return (-n * n + 6 * n + 9) / (12 * n)


def example1_chain_bound(n: int, k: float) -> float:
    """Triangle-inequality lower bound ``1 - (1+n)k - (n/3)k`` of the functional."""
    return 1 - (1 + n) * k - n * k / 3


@dataclass
class Example1Reconciliation:
    n: int
    k: float
    k_max: float
    declared_A: float
    numerical_A: float
    threshold: float
    threshold_closed_form: float
    chain_lower_bound: float
    chain_margin: float
    hypothesis_inf: float
    hypothesis_margin: float
    conclusion_sup_arg: float
    arcsin_k: float
    arcsin_k_max: float
    sector_bound: float
    notes: list = field(default_factory=list)


def example1_report(n: int, k: float | None = None, grid=None, *, tolerance=CERT_TOL,
                    refine_steps=DEFAULT_REFINE_STEPS):
    """Reproduce every quantity of the worked example at ``n`` (default ``k = k_max``)."""
    if n == 1:
        raise PreconditionError("worked example vacuous for n = 1 (negative coefficient bound)")
    if int(n) != n or n < 1:
        raise PreconditionError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    k_max = example1_k_max(n)
    k = k_max if k is None else float(k)
    if not 0 < k <= k_max * (1 + 1e-15):
        raise PreconditionError(f"k must lie in (0, {k_max!r}], got {k!r}")
    grid = grid or DiskGrid()
    A = a_of(EXAMPLE_G, EXAMPLE_ALPHA, grid, EXAMPLE_DECLARED_A, refine_steps=refine_steps)
    p = HClassFunction(PowerSeries([1.0] + [0.0] * (n - 1) + [k]), n)
    report = check_t1(p, EXAMPLE_G, EXAMPLE_ALPHA, A, grid, tolerance=tolerance, refine_steps=refine_steps)
    threshold = t1_threshold(n, EXAMPLE_DECLARED_A, EXAMPLE_ALPHA)
    chain = example1_chain_bound(n, k)
    rec = Example1Reconciliation(
        n=n, k=k, k_max=k_max,
        declared_A=EXAMPLE_DECLARED_A,
        numerical_A=A.estimated_inf.value,
        threshold=threshold,
        threshold_closed_form=example1_threshold(n),
        chain_lower_bound=chain,
        chain_margin=chain - threshold,
        hypothesis_inf=report.hypothesis_extremum.value,
        hypothesis_margin=report.hypothesis_margin,
        conclusion_sup_arg=report.conclusion_sup_arg.value,
        arcsin_k=math.asin(k),
        arcsin_k_max=math.asin(k_max),
        sector_bound=math.pi / 4,
    )
    rec.notes.append(
        f"declared A = {EXAMPLE_DECLARED_A:.12g} is below the sampled infimum "
        f"{rec.numerical_A:.12g}; the threshold uses the declared value"
    )
    if abs(rec.chain_margin) <= tolerance:
        rec.notes.append("boundary case: the coefficient bound is attained, so the "
                         "triangle-inequality chain meets the threshold with equality")
    if rec.hypothesis_margin - rec.chain_margin > tolerance:
        rec.notes.append(
            f"sampled hypothesis margin {rec.hypothesis_margin:.6g} exceeds the chain margin "
            f"{rec.chain_margin:.6g}: the chain bound is not attained on the disk"
        )
    return report, rec


# --------------------------------------------------------------------------
# sharpness


@dataclass(frozen=True)
class SharpnessRow:
    parameter: float
    hypothesis_margin: float | None
    conclusion_margin: float | None
    verdict: str


def sharpness_probe(theorem_id, make_function, values, grid=None, **check_kwargs):
    """Margins of ``theorem_id`` along a one-parameter family ``make_function(t)``."""
    rows = []
    for t in values:
        rep = check(theorem_id, make_function(t), grid, **check_kwargs)
        rows.append(SharpnessRow(float(t), rep.hypothesis_margin, rep.conclusion_margin, rep.verdict.value))
    return rows


def sharpness_consistent(rows) -> bool:
    """True when the conclusion margin is positive wherever the hypothesis margin is."""
    return all(
        r.conclusion_margin > 0
        for r in rows
        if r.hypothesis_margin is not None and r.hypothesis_margin > 0
    )


def example1_sweep(n: int, points: int = 41, grid=None, **check_kwargs):
    """T1 margins for ``1 + k z^n`` with ``k`` over ``(0, 2 k_max]``."""
    k_max = example1_k_max(n)
    ks = np.linspace(0, 2 * k_max, points)[1:]
    grid = grid or DiskGrid()
    A = a_of(EXAMPLE_G, EXAMPLE_ALPHA, grid, EXAMPLE_DECLARED_A)

    def make(k):
        return HClassFunction(PowerSeries([1.0] + [0.0] * (n - 1) + [k]), n)

    return sharpness_probe("T1", make, ks, grid, alpha=EXAMPLE_ALPHA, g=EXAMPLE_G, A=A, **check_kwargs)


def write_sharpness_csv(rows, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["parameter", "hypothesis_margin", "conclusion_margin", "verdict"])
        for r in rows:
            w.writerow([
                f"{r.parameter:.12g}",
                "" if r.hypothesis_margin is None else f"{r.hypothesis_margin:.12g}",
                "" if r.conclusion_margin is None else f"{r.conclusion_margin:.12g}",
                r.verdict,
            ])


# --------------------------------------------------------------------------
# non-subordinate family for the witness search


def touching_family(index_n: int, rotation: float, seed: int, count: int, terms: int = 2):
    """Polynomials ``e^{i alpha}(1 + s B(z))`` that leave the right half-plane.

    ``B`` has ``terms`` random coefficients starting at ``z^n`` and ``s`` is
    scaled past the point where ``Re h`` first reaches zero on the unit circle,
    so every instance is non-subordinate to the matching target.
    """
    center = complex(math.cos(rotation), math.sin(rotation))
    theta = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
    circle = np.exp(1j * theta)
    out = []
    for i in range(count):
        rng = instance_rng(seed, i)
        b = np.zeros(index_n + terms, dtype=complex)
        b[index_n:] = _disk_sample(rng, 1.0, terms)
        b[index_n] += np.exp(2j * np.pi * rng.random())  # keep the leading term dominant
        depth = -np.min(np.real(center * PowerSeries(b)(circle)))
        scale = math.cos(rotation) / depth * (1.25 + 2.0 * rng.random())
        coef = center * scale * b
        coef[0] = center
        out.append(PowerSeries(coef))
    return out

"""Closed-form thresholds and end-to-end checkers for the sector criteria.

Each ``check_*`` function samples a hypothesis functional over a
:class:`~starcert.disk.DiskGrid`, compares its extremum with the closed-form
threshold, then estimates ``sup |arg p|`` for the conclusion.  The result is
a :class:`TheoremReport` whose verdict is one of :class:`Verdict`.

Theorem identifiers:

========  =====================================================  =========
id        hypothesis                                             function
========  =====================================================  =========
T1/C1/C3  ``Re(p + g z p') > threshold``                         p
C2        same functional written through ``f`` (p = zf'/f)      f
T2/C4/C6  ``low < Im(p + z p'/p) < high``                        p
C5        ``low < Im(1 + z f''/f') < high``                      f
T3/C7/C9  ``|p + z p'/p - 1| < (n/2 + 1) |p| cos(alpha)``        p
C8        ``|z f''/f'| < (n/2 + 1) |z f'/f| sin(pi mu / 2)``     f
========  =====================================================  =========
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .disk import DEFAULT_REFINE_STEPS, DiskGrid, ExtremumEstimate, estimate_inf, estimate_sup, extrema, min_modulus
from .errors import DomainError, PreconditionError, ZeroEncounteredError
from .series import (
    HClassFunction,
    NormalizedFunction,
    PowerSeries,
    caratheodory_functional_t1,
    caratheodory_functional_t2,
    convexity_quotient,
    starlike_quotient,
)

CERT_TOL = 1e-7
MODULUS_TOL = 1e-7
A_BOUND_SLACK = 1e-9

P_THEOREMS = ("T1", "C1", "C3", "T2", "C4", "C6", "T3", "C7", "C9")
F_THEOREMS = ("C2", "C5", "C8")
THEOREM_IDS = ("T1", "C1", "C2", "C3", "T2", "C4", "C5", "C6", "T3", "C7", "C8", "C9")


class Verdict(str, Enum):
    CERTIFIED = "certified"
    HYPOTHESIS_FAILS = "hypothesis_fails"
    COUNTEREXAMPLE = "counterexample"
    PRECONDITION_FAILS = "precondition_fails"


@dataclass(frozen=True)
class SectorParam:
    """Opening data of a sector: ``alpha`` and the order ``mu = 1 - 2|alpha|/pi``."""

    alpha: float
    mu: float

    def __post_init__(self):
        if not abs(self.alpha) < math.pi / 2:
            raise DomainError(f"|alpha| must be < pi/2, got {self.alpha!r}")
        if not 0.0 < self.mu <= 1.0:
            raise DomainError(f"mu must lie in (0, 1], got {self.mu!r}")

    @classmethod
    def from_alpha(cls, alpha):
        alpha = float(alpha)
        return cls(alpha, 1.0 - 2.0 * abs(alpha) / math.pi)

    @classmethod
    def from_mu(cls, mu):
        mu = float(mu)
        if not 0.0 < mu <= 1.0:
            raise DomainError(f"mu must lie in (0, 1], got {mu!r}")
        return cls(0.5 * math.pi * (1.0 - mu), mu)

    @property
    def half_angle(self) -> float:
        """``(pi/2) mu``, the conclusion bound on ``|arg p|``."""
        return 0.5 * math.pi - abs(self.alpha)


def _alpha(alpha) -> float:
    if isinstance(alpha, SectorParam):
        return alpha.alpha
    alpha = float(alpha)
    if not abs(alpha) < math.pi / 2:
        raise DomainError(f"|alpha| must be < pi/2, got {alpha!r}")
    return alpha


def _mu(mu) -> float:
    if isinstance(mu, SectorParam):
        return mu.mu
    mu = float(mu)
    if not 0.0 < mu <= 1.0:
        raise DomainError(f"mu must lie in (0, 1], got {mu!r}")
    return mu


def _check_n(n):
    if int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    return int(n)


# --------------------------------------------------------------------------
# closed forms


def t1_threshold(n, A, alpha) -> float:
    """Lower bound that ``Re(p + g z p')`` must exceed."""
    n = _check_n(n)
    a = _alpha(alpha)
    if not A > 0:
        raise DomainError("A must be positive")
    c, s = math.cos(a), math.sin(a)
    return ((c + 2 * n * A) * s * s - n * n * A * A * c) / (2 * n * A)


def c1_threshold(n, A, mu) -> float:
    """``t1_threshold`` written in terms of the order ``mu``."""
    n = _check_n(n)
    m = _mu(mu)
    if not A > 0:
        raise DomainError("A must be positive")
    sm, cm = math.sin(0.5 * math.pi * m), math.cos(0.5 * math.pi * m)
    return ((sm + 2 * n * A) * cm * cm - n * n * A * A * sm) / (2 * n * A)


def c3_threshold(A, alpha) -> float:
    a = _alpha(alpha)
    if a < 0:
        raise DomainError("alpha must be >= 0 for the n = 1 form")
    return t1_threshold(1, A, a)


def t2_bounds(n, alpha) -> tuple[float, float]:
    """``(low, high)`` for ``Im(p + z p'/p)``; ``low < 0 < high``."""
    n = _check_n(n)
    a = _alpha(alpha)
    if a < 0:
        raise DomainError("alpha must be >= 0")
    c, s = math.cos(a), math.sin(a)
    root = math.sqrt(2 * n * c * c + n * n)
    return -(root + n * s) / c, (root - n * s) / c


def c4_bounds(n, mu) -> tuple[float, float]:
    n = _check_n(n)
    m = _mu(mu)
    sm, cm = math.sin(0.5 * math.pi * m), math.cos(0.5 * math.pi * m)
    root = math.sqrt(2 * n * sm * sm + n * n)
    return -(root + n * cm) / sm, (root - n * cm) / sm


def g1_profile(n, alpha, rho):
    """The rational profile in ``rho`` whose minimum over ``rho > 0`` is ``t2_bounds(...)[1]``."""
    n = _check_n(n)
    a = _alpha(alpha)
    rho = np.asarray(rho, dtype=float)
    if np.any(rho == 0):
        raise DomainError("sigma/rho singular at rho = 0")
    c, s = math.cos(a), math.sin(a)
    out = (rho * rho * (2 * c * c + n) - 2 * n * rho * s + n) / (2 * rho * c)
    return float(out) if out.ndim == 0 else out


def rho_star(n, alpha) -> float:
    n = _check_n(n)
    c = math.cos(_alpha(alpha))
    return math.sqrt(n / (2 * c * c + n))


def t3_factor(n, alpha) -> float:
    return (0.5 * _check_n(n) + 1.0) * math.cos(_alpha(alpha))


def c7_factor(n, mu) -> float:
    return (0.5 * _check_n(n) + 1.0) * math.sin(0.5 * math.pi * _mu(mu))


def t3_margin(p, n, alpha, z):
    """``(n/2 + 1)|p| cos(alpha) - |p + z p'/p - 1|``; positive where the hypothesis holds."""
    series = p.series if hasattr(p, "series") else p
    try:
        value = caratheodory_functional_t2(series, z)
    except ZeroEncounteredError as exc:
        raise PreconditionError(str(exc)) from exc
    out = t3_factor(n, alpha) * np.abs(series(z)) - np.abs(value - 1)
    return float(out) if np.ndim(out) == 0 else out


# --------------------------------------------------------------------------
# A


def a_integrand(g, alpha, absolute=True):
    """``Re(g) cos(alpha) - |Im(g) sin(alpha)|`` (or without the modulus)."""
    a = _alpha(alpha)
    c, s = math.cos(a), math.sin(a)

    def integrand(z):
        gz = g(z)
        im = np.imag(gz) * s
        return np.real(gz) * c - (np.abs(im) if absolute else im)

    return integrand


@dataclass(frozen=True)
class ALowerBound:
    """A declared positive lower bound of the ``g`` integrand infimum."""

    declared: float
    estimated_inf: ExtremumEstimate

    def __post_init__(self):
        if not self.declared > 0:
            raise DomainError("A must be positive")
        if self.declared > self.estimated_inf.value + A_BOUND_SLACK:
            raise DomainError(
                f"declared A = {self.declared!r} exceeds the sampled infimum "
                f"{self.estimated_inf.value!r}"
            )


def a_of(g, alpha, grid=None, declared=None, *, absolute=True, refine_steps=DEFAULT_REFINE_STEPS):
    est = estimate_inf(a_integrand(g, alpha, absolute), grid, refine_steps)
    if not est.value > 0:
        raise DomainError(f"integrand infimum A = {est.value:.6g} <= 0; criterion not applicable")
    return ALowerBound(est.value if declared is None else float(declared), est)


# --------------------------------------------------------------------------
# reports


@dataclass
class TheoremReport:
    theorem_id: str
    params: dict
    verdict: Verdict
    hypothesis_extremum: ExtremumEstimate | None = None
    hypothesis_margin: float | None = None
    threshold_low: float | None = None
    threshold_high: float | None = None
    conclusion_sup_arg: ExtremumEstimate | None = None
    conclusion_bound: float | None = None
    conclusion_margin: float | None = None
    boundary: bool = False
    auxiliary: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)


def decide(hypothesis_margin, conclusion_margin, tolerance=CERT_TOL):
    """Return ``(verdict, boundary)`` from the two signed margins."""
    if hypothesis_margin <= tolerance:
        return Verdict.HYPOTHESIS_FAILS, abs(hypothesis_margin) <= tolerance
    if conclusion_margin > tolerance:
        return Verdict.CERTIFIED, False
    if conclusion_margin < -tolerance:
        return Verdict.COUNTEREXAMPLE, False
    # Conclusion sits on its bound; no claim either way.
    return Verdict.HYPOTHESIS_FAILS, True


def _abs_arg(w):
    w = np.asarray(w, dtype=complex)
    # A zero of p leaves every sector: count it as |arg| = pi.
    return np.where(np.abs(w) < 1e-12, np.pi, np.abs(np.angle(w)))


def _precondition_report(theorem_id, params, reason, bound=None):
    return TheoremReport(
        theorem_id, params, Verdict.PRECONDITION_FAILS, conclusion_bound=bound, notes=[reason]
    )


def _as_h(p, n=None) -> HClassFunction:
    if isinstance(p, HClassFunction):
        if n is None or n == p.index_n:
            return p
        series = p.series
    else:
        series = p if isinstance(p, PowerSeries) else PowerSeries(p)
    try:
        if n is None:
            return HClassFunction.from_coefficients(series)
        return HClassFunction(series, _check_n(n))
    except DomainError as exc:
        raise PreconditionError(f"p is not in H[1,{n}]: {exc}") from exc


def _as_f(f, n=None) -> NormalizedFunction:
    if isinstance(f, NormalizedFunction):
        if n is None or n == f.index_n:
            return f
        series = f.series
    else:
        series = f if isinstance(f, PowerSeries) else PowerSeries(f)
    try:
        if n is None:
            return NormalizedFunction.from_coefficients(series)
        return NormalizedFunction(series, _check_n(n))
    except DomainError as exc:
        raise PreconditionError(f"f is not in A_{n}: {exc}") from exc


def _as_g(g):
    if g is None:
        return PowerSeries([1.0])
    if isinstance(g, PowerSeries) or callable(g):
        return g
    return PowerSeries(g)


def _conclusion(p_values_fn, bound, grid, refine_steps):
    est = estimate_sup(lambda z: _abs_arg(p_values_fn(z)), grid, refine_steps)
    return est, bound - est.value


def _finish(theorem_id, params, hyp, h_margin, low, high, concl, bound, c_margin, tolerance, aux=None, notes=None):
    verdict, boundary = decide(h_margin, c_margin, tolerance)
    notes = list(notes or [])
    if boundary:
        notes.append("inconclusive boundary case: a margin lies within the tolerance band")
    if verdict is Verdict.COUNTEREXAMPLE:
        notes.append("conclusion violated while the hypothesis holds: release-blocking")
    return TheoremReport(
        theorem_id,
        params,
        verdict,
        hypothesis_extremum=hyp,
        hypothesis_margin=float(h_margin),
        threshold_low=low,
        threshold_high=high,
        conclusion_sup_arg=concl,
        conclusion_bound=bound,
        conclusion_margin=float(c_margin),
        boundary=boundary,
        auxiliary=dict(aux or {}),
        notes=notes,
    )


def _nonvanishing(fn, grid, refine_steps, what):
    """Return ``(estimate, reason)``; ``reason`` is None when ``fn`` stays away from 0."""
    est = min_modulus(fn, grid, refine_steps)
    if est.value < MODULUS_TOL:
        return est, f"zero of {what} encountered near r={est.location.radius:.6g}, theta={est.location.angle:.6g}"
    return est, None


# --------------------------------------------------------------------------
# first criterion family


def _real_part_criterion(theorem_id, p, g, alpha, A, grid, n, tolerance, refine_steps, *, absolute, threshold_fn, params):
    grid = grid or DiskGrid()
    p = _as_h(p, n)
    g = _as_g(g)
    n = p.index_n
    bound = 0.5 * math.pi - abs(alpha)
    params = {"n": n, **params}
    if p.is_degenerate:
        return _precondition_report(theorem_id, params, "p is identically 1", bound)
    if isinstance(A, ALowerBound):
        bound_a = A
    else:
        try:
            bound_a = a_of(g, alpha, grid, A, absolute=absolute, refine_steps=refine_steps)
        except DomainError as exc:
            rep = TheoremReport(theorem_id, params, Verdict.HYPOTHESIS_FAILS, conclusion_bound=bound)
            rep.notes.append(str(exc))
            return rep
    params["A"] = bound_a.declared
    threshold = threshold_fn(n, bound_a.declared)
    hyp = estimate_inf(lambda z: np.real(caratheodory_functional_t1(p, g, z)), grid, refine_steps)
    concl, c_margin = _conclusion(p, bound, grid, refine_steps)
    return _finish(
        theorem_id, params, hyp, hyp.value - threshold, threshold, None, concl, bound, c_margin,
        tolerance, aux={"A_inf": bound_a.estimated_inf},
    )


def check_t1(p, g=None, alpha=0.0, A=None, grid=None, *, n=None, tolerance=CERT_TOL, refine_steps=DEFAULT_REFINE_STEPS):
    """Check ``Re(p + g z p') > t1_threshold`` and ``|arg p| < pi/2 - |alpha|``.

    ``A`` may be an :class:`ALowerBound`, a declared float (validated against
    the sampled infimum), or None to use the sampled infimum itself.  Passing
    ``n`` that disagrees with the coefficients of ``p`` raises
    :class:`PreconditionError`.
    """
    a = _alpha(alpha)
    sector = SectorParam.from_alpha(a)
    return _real_part_criterion(
        "T1", p, g, a, A, grid, n, tolerance, refine_steps, absolute=True,
        threshold_fn=lambda nn, aa: t1_threshold(nn, aa, a),
        params={"alpha": a, "mu": sector.mu},
    )


def check_c1(p, g=None, mu=1.0, A=None, grid=None, *, n=None, tolerance=CERT_TOL, refine_steps=DEFAULT_REFINE_STEPS):
    sector = SectorParam.from_mu(_mu(mu))
    return _real_part_criterion(
        "C1", p, g, sector.alpha, A, grid, n, tolerance, refine_steps, absolute=True,
        threshold_fn=lambda nn, aa: c1_threshold(nn, aa, sector.mu),
        params={"alpha": sector.alpha, "mu": sector.mu},
    )


def check_c3(p, g=None, alpha=0.0, A=None, grid=None, *, tolerance=CERT_TOL, refine_steps=DEFAULT_REFINE_STEPS):
    """The ``n = 1`` form; ``A`` uses the integrand without the modulus."""
    a = _alpha(alpha)
    if a < 0:
        raise PreconditionError("alpha must be >= 0 for the n = 1 form")
    return _real_part_criterion(
        "C3", p, g, a, A, grid, 1, tolerance, refine_steps, absolute=False,
        threshold_fn=lambda nn, aa: c3_threshold(aa, a),
        params={"alpha": a, "mu": SectorParam.from_alpha(a).mu},
    )


def check_c2(f, g=None, mu=1.0, A=None, grid=None, *, n=None, tolerance=CERT_TOL, refine_steps=DEFAULT_REFINE_STEPS):
    """First criterion applied to ``p = z f'/f``; conclusion is ``f`` strongly starlike of order ``mu``."""
    grid = grid or DiskGrid()
    f = _as_f(f, n)
    g = _as_g(g)
    sector = SectorParam.from_mu(_mu(mu))
    bound = 0.5 * math.pi * sector.mu
    params = {"n": f.index_n, "alpha": sector.alpha, "mu": sector.mu}
    aux, rep = _f_preconditions("C2", f, grid, refine_steps, params, bound)
    if rep:
        return rep
    if isinstance(A, ALowerBound):
        bound_a = A
    else:
        try:
            bound_a = a_of(g, sector.alpha, grid, A, refine_steps=refine_steps)
        except DomainError as exc:
            return TheoremReport("C2", params, Verdict.HYPOTHESIS_FAILS, conclusion_bound=bound, notes=[str(exc)])
    params["A"] = bound_a.declared
    threshold = c1_threshold(f.index_n, bound_a.declared, sector.mu)

    def functional(z):
        P = starlike_quotient(f, z)
        Q = convexity_quotient(f, z)
        return np.real(P + g(z) * P * (1 - P + Q))

    hyp = estimate_inf(functional, grid, refine_steps)
    concl, c_margin = _conclusion(lambda z: starlike_quotient(f, z), bound, grid, refine_steps)
    return _finish(
        "C2", params, hyp, hyp.value - threshold, threshold, None, concl, bound, c_margin, tolerance,
        aux={"A_inf": bound_a.estimated_inf, **aux},
    )


# --------------------------------------------------------------------------
# second criterion family


def _imag_part_criterion(theorem_id, p, low, high, bound, grid, tolerance, refine_steps, params):
    lo, hi = extrema(lambda z: np.imag(caratheodory_functional_t2(p, z)), grid, refine_steps)
    lower_gap, upper_gap = lo.value - low, high - hi.value
    hyp = lo if lower_gap <= upper_gap else hi
    concl, c_margin = _conclusion(p, bound, grid, refine_steps)
    return _finish(
        theorem_id, params, hyp, min(lower_gap, upper_gap), low, high, concl, bound, c_margin,
        tolerance, aux={"inf_im": lo, "sup_im": hi},
    )


def _zero_free_p(theorem_id, p, n, grid, refine_steps, params, bound):
    p = _as_h(p, n)
    params = {"n": p.index_n, **params}
    if p.is_degenerate:
        return p, params, None, _precondition_report(theorem_id, params, "p is identically 1", bound)
    est, reason = _nonvanishing(p, grid, refine_steps, "p")
    if reason:
        rep = _precondition_report(theorem_id, params, reason, bound)
        rep.auxiliary["min_modulus"] = est
        return p, params, est, rep
    return p, params, est, None


def check_t2(p, alpha=0.0, grid=None, *, n=None, tolerance=CERT_TOL, refine_steps=DEFAULT_REFINE_STEPS):
    """Check ``low < Im(p + z p'/p) < high`` and ``|arg p| < pi/2 - alpha`` (``alpha >= 0``)."""
    grid = grid or DiskGrid()
    a = _alpha(alpha)
    if a < 0:
        raise PreconditionError("alpha must be >= 0")
    bound = 0.5 * math.pi - a
    p, params, mod, rep = _zero_free_p("T2", p, n, grid, refine_steps, {"alpha": a, "mu": SectorParam.from_alpha(a).mu}, bound)
    if rep:
        return rep
    low, high = t2_bounds(p.index_n, a)
    rep = _imag_part_criterion("T2", p, low, high, bound, grid, tolerance, refine_steps, params)
    rep.auxiliary["min_modulus"] = mod
    return rep


def check_c4(p, mu=1.0, grid=None, *, n=None, tolerance=CERT_TOL, refine_steps=DEFAULT_REFINE_STEPS):
    grid = grid or DiskGrid()
    sector = SectorParam.from_mu(_mu(mu))
    bound = 0.5 * math.pi * sector.mu
    p, params, mod, rep = _zero_free_p("C4", p, n, grid, refine_steps, {"alpha": sector.alpha, "mu": sector.mu}, bound)
    if rep:
        return rep
    low, high = c4_bounds(p.index_n, sector.mu)
    rep = _imag_part_criterion("C4", p, low, high, bound, grid, tolerance, refine_steps, params)
    rep.auxiliary["min_modulus"] = mod
    return rep


def check_c6(p, alpha=0.0, grid=None, *, tolerance=CERT_TOL, refine_steps=DEFAULT_REFINE_STEPS):
    rep = check_t2(p, alpha, grid, n=1, tolerance=tolerance, refine_steps=refine_steps)
    rep.theorem_id = "C6"
    return rep


def _f_preconditions(theorem_id, f, grid, refine_steps, params, bound):
    if f.is_degenerate:
        return None, _precondition_report(theorem_id, params, "zf'/f is identically 1", bound)
    fz_est, reason = _nonvanishing(f.series.shift_down(), grid, refine_steps, "f")
    aux = {"min_abs_f_over_z": fz_est}
    if reason is None:
        aux["min_abs_fprime"], reason = _nonvanishing(f.series.derivative(), grid, refine_steps, "f'")
    if reason:
        rep = _precondition_report(theorem_id, params, reason, bound)
        rep.auxiliary.update(aux)
        return aux, rep
    return aux, None


def check_c5(f, mu=1.0, grid=None, *, n=None, tolerance=CERT_TOL, refine_steps=DEFAULT_REFINE_STEPS):
    """Check ``low < Im(1 + z f''/f') < high``; conclusion ``|arg(z f'/f)| < (pi/2) mu``.

    Requires ``f/z`` and ``f'`` to be zero-free on the grid, so that
    ``z f'/f`` is defined and nonvanishing.
    """
    grid = grid or DiskGrid()
    f = _as_f(f, n)
    sector = SectorParam.from_mu(_mu(mu))
    bound = 0.5 * math.pi * sector.mu
    params = {"n": f.index_n, "alpha": sector.alpha, "mu": sector.mu}
    aux, rep = _f_preconditions("C5", f, grid, refine_steps, params, bound)
    if rep:
        return rep
    low, high = c4_bounds(f.index_n, sector.mu)
    lo, hi = extrema(lambda z: np.imag(convexity_quotient(f, z)), grid, refine_steps)
    lower_gap, upper_gap = lo.value - low, high - hi.value
    hyp = lo if lower_gap <= upper_gap else hi
    concl, c_margin = _conclusion(lambda z: starlike_quotient(f, z), bound, grid, refine_steps)
    aux.update(inf_im=lo, sup_im=hi)
    return _finish("C5", params, hyp, min(lower_gap, upper_gap), low, high, concl, bound, c_margin, tolerance, aux=aux)


# --------------------------------------------------------------------------
# third criterion family


def _modulus_criterion(theorem_id, p, factor, bound, grid, tolerance, refine_steps, params, mod):
    def margin(z):
        return factor * np.abs(p(z)) - np.abs(caratheodory_functional_t2(p, z) - 1)

    hyp = estimate_inf(margin, grid, refine_steps)
    concl, c_margin = _conclusion(p, bound, grid, refine_steps)
    return _finish(
        theorem_id, params, hyp, hyp.value, None, factor, concl, bound, c_margin, tolerance,
        aux={"min_modulus": mod},
    )


def check_t3(p, alpha=0.0, grid=None, *, n=None, tolerance=CERT_TOL, refine_steps=DEFAULT_REFINE_STEPS):
    """Check ``|p + z p'/p - 1| < (n/2 + 1)|p| cos(alpha)`` and ``|arg p| < pi/2 - |alpha|``."""
    grid = grid or DiskGrid()
    a = _alpha(alpha)
    bound = 0.5 * math.pi - abs(a)
    p, params, mod, rep = _zero_free_p("T3", p, n, grid, refine_steps, {"alpha": a, "mu": SectorParam.from_alpha(a).mu}, bound)
    if rep:
        return rep
    return _modulus_criterion("T3", p, t3_factor(p.index_n, a), bound, grid, tolerance, refine_steps, params, mod)


def check_c7(p, mu=1.0, grid=None, *, n=None, tolerance=CERT_TOL, refine_steps=DEFAULT_REFINE_STEPS):
    grid = grid or DiskGrid()
    sector = SectorParam.from_mu(_mu(mu))
    bound = 0.5 * math.pi * sector.mu
    p, params, mod, rep = _zero_free_p("C7", p, n, grid, refine_steps, {"alpha": sector.alpha, "mu": sector.mu}, bound)
    if rep:
        return rep
    return _modulus_criterion("C7", p, c7_factor(p.index_n, sector.mu), bound, grid, tolerance, refine_steps, params, mod)


def check_c8(f, mu=1.0, grid=None, *, n=None, tolerance=CERT_TOL, refine_steps=DEFAULT_REFINE_STEPS):
    """Check ``|z f''/f'| < (n/2 + 1)|z f'/f| sin(pi mu / 2)``; conclusion ``f`` in STS(mu)."""
    grid = grid or DiskGrid()
    f = _as_f(f, n)
    sector = SectorParam.from_mu(_mu(mu))
    bound = 0.5 * math.pi * sector.mu
    params = {"n": f.index_n, "alpha": sector.alpha, "mu": sector.mu}
    aux, rep = _f_preconditions("C8", f, grid, refine_steps, params, bound)
    if rep:
        return rep
    factor = c7_factor(f.index_n, sector.mu)

    def margin(z):
        return factor * np.abs(starlike_quotient(f, z)) - np.abs(convexity_quotient(f, z))

    hyp = estimate_inf(margin, grid, refine_steps)
    concl, c_margin = _conclusion(lambda z: starlike_quotient(f, z), bound, grid, refine_steps)
    return _finish("C8", params, hyp, hyp.value, None, factor, concl, bound, c_margin, tolerance, aux=aux)


def check_c9(p, alpha=0.0, grid=None, *, tolerance=CERT_TOL, refine_steps=DEFAULT_REFINE_STEPS):
    a = _alpha(alpha)
    if a < 0:
        raise PreconditionError("alpha must be >= 0 for the n = 1 form")
    rep = check_t3(p, a, grid, n=1, tolerance=tolerance, refine_steps=refine_steps)
    rep.theorem_id = "C9"
    return rep


CHECKERS = {
    "T1": check_t1, "C1": check_c1, "C2": check_c2, "C3": check_c3,
    "T2": check_t2, "C4": check_c4, "C5": check_c5, "C6": check_c6,
    "T3": check_t3, "C7": check_c7, "C8": check_c8, "C9": check_c9,
}

_USES_G = {"T1", "C1", "C2", "C3"}
_USES_MU = {"C1", "C2", "C4", "C5", "C7", "C8"}


def check(theorem_id, fn, grid=None, *, alpha=None, mu=None, g=None, A=None, n=None,
          tolerance=CERT_TOL, refine_steps=DEFAULT_REFINE_STEPS):
    """Dispatch to the checker for ``theorem_id`` with the parameters it uses.

    The sector may be given as ``alpha`` or ``mu`` for any theorem; it is
    converted to the form the theorem is stated in.
    """
    tid = theorem_id.upper()
    if tid not in CHECKERS:
        raise DomainError(f"unknown theorem id {theorem_id!r}")
    if tid in _USES_MU:
        sector_kw = {"mu": mu if mu is not None else SectorParam.from_alpha(alpha or 0.0).mu}
    else:
        if alpha is None:
            alpha = SectorParam.from_mu(mu).alpha if mu is not None else 0.0
        sector_kw = {"alpha": alpha}
    kwargs = dict(grid=grid, tolerance=tolerance, refine_steps=refine_steps, **sector_kw)
    if tid in _USES_G:
        kwargs.update(g=g, A=A)
    if tid not in {"C3", "C6", "C9"}:
        kwargs["n"] = n
    return CHECKERS[tid](fn, **kwargs)

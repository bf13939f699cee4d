"""Half-plane subordination and boundary-touch witnesses.

The targets are the rotated Cayley maps

    q(z) = (e + conj(e) z) / (1 - z),    e = exp(+i alpha) or exp(-i alpha),

which send the unit disk onto the right half-plane with ``q(0) = e``.  When
``h(0) = q(0)`` and ``h`` leaves the half-plane, :func:`mm_witness` locates
the first-exit point ``z0`` together with the boundary preimage ``zeta0``
and the real multiplier ``m`` in ``z0 h'(z0) = m zeta0 q'(zeta0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .disk import DEFAULT_REFINE_STEPS, DiskGrid, ExtremumEstimate, estimate_inf
from .errors import DomainError, TouchNotIsolatedError, WitnessRejectedError
from .series import DiskPoint, PowerSeries, as_complex, polar_to_complex

POLE_TOL = 1e-12
CENTER_TOL = 1e-12
EXCLUDED_POINT_TOL = 1e-6
SIGMA_TOL = 1e-8


@dataclass(frozen=True)
class RotatedHalfPlaneTarget:
    rotation: float
    orientation: str = "plus"

    def __post_init__(self):
        if not abs(self.rotation) < math.pi / 2:
            raise DomainError(f"|rotation| must be < pi/2, got {self.rotation!r}")
        if self.orientation not in ("plus", "minus"):
            raise DomainError(f"orientation must be 'plus' or 'minus', got {self.orientation!r}")

    @property
    def center(self) -> complex:
        sign = 1 if self.orientation == "plus" else -1
        return complex(math.cos(self.rotation), sign * math.sin(self.rotation))

    def __call__(self, z):
        return target_eval(self, z)

    def derivative(self):
        return lambda z: target_derivative(self, z)

    def inverse(self, w):
        return target_inverse(self, w)

    def sigma(self, rho):
        """Closed form of ``zeta q'(zeta)`` at ``zeta = q^{-1}(i rho)``."""
        if self.orientation == "plus":
            return sigma1(rho, self.rotation)
        return sigma2(rho, self.rotation)


def target_eval(q: RotatedHalfPlaneTarget, z):
    z = as_complex(z)
    if np.any(np.abs(1 - z) < POLE_TOL):
        raise DomainError("pole of the target at z = 1")
    e = q.center
    return (e + e.conjugate() * z) / (1 - z)


def target_derivative(q: RotatedHalfPlaneTarget, z):
    z = as_complex(z)
    if np.any(np.abs(1 - z) < POLE_TOL):
        raise DomainError("pole of the target at z = 1")
    return 2 * math.cos(q.rotation) / (1 - z) ** 2


def target_inverse(q: RotatedHalfPlaneTarget, w):
    """``(w - e) / (w + conj(e))``; imaginary ``w`` lands on the unit circle."""
    w = as_complex(w)
    e = q.center
    den = w + e.conjugate()
    if np.any(np.abs(den) < POLE_TOL):
        raise DomainError("inverse singular")
    return (w - e) / den


def sigma1(rho, alpha):
    """``-(rho^2 - 2 rho sin(alpha) + 1) / (2 cos(alpha))``.

    The numerator is evaluated as ``(rho - sin)^2 + cos^2``, which is
    strictly positive and avoids cancellation when ``|alpha|`` nears pi/2.
    """
    c, s = math.cos(alpha), math.sin(alpha)
    rho = np.asarray(rho, dtype=float)
    out = -((rho - s) ** 2 + c * c) / (2 * c)
    return float(out) if out.ndim == 0 else out


def sigma2(rho, alpha):
    c, s = math.cos(alpha), math.sin(alpha)
    rho = np.asarray(rho, dtype=float)
    out = -((rho + s) ** 2 + c * c) / (2 * c)
    return float(out) if out.ndim == 0 else out


def rotate(p, alpha, orientation="plus"):
    """``exp(+-i alpha) p`` as a power series, the function tested against ``q``."""
    series = p.series if hasattr(p, "series") else p
    return series * RotatedHalfPlaneTarget(alpha, orientation).center


class SchwarzComposition:
    """``q(c z^m)`` for ``|c| < 1``: subordinate to ``q`` by construction."""

    def __init__(self, target: RotatedHalfPlaneTarget, c: complex, power: int = 1):
        if not abs(c) < 1:
            raise DomainError(f"|c| must be < 1, got {abs(c)!r}")
        if power < 1:
            raise DomainError("power must be >= 1")
        self.target = target
        self.c = complex(c)
        self.power = int(power)

    def __repr__(self):
        return f"SchwarzComposition({self.target!r}, c={self.c!r}, power={self.power})"

    def __call__(self, z):
        z = as_complex(z)
        return target_eval(self.target, self.c * z**self.power)

    def derivative(self):
        def d(z):
            z = as_complex(z)
            m = self.power
            return target_derivative(self.target, self.c * z**m) * self.c * m * z ** (m - 1)

        return d


class SubordinationCheck(NamedTuple):
    subordinate: bool
    margin: float
    estimate: ExtremumEstimate


def _check_center(h, q):
    h0 = complex(h(0.0))
    if abs(h0 - q.center) > CENTER_TOL:
        raise DomainError(f"subordination undefined: centers differ (h(0) = {h0!r}, q(0) = {q.center!r})")


def is_subordinate_halfplane(h, q: RotatedHalfPlaneTarget, grid=None, refine_steps=DEFAULT_REFINE_STEPS):
    """Sampled test of ``h < q``: true iff ``inf Re h > 0`` over the grid."""
    _check_center(h, q)
    est = estimate_inf(lambda z: np.real(h(z)), grid, refine_steps)
    return SubordinationCheck(est.value > 0, est.value, est)


@dataclass(frozen=True)
class Witness:
    z0: DiskPoint
    zeta0: complex
    rho: float
    sigma: float
    m: float
    residual: float


def _ray_root(h, theta, radii):
    """Smallest sampled root of ``Re h`` on the ray at ``theta``, or None."""
    vals = np.real(h(polar_to_complex(radii, theta)))
    hits = np.flatnonzero(vals <= 0)
    if hits.size == 0 or hits[0] == 0:
        return None
    i = int(hits[0])
    if vals[i] == 0:
        return float(radii[i])

    def re_h(r):
        return float(np.real(h(polar_to_complex(r, theta))))

    return brentq(re_h, float(radii[i - 1]), float(radii[i]), xtol=1e-16, rtol=1e-15, maxiter=200)


def _first_exit_angle(vals, grid):
    """Angle whose interpolated first exit radius is smallest."""
    neg = vals <= 0
    has = neg.any(axis=0)
    first = np.argmax(neg, axis=0)
    radii = grid.radii
    est = np.full(grid.angular_count, np.inf)
    cols = np.flatnonzero(has & (first > 0))
    i = first[cols]
    v_in, v_out = vals[i - 1, cols], vals[i, cols]
    frac = v_in / (v_in - v_out)
    est[cols] = radii[i - 1] + frac * (radii[i] - radii[i - 1])
    if not np.isfinite(est).any():
        return None
    return float(grid.angles[int(np.argmin(est))])


def _tangency_angle(h, dh, theta0, step, radii):
    """Refine the exit angle to where ``Im(z h'(z)) = 0`` on the exit curve."""

    def root(theta):
        return _ray_root(h, theta, radii)

    def tangential(theta):
        r = root(theta)
        if r is None:
            return None
        z = complex(polar_to_complex(r, theta))
        return float(np.imag(z * complex(dh(z))))

    f0 = tangential(theta0)
    if f0 is None:
        raise TouchNotIsolatedError(f"no sign change of Re h along the ray at theta={theta0:.6g}")
    if f0 == 0:
        return theta0
    # The exit radius decreases in the direction where the tangential term is positive.
    direction = 1.0 if f0 > 0 else -1.0
    prev, fprev = theta0, f0
    for k in range(1, 4 * int(math.ceil(math.pi / step)) + 1):
        theta = theta0 + direction * k * step
        fk = tangential(theta)
        if fk is None:
            break
        if fk == 0:
            return theta
        if (fk > 0) != (fprev > 0):
            lo, hi = sorted((prev, theta))
            return brentq(lambda t: tangential(t), lo, hi, xtol=1e-15, rtol=1e-15, maxiter=200)
        prev, fprev = theta, fk
    # No clean sign change: fall back to minimising the exit radius directly.
    lo, hi = theta0 - 2 * step, theta0 + 2 * step

    def radius(theta):
        r = root(theta)
        return r if r is not None else 2.0

    res = minimize_scalar(radius, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13})
    return float(res.x)


def mm_witness(h, q: RotatedHalfPlaneTarget, grid=None, *, refine_steps=DEFAULT_REFINE_STEPS):
    """Locate the boundary-touch data for ``h`` leaving the half-plane ``q(U)``.

    ``h`` is a :class:`PowerSeries` or any callable exposing ``derivative()``.
    Returns None when ``h`` is subordinate to ``q`` on the sampled disk.
    """
    grid = grid or DiskGrid()
    _check_center(h, q)
    if isinstance(h, PowerSeries) and not np.any(np.abs(h.coefficients[1:]) > 1e-12):
        raise DomainError("h is constant")
    dh = h.derivative()

    vals = np.real(h(grid.points))
    if vals.min() > 0:
        est = estimate_inf(lambda z: np.real(h(z)), grid, refine_steps)
        if est.value > 0:
            return None
        raise TouchNotIsolatedError("exit region lies between grid samples; refine the grid")

    theta0 = _first_exit_angle(vals, grid)
    if theta0 is None:
        raise TouchNotIsolatedError("no radial sign change of Re h on the grid")
    theta = _tangency_angle(h, dh, theta0, 2 * math.pi / grid.angular_count, grid.radii)
    r0 = _ray_root(h, theta, grid.radii)
    if r0 is None:
        raise TouchNotIsolatedError(f"no sign change of Re h along the ray at theta={theta:.6g}")

    z0 = DiskPoint.polar(r0, theta)
    zc = z0.z
    hz = complex(h(zc))
    zeta0 = complex(target_inverse(q, hz))
    if abs(zeta0 - 1) < EXCLUDED_POINT_TOL:
        raise WitnessRejectedError("touch at excluded boundary point zeta = 1")
    rho = hz.imag
    sigma = complex(zeta0 * target_derivative(q, zeta0))
    closed = q.sigma(rho)
    if abs(sigma - closed) > SIGMA_TOL:
        raise WitnessRejectedError(f"zeta q'(zeta) = {sigma!r} disagrees with closed form {closed!r}")
    quotient = zc * complex(dh(zc)) / sigma
    return Witness(z0, zeta0, rho, sigma.real, quotient.real, quotient.imag)

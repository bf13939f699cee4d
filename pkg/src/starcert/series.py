"""Truncated complex power series and the composite functionals built on them.

Every analytic function handled by the toolkit is a :class:`PowerSeries`
``a_0 + a_1 z + ... + a_N z^N``.  Evaluation is vectorised: any callable here
accepts a :class:`DiskPoint`, a Python complex, or a complex ndarray.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ZeroEncounteredError

DEFAULT_ORDER = 64
ZERO_TOL = 1e-12
# Tolerance for class-membership checks on individual coefficients.
COEF_TOL = 1e-12


@dataclass(frozen=True)
class DiskPoint:
    """A point ``radius * exp(i * angle)`` of the open unit disk."""

    radius: float
    angle: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.radius < 1.0:
            raise DomainError(f"radius must lie in [0, 1), got {self.radius!r}")
        if not 0.0 <= self.angle < 2 * math.pi:
            raise DomainError(f"angle must lie in [0, 2*pi), got {self.angle!r}")

    @classmethod
    def polar(cls, radius, angle):
        """Build a point, reducing ``angle`` modulo 2*pi."""
        angle = float(angle) % (2 * math.pi)
        if angle >= 2 * math.pi:  # -tiny % 2pi can round up to 2pi
            angle = 0.0
        return cls(float(radius), angle)

    @classmethod
    def from_complex(cls, z):
        z = complex(z)
        return cls.polar(abs(z), math.atan2(z.imag, z.real))

    @property
    def z(self) -> complex:
        return complex(polar_to_complex(self.radius, self.angle))


def polar_to_complex(radius, angle):
    """The single conversion used for every grid and refinement sample."""
    return radius * np.exp(1j * np.asarray(angle, dtype=float))


def as_complex(z):
    """Normalise a DiskPoint / scalar / array argument to complex values."""
    if isinstance(z, DiskPoint):
        return z.z
    if np.isscalar(z):
        return complex(z)
    return np.asarray(z, dtype=complex)


class PowerSeries:
    """Truncated complex power series ``sum_{k<=N} a_k z^k``.

    Instances are immutable.  Arithmetic between series of different
    truncation orders keeps the larger order; products are truncated to it.
    """

    __slots__ = ("_coef",)

    def __init__(self, coefficients):
        if isinstance(coefficients, PowerSeries):
            coefficients = coefficients.coefficients
        coef = np.array(coefficients, dtype=complex).ravel()
        if coef.size == 0:
            raise DomainError("a power series needs at least one coefficient")
        coef.setflags(write=False)
        self._coef = coef

    @property
    def coefficients(self) -> np.ndarray:
        return self._coef

    @property
    def truncation_order(self) -> int:
        return self._coef.size - 1

    def __len__(self):
        return self._coef.size

    def coef(self, k) -> complex:
        """Coefficient of ``z^k`` (zero beyond the truncation order)."""
        return complex(self._coef[k]) if k < self._coef.size else 0j

    def __repr__(self):
        return f"PowerSeries({self._coef.tolist()!r})"

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._coef.shape == other._coef.shape and bool(
            np.all(self._coef == other._coef)
        )

    def __hash__(self):
        return hash(self._coef.tobytes())

    def __call__(self, z):
        return evaluate(self, z)

    def _padded(self, order):
        out = np.zeros(order + 1, dtype=complex)
        out[: self._coef.size] = self._coef
        return out

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries([other])
        order = max(self.truncation_order, other.truncation_order)
        return PowerSeries(self._padded(order) + other._padded(order))

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self._coef)

    def __sub__(self, other):
        return self + (-other if isinstance(other, PowerSeries) else -complex(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            order = max(self.truncation_order, other.truncation_order)
            return PowerSeries(np.convolve(self._coef, other._coef)[: order + 1])
        return PowerSeries(self._coef * complex(other))

    __rmul__ = __mul__

    def derivative(self) -> "PowerSeries":
        return derivative(self)

    def shift_down(self) -> "PowerSeries":
        """``(s(z) - a_0) / z``, the series with the constant term removed."""
        if self._coef.size == 1:
            return PowerSeries([0j])
        return PowerSeries(self._coef[1:])


def evaluate(s: PowerSeries, z):
    """Horner evaluation of ``s`` at ``z``; exact at ``z = 0``."""
    z = as_complex(z)
    coef = s.coefficients
    out = np.full(np.shape(z), coef[-1], dtype=complex)
    for c in coef[-2::-1]:
        out = out * z + c
    return complex(out) if np.ndim(out) == 0 else out


def derivative(s: PowerSeries) -> PowerSeries:
    coef = s.coefficients
    if coef.size == 1:
        return PowerSeries([0j])
    return PowerSeries(coef[1:] * np.arange(1, coef.size))


def arg_principal(w):
    """Principal argument in ``(-pi, pi]``.

    Raises :class:`DomainError` if any value is exactly zero.
    """
    w = np.asarray(w, dtype=complex)
    if np.any(w == 0):
        raise DomainError("argument undefined at w = 0")
    out = np.angle(w)
    # np.angle(-1 - 0j) is -pi; fold onto the closed end of the branch.
    out = np.where(out == -np.pi, np.pi, out)
    return float(out) if out.ndim == 0 else out


def _check_nonzero(values, what):
    if np.any(np.abs(values) < ZERO_TOL):
        raise ZeroEncounteredError(f"zero of {what} encountered")


@dataclass(frozen=True)
class HClassFunction:
    """A member of ``H[1, n]``: ``1 + a_n z^n + a_{n+1} z^{n+1} + ...``.

    Non-constancy is not enforced here; checkers report degenerate inputs
    through :attr:`is_degenerate` so that they surface as a verdict.
    """

    series: PowerSeries
    index_n: int = 1

    def __post_init__(self):
        if not isinstance(self.series, PowerSeries):
            object.__setattr__(self, "series", PowerSeries(self.series))
        if int(self.index_n) != self.index_n or self.index_n < 1:
            raise DomainError(f"index n must be an integer >= 1, got {self.index_n!r}")
        if abs(self.series.coef(0) - 1) > COEF_TOL:
            raise DomainError(f"H[1,n] requires a_0 = 1, got {self.series.coef(0)!r}")
        for k in range(1, self.index_n):
            if abs(self.series.coef(k)) > COEF_TOL:
                raise DomainError(
                    f"H[1,{self.index_n}] requires a_{k} = 0, got {self.series.coef(k)!r}"
                )

    @classmethod
    def from_coefficients(cls, coefficients, index_n=None):
        """Build from raw coefficients, inferring ``n`` when not given."""
        s = PowerSeries(coefficients)
        if index_n is None:
            index_n = leading_index(s)
        return cls(s, index_n)

    @property
    def is_degenerate(self) -> bool:
        """True when ``p == 1`` up to the coefficient tolerance."""
        tail = self.series.coefficients[self.index_n :]
        return not np.any(np.abs(tail) > COEF_TOL)

    def __call__(self, z):
        return evaluate(self.series, z)

    def derivative(self):
        return derivative(self.series)


@dataclass(frozen=True)
class NormalizedFunction:
    """A member of ``A_n``: ``z + a_{n+1} z^{n+1} + ...``."""

    series: PowerSeries
    index_n: int = 1

    def __post_init__(self):
        if not isinstance(self.series, PowerSeries):
            object.__setattr__(self, "series", PowerSeries(self.series))
        if int(self.index_n) != self.index_n or self.index_n < 1:
            raise DomainError(f"index n must be an integer >= 1, got {self.index_n!r}")
        s = self.series
        if abs(s.coef(0)) > COEF_TOL or abs(s.coef(1) - 1) > COEF_TOL:
            raise DomainError("A_n requires a_0 = 0 and a_1 = 1")
        for k in range(2, self.index_n + 1):
            if abs(s.coef(k)) > COEF_TOL:
                raise DomainError(f"A_{self.index_n} requires a_{k} = 0, got {s.coef(k)!r}")

    @classmethod
    def from_coefficients(cls, coefficients, index_n=None):
        s = PowerSeries(coefficients)
        if index_n is None:
            index_n = leading_index(s.shift_down())
        return cls(s, index_n)

    @property
    def is_degenerate(self) -> bool:
        """True when ``f == z``, i.e. ``zf'/f == 1``."""
        tail = self.series.coefficients[self.index_n + 1 :]
        return not np.any(np.abs(tail) > COEF_TOL)

    def __call__(self, z):
        return evaluate(self.series, z)


def leading_index(s: PowerSeries) -> int:
    """Smallest ``k >= 1`` with a non-negligible coefficient (1 if none)."""
    for k in range(1, len(s)):
        if abs(s.coef(k)) > COEF_TOL:
            return k
    return 1


def _series_of(fn):
    return fn.series if hasattr(fn, "series") else fn


def starlike_quotient(f, z):
    """``z f'(z) / f(z)``, computed as ``f'(z) / (f(z)/z)``.

    The quotient form removes the singularity at the origin, where the
    value is exactly 1.
    """
    s = _series_of(f)
    denom = evaluate(s.shift_down(), z)
    _check_nonzero(denom, "f")
    return evaluate(derivative(s), z) / denom


def convexity_quotient(f, z):
    """``z f''(z) / f'(z)``."""
    s = _series_of(f)
    d1 = derivative(s)
    zc = as_complex(z)
    denom = evaluate(d1, zc)
    _check_nonzero(denom, "f'")
    return zc * evaluate(derivative(d1), zc) / denom


def caratheodory_functional_t1(p, g, z):
    """``p(z) + g(z) z p'(z)``; its real part is bounded in the first criterion."""
    s = _series_of(p)
    zc = as_complex(z)
    return evaluate(s, zc) + evaluate(_series_of(g), zc) * zc * evaluate(derivative(s), zc)


def caratheodory_functional_t2(p, z):
    """``p(z) + z p'(z) / p(z)``."""
    s = _series_of(p)
    zc = as_complex(z)
    pz = evaluate(s, zc)
    _check_nonzero(pz, "p")
    return pz + zc * evaluate(derivative(s), zc) / pz

"""Sampling grids on the open unit disk and extremum estimation.

Objectives are elementwise callables on complex ndarrays (``z -> real``).
An estimate is the best grid sample, optionally improved by a compass
pattern search in polar coordinates started from that sample.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, SingularObjectiveError
from .series import DiskPoint, polar_to_complex

DEFAULT_RADIAL = 256
DEFAULT_ANGULAR = 1024
DEFAULT_MAX_RADIUS = 1 - 1e-4
DEFAULT_REFINE_STEPS = 60


@dataclass(frozen=True)
class DiskGrid:
    """Polar grid with radii clustered quadratically toward ``max_radius``.

    Scan order is radius-major ascending, then angle ascending, so the first
    grid point is the centre.
    """

    radial_count: int = DEFAULT_RADIAL
    angular_count: int = DEFAULT_ANGULAR
    max_radius: float = DEFAULT_MAX_RADIUS

    def __post_init__(self):
        if int(self.radial_count) != self.radial_count or self.radial_count < 2:
            raise DomainError(f"radial_count must be an integer >= 2, got {self.radial_count!r}")
        if int(self.angular_count) != self.angular_count or self.angular_count < 4:
            raise DomainError(f"angular_count must be an integer >= 4, got {self.angular_count!r}")
        if not 0.0 < self.max_radius < 1.0:
            raise DomainError(f"max_radius must lie in (0, 1), got {self.max_radius!r}")

    @cached_property
    def radii(self) -> np.ndarray:
        t = np.linspace(0.0, 1.0, self.radial_count)
        r = self.max_radius * (1.0 - (1.0 - t) ** 2)
        r[-1] = self.max_radius
        return r

    @cached_property
    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.angular_count) / self.angular_count

    @cached_property
    def points(self) -> np.ndarray:
        """Complex samples, shape ``(radial_count, angular_count)``."""
        pts = polar_to_complex(self.radii[:, None], self.angles[None, :])
        pts.setflags(write=False)
        return pts

    @property
    def size(self) -> int:
        return self.radial_count * self.angular_count

    def as_dict(self):
        return {
            "radial": self.radial_count,
            "angular": self.angular_count,
            "max_radius": self.max_radius,
        }


@dataclass(frozen=True)
class ExtremumEstimate:
    value: float
    location: DiskPoint
    refined: bool = False
    samples_used: int = 0


def _evaluate_grid(objective, grid):
    values = np.asarray(objective(grid.points), dtype=float)
    values = np.broadcast_to(values, grid.points.shape)
    bad = ~np.isfinite(values)
    if bad.any():
        i, j = np.unravel_index(np.argmax(bad), bad.shape)
        point = DiskPoint(float(grid.radii[i]), float(grid.angles[j]))
        raise SingularObjectiveError(
            f"objective singular on grid at r={point.radius:.6g}, theta={point.angle:.6g}",
            point,
        )
    return values


def _cell_steps(grid, i):
    radii = grid.radii
    lo = radii[i] - radii[i - 1] if i > 0 else 0.0
    hi = radii[i + 1] - radii[i] if i + 1 < radii.size else 0.0
    return max(lo, hi), 2 * np.pi / grid.angular_count


def _pattern_search(objective, r, t, value, dr, dt, rmax, steps):
    """Compass search on (radius, angle); returns (r, t, value, evaluations)."""
    used = 0
    two_pi = 2 * np.pi
    for _ in range(steps):
        cand_r = np.array([min(r + dr, rmax), max(r - dr, 0.0), r, r])
        cand_t = np.array([t, t, (t + dt) % two_pi, (t - dt) % two_pi])
        cand_t[cand_t >= two_pi] = 0.0
        vals = np.asarray(objective(polar_to_complex(cand_r, cand_t)), dtype=float)
        vals = np.where(np.isfinite(vals), vals, np.inf)
        used += 4
        k = int(np.argmin(vals))
        if vals[k] < value:
            r, t, value = float(cand_r[k]), float(cand_t[k]), float(vals[k])
        else:
            dr *= 0.5
            dt *= 0.5
    return r, t, value, used


def _infimum(objective, grid, refine_steps, values=None):
    if values is None:
        values = _evaluate_grid(objective, grid)
    # argmin returns the first minimum in scan order: smallest radius, then angle.
    flat = int(np.argmin(values))
    i, j = divmod(flat, grid.angular_count)
    r, t = float(grid.radii[i]), float(grid.angles[j])
    if i == 0:
        t = 0.0
    value = float(values[i, j])
    used = grid.size
    if refine_steps > 0:
        dr, dt = _cell_steps(grid, i)
        r, t, value, extra = _pattern_search(
            objective, r, t, value, dr, dt, grid.max_radius, refine_steps
        )
        used += extra
    return ExtremumEstimate(value, DiskPoint(r, t), refine_steps > 0, used)


def estimate_inf(objective, grid: DiskGrid | None = None, refine_steps: int = DEFAULT_REFINE_STEPS):
    """Estimate ``inf objective`` over the sampled disk.

    Raises :class:`SingularObjectiveError` if the objective is non-finite at
    any grid point.
    """
    return _infimum(objective, grid or DiskGrid(), refine_steps)


def estimate_sup(objective, grid: DiskGrid | None = None, refine_steps: int = DEFAULT_REFINE_STEPS):
    """Estimate ``sup objective``; defined as ``-estimate_inf(-objective)``."""
    est = _infimum(lambda z: -np.asarray(objective(z), dtype=float), grid or DiskGrid(), refine_steps)
    return ExtremumEstimate(-est.value, est.location, est.refined, est.samples_used)


def extrema(objective, grid: DiskGrid | None = None, refine_steps: int = DEFAULT_REFINE_STEPS):
    """Both ``(inf, sup)`` estimates from a single grid evaluation."""
    grid = grid or DiskGrid()
    values = _evaluate_grid(objective, grid)
    lo = _infimum(objective, grid, refine_steps, values)
    neg = _infimum(lambda z: -np.asarray(objective(z), dtype=float), grid, refine_steps, -values)
    hi = ExtremumEstimate(-neg.value, neg.location, neg.refined, neg.samples_used)
    return lo, hi


def min_modulus(p, grid: DiskGrid | None = None, refine_steps: int = DEFAULT_REFINE_STEPS):
    """Estimate ``inf |p(z)|``; a near-zero value flags a zero of ``p``."""
    return estimate_inf(lambda z: np.abs(p(z)), grid, refine_steps)


__all__ = [
    "DiskGrid",
    "ExtremumEstimate",
    "estimate_inf",
    "estimate_sup",
    "extrema",
    "min_modulus",
    "DEFAULT_RADIAL",
    "DEFAULT_ANGULAR",
    "DEFAULT_MAX_RADIUS",
    "DEFAULT_REFINE_STEPS",
]

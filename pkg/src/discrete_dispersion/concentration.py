"""Lévy concentration function of finite discrete distributions.

``Q(eps)`` is the largest mass any closed interval of length ``eps`` can hold.
For a finite support the maximum is attained by a window whose left end is a
support point, so everything here reduces to sums over consecutive points.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .distributions import Distribution, DistributionError, Mass, lattice_info, lattice_pmf

FLOAT_EQ_TOL = 1e-9
_PAIR_LIMIT = 4_000_000


def distance_tol(*ds: Distribution) -> float:
    """Slack for comparing support distances that went through float arithmetic."""
    scale = max(max(abs(d.points[0]), abs(d.points[-1])) for d in ds)
    return 1e-11 * max(1.0, scale)


def _weights(d: Distribution):
    """(prefix sums, divisor) with integer prefixes for the exact backend."""
    if d.exact:
        w = np.array(d.counts, dtype=np.int64 if d.total < 2**62 else object)
        return np.concatenate([np.zeros(1, dtype=w.dtype), np.cumsum(w)]), d.total
    return np.concatenate([[0.0], np.cumsum(d.float_masses())]), None


def _as_mass(value, divisor) -> Mass:
    if divisor is None:
        return float(value)
    return Fraction(int(value), divisor)


@dataclass(frozen=True)
class StepFunction:
    """Right-continuous nondecreasing step function ``eps -> Q(eps)`` on ``[0, inf)``."""

    breakpoints: tuple[float, ...]
    values: tuple[Mass, ...]
    tol: float = 0.0

    def __post_init__(self):
        if len(self.breakpoints) != len(self.values) or not self.breakpoints:
            raise ValueError("breakpoints and values must be nonempty and aligned")
        if self.breakpoints[0] != 0:
            raise ValueError("the first breakpoint must be 0")

    def __call__(self, eps: float) -> Mass:
        if eps < 0:
            raise ValueError("eps must be nonnegative")
        k = bisect_right(self.breakpoints, eps + self.tol) - 1
        return self.values[k]

    def __len__(self):
        return len(self.breakpoints)

    def segments(self):
        """Yield ``(start, end, value)``; the last segment ends at ``inf``."""
        ends = self.breakpoints[1:] + (float("inf"),)
        yield from zip(self.breakpoints, ends, self.values)


@dataclass(frozen=True)
class DmSequence:
    """``d_m`` = best (m+1)-site window of x minus that of y, m = 0..m_max."""

    values: tuple[Mass, ...]
    step: float

    def __len__(self):
        return len(self.values)

    def __getitem__(self, m):
        return self.values[m]

    def signs(self) -> list[int]:
        tol = 0 if all(isinstance(v, Fraction) for v in self.values) else FLOAT_EQ_TOL
        return [0 if abs(v) <= tol else (1 if v > 0 else -1) for v in self.values]


def concentration_at(d: Distribution, eps: float) -> Mass:
    """Q(eps); ``eps = 0`` gives the right limit, the largest point mass."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    pts = np.asarray(d.points)
    prefix, div = _weights(d)
    right = np.searchsorted(pts, pts + eps + distance_tol(d), side="right")
    sums = prefix[right] - prefix[:-1]
    return _as_mass(sums.max(), div)


def _pair_step_function(d: Distribution) -> StepFunction:
    pts = np.asarray(d.points)
    prefix, div = _weights(d)
    i, j = np.triu_indices(len(pts))
    dist = pts[j] - pts[i]
    mass = prefix[j + 1] - prefix[i]
    order = np.argsort(dist, kind="stable")
    dist, mass = dist[order], mass[order]
    best = np.maximum.accumulate(mass)
    tol = distance_tol(d)
    # distances closer than tol are one breakpoint, located at the smallest
    starts = np.concatenate([[True], np.diff(dist) > tol])
    group_start = dist[np.maximum.accumulate(np.where(starts, np.arange(len(dist)), 0))]
    last_in_group = np.concatenate([starts[1:], [True]])
    gs, gv = group_start[last_in_group], best[last_in_group]
    bps, vals = [0.0], [gv[0]]
    for x, v in zip(gs[1:], gv[1:]):
        if v > vals[-1]:
            bps.append(float(x))
            vals.append(v)
    return StepFunction(tuple(bps), tuple(_as_mass(v, div) for v in vals), tol)


def _lattice_step_function(d: Distribution, step: float) -> StepFunction:
    bps, vals = [], []
    for m in range(int(round(d.support_range / step)) + 1):
        v = window_sup(d, m, step=step)
        if not vals or v > vals[-1]:
            bps.append(m * step)
            vals.append(v)
    return StepFunction(tuple(bps), tuple(vals), distance_tol(d))


def concentration_function(d: Distribution) -> StepFunction:
    """Q as a step function, keeping only the distances where it strictly grows."""
    n = len(d)
    if n * (n + 1) // 2 <= _PAIR_LIMIT:
        return _pair_step_function(d)
    info = lattice_info(d)
    if info is None:
        raise DistributionError(f"non-lattice support of {n} points is too large")
    return _lattice_step_function(d, info.step)


def _lattice_prefix(d: Distribution, step: float):
    pmf = lattice_pmf(d, step)
    if d.exact:
        counts = [int(m * d.total) for m in pmf]
        return np.concatenate([[0], np.cumsum(np.array(counts, dtype=object))]), d.total
    return np.concatenate([[0.0], np.cumsum(np.array(pmf, dtype=float))]), None


def window_sup(d: Distribution, m: int, *, step: Optional[float] = None) -> Mass:
    """Largest mass on ``m + 1`` consecutive lattice sites."""
    if m < 0 or int(m) != m:
        raise ValueError("m must be a nonnegative integer")
    if step is None:
        info = lattice_info(d)
        if info is None:
            raise DistributionError("window_sup needs a lattice distribution")
        step = info.step
    prefix, div = _lattice_prefix(d, step)
    sites = len(prefix) - 1
    width = min(int(m) + 1, sites)
    sums = prefix[width:] - prefix[: sites - width + 1]
    return _as_mass(max(sums), div)


def common_step(x: Distribution, y: Distribution) -> float:
    """Coarsest lattice step shared by both supports."""
    ix, iy = lattice_info(x), lattice_info(y)
    if ix is None or iy is None:
        raise DistributionError("both distributions must live on a lattice")
    if x.is_degenerate:
        return iy.step
    if y.is_degenerate:
        return ix.step
    ratio = ix.step / iy.step
    frac = Fraction(ratio).limit_denominator(1000)
    if abs(float(frac) - ratio) > 1e-9 * ratio:
        raise DistributionError("lattice steps are incommensurable")
    return ix.step / frac.numerator


def dm_sequence(x: Distribution, y: Distribution, m_max: int) -> DmSequence:
    """Window-supremum differences on the coarsest common lattice."""
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    step = common_step(x, y)
    px, dx = _lattice_prefix(x, step)
    py, dy = _lattice_prefix(y, step)

    def sups(prefix, div):
        sites = len(prefix) - 1
        out = []
        for m in range(m_max + 1):
            w = min(m + 1, sites)
            out.append(_as_mass(max(prefix[w:] - prefix[: sites - w + 1]), div))
        return out

    return DmSequence(tuple(a - b for a, b in zip(sups(px, dx), sups(py, dy))), step)

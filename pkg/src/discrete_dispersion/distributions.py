"""Finite-support discrete distributions.

Two numeric backends share one type: empirical data keep integer counts so
that every downstream comparison can run in exact rational arithmetic, while
parametric families carry floating masses plus the probability mass that was
dropped when an infinite tail was truncated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np
from scipy import stats

Mass = Union[Fraction, float]

DEFAULT_MAX_SUPPORT = 20_000
MASS_SUM_TOL = 1e-9
INVARIANT_TOL = 1e-12
# Largest denominator accepted when recognising commensurable gaps.
_LATTICE_MAX_DEN = 1000
_LATTICE_RTOL = 1e-9


class DistributionError(ValueError):
    """Raised for invalid distribution input or parameters."""


@dataclass(frozen=True)
class TailBudget:
    """Upper bound on the probability mass discarded by truncation."""

    max_deficit: float = 1e-12

    def __post_init__(self):
        if not 0.0 < self.max_deficit < 1.0:
            raise DistributionError("max_deficit must lie in (0, 1)")


@dataclass(frozen=True)
class LatticeInfo:
    origin: float
    step: float


@dataclass(frozen=True)
class Distribution:
    """A probability distribution on finitely many real points.

    ``masses`` holds :class:`fractions.Fraction` values for the exact backend
    (``counts``/``total`` are then set) and floats otherwise.
    """

    points: tuple[float, ...]
    masses: tuple[Mass, ...]
    tail_deficit: float = 0.0
    counts: Optional[tuple[int, ...]] = None
    total: Optional[int] = None
    max_support: int = field(default=DEFAULT_MAX_SUPPORT, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.points)
        if n == 0:
            raise DistributionError("a distribution needs at least one support point")
        if n != len(self.masses):
            raise DistributionError("points and masses differ in length")
        if n > self.max_support:
            raise DistributionError(
                f"support size {n} exceeds the configured cap of {self.max_support}"
            )
        if any(not math.isfinite(x) for x in self.points):
            raise DistributionError("support points must be finite")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise DistributionError("support points must be strictly increasing")
        if any(m <= 0 for m in self.masses):
            raise DistributionError("all masses must be strictly positive")
        if self.tail_deficit < 0:
            raise DistributionError("tail_deficit must be nonnegative")
        if self.counts is not None:
            if self.total != sum(self.counts) or self.tail_deficit != 0:
                raise DistributionError("inconsistent exact-counts representation")
        elif abs(math.fsum(self.masses) + self.tail_deficit - 1.0) > INVARIANT_TOL:
            raise DistributionError("masses plus tail deficit must sum to one")

    @property
    def exact(self) -> bool:
        return self.counts is not None

    @property
    def backend(self) -> str:
        return "exact-counts" if self.exact else "floating"

    @property
    def size(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def support_range(self) -> float:
        return self.points[-1] - self.points[0]

    @property
    def total_mass(self) -> Mass:
        """Mass actually represented, i.e. one minus the tail deficit."""
        if self.exact:
            return Fraction(1)
        return 1.0 - self.tail_deficit

    @property
    def is_degenerate(self) -> bool:
        return len(self.points) == 1

    def float_masses(self) -> np.ndarray:
        return np.array([float(m) for m in self.masses], dtype=float)

    def cdf_values(self) -> list[Mass]:
        """Cumulative masses F(x_1), ..., F(x_n) (exact when possible)."""
        if self.exact:
            acc, out = 0, []
            for c in self.counts:
                acc += c
                out.append(Fraction(acc, self.total))
            return out
        return list(np.cumsum(self.float_masses()))

    def cdf(self, t: float) -> Mass:
        k = int(np.searchsorted(self.points, t, side="right"))
        if k == 0:
            return Fraction(0) if self.exact else 0.0
        return self.cdf_values()[k - 1]

    def mean(self) -> float:
        return float(np.dot(self.points, self.float_masses()) / float(self.total_mass))


def _merge(points: Sequence[float], weights: Sequence) -> tuple[list[float], list]:
    acc: dict[float, object] = {}
    for x, w in zip(points, weights):
        x = float(x)
        acc[x] = acc[x] + w if x in acc else w
    keys = sorted(acc)
    return keys, [acc[k] for k in keys]


def make_distribution(
    points: Sequence[float],
    masses: Sequence[float],
    *,
    max_support: int = DEFAULT_MAX_SUPPORT,
) -> Distribution:
    """Floating-backend distribution; duplicate points are merged."""
    if len(points) == 0 or len(points) != len(masses):
        raise DistributionError("points and masses must be nonempty and of equal length")
    if any(not m > 0 for m in masses):
        raise DistributionError("all masses must be strictly positive")
    total = math.fsum(float(m) for m in masses)
    if abs(total - 1.0) > MASS_SUM_TOL:
        raise DistributionError(f"masses sum to {total!r}, not 1")
    pts, ms = _merge(points, [float(m) for m in masses])
    # Absorb the admissible rounding slack so the sum invariant is tight.
    ms = [m / total for m in ms]
    return Distribution(tuple(pts), tuple(ms), max_support=max_support)


def from_counts(
    pairs: Iterable[tuple[float, int]], *, max_support: int = DEFAULT_MAX_SUPPORT
) -> Distribution:
    """Exact-backend distribution from ``(value, count)`` pairs."""
    pairs = list(pairs)
    if not pairs:
        raise DistributionError("at least one (value, count) pair is required")
    for value, count in pairs:
        if isinstance(count, bool) or int(count) != count or count < 1:
            raise DistributionError(f"count for value {value!r} must be a positive integer")
    pts, cs = _merge([v for v, _ in pairs], [int(c) for _, c in pairs])
    return _exact(pts, cs, max_support)


def _exact(points, counts, max_support=DEFAULT_MAX_SUPPORT) -> Distribution:
    counts = [int(c) for c in counts]
    n = sum(counts)
    return Distribution(
        tuple(float(p) for p in points),
        tuple(Fraction(c, n) for c in counts),
        counts=tuple(counts),
        total=n,
        max_support=max_support,
    )


def degenerate(c: float) -> Distribution:
    return _exact([c], [1])


def from_sample(values: Iterable[float], **kw) -> Distribution:
    """Empirical distribution of a raw sample (exact backend)."""
    values = list(values)
    if not values:
        raise DistributionError("empty sample")
    return from_counts([(v, 1) for v in values], **kw)


# ---------------------------------------------------------------- families

def _check_prob(name, p, *, closed_low=False, closed_high=False):
    lo_ok = p >= 0 if closed_low else p > 0
    hi_ok = p <= 1 if closed_high else p < 1
    if not (lo_ok and hi_ok):
        raise DistributionError(f"{name}: probability parameter {p!r} out of range")


def _check_positive(name, *vals):
    for v in vals:
        if not v > 0:
            raise DistributionError(f"{name}: parameter {v!r} must be positive")


def _from_pmf(points, masses, deficit, max_support) -> Distribution:
    keep = [(x, m) for x, m in zip(points, masses) if m > 0]
    pts = tuple(float(x) for x, _ in keep)
    ms = tuple(float(m) for _, m in keep)
    dropped = 1.0 - math.fsum(ms) - deficit
    if abs(dropped) > INVARIANT_TOL:
        # pmf rounding; fold the residue into the largest mass
        i = int(np.argmax(ms))
        ms = ms[:i] + (ms[i] + dropped,) + ms[i + 1:]
    return Distribution(pts, ms, tail_deficit=float(deficit), max_support=max_support)


def _truncated(rv, lower: int, budget: TailBudget, max_support: int) -> Distribution:
    """Support ``lower, lower+1, ...`` cut at the first k with P(X > k) <= budget."""
    upper = int(rv.isf(budget.max_deficit))
    while rv.sf(upper) > budget.max_deficit:
        upper += 1
    while upper > lower and rv.sf(upper - 1) <= budget.max_deficit:
        upper -= 1
    if upper - lower + 1 > max_support:
        raise DistributionError(
            f"truncated support of {upper - lower + 1} points exceeds the cap of {max_support}"
        )
    ks = np.arange(lower, upper + 1)
    return _from_pmf(ks, rv.pmf(ks), float(rv.sf(upper)), max_support)


def bernoulli(p: float) -> Distribution:
    _check_prob("bernoulli", p, closed_low=True, closed_high=True)
    return _from_pmf([0, 1], [1 - p, p], 0.0, DEFAULT_MAX_SUPPORT)


def binomial(n: int, p: float) -> Distribution:
    if int(n) != n or n < 0:
        raise DistributionError("binomial: n must be a nonnegative integer")
    _check_prob("binomial", p, closed_low=True, closed_high=True)
    ks = np.arange(int(n) + 1)
    return _from_pmf(ks, stats.binom.pmf(ks, int(n), p), 0.0, DEFAULT_MAX_SUPPORT)


def poisson(lam: float, budget: TailBudget = TailBudget(), max_support=DEFAULT_MAX_SUPPORT):
    _check_positive("poisson", lam)
    return _truncated(stats.poisson(lam), 0, budget, max_support)


def neg_binomial(r: float, p: float, budget: TailBudget = TailBudget(),
                 max_support=DEFAULT_MAX_SUPPORT):
    """Number of failures before the ``r``-th success, success probability ``p``."""
    _check_positive("neg_binomial", r)
    _check_prob("neg_binomial", p, closed_high=True)
    return _truncated(stats.nbinom(r, p), 0, budget, max_support)


def geometric(p: float, budget: TailBudget = TailBudget(), max_support=DEFAULT_MAX_SUPPORT):
    """Number of trials up to and including the first success (support 1, 2, ...)."""
    _check_prob("geometric", p, closed_high=True)
    return _truncated(stats.geom(p), 1, budget, max_support)


def logarithmic(p: float, budget: TailBudget = TailBudget(), max_support=DEFAULT_MAX_SUPPORT):
    _check_prob("logarithmic", p)
    return _truncated(stats.logser(p), 1, budget, max_support)


def hermite(a: float, b: float, budget: TailBudget = TailBudget(),
            max_support=DEFAULT_MAX_SUPPORT):
    """Law of U + 2V for independent U ~ Poisson(a), V ~ Poisson(b)."""
    _check_positive("hermite", a, b)
    half = TailBudget(budget.max_deficit / 2)
    u = poisson(a, half, max_support)
    v = affine(poisson(b, half, max_support), 2, 0)
    return convolve(u, v, max_support=max_support)


def discrete_uniform(a: float, b: float, step: float = 1) -> Distribution:
    """Equal masses on a, a + step, ..., up to b (exact backend)."""
    if not step > 0 or b < a:
        raise DistributionError("discrete_uniform: need step > 0 and b >= a")
    n = int(math.floor((b - a) / step + 1e-9)) + 1
    return _exact([a + k * step for k in range(n)], [1] * n)


FAMILIES: dict[str, Callable[..., Distribution]] = {
    "bernoulli": bernoulli,
    "binomial": binomial,
    "poisson": poisson,
    "neg_binomial": neg_binomial,
    "geometric": geometric,
    "logarithmic": logarithmic,
    "hermite": hermite,
    "discrete_uniform": discrete_uniform,
}
_TRUNCATED = {"poisson", "neg_binomial", "geometric", "logarithmic", "hermite"}


def family(name: str, params: Sequence[float], budget: TailBudget = TailBudget(),
           max_support: int = DEFAULT_MAX_SUPPORT) -> Distribution:
    try:
        ctor = FAMILIES[name]
    except KeyError:
        raise DistributionError(f"unknown family {name!r}") from None
    try:
        if name in _TRUNCATED:
            return ctor(*params, budget=budget, max_support=max_support)
        return ctor(*params)
    except TypeError as exc:
        raise DistributionError(f"{name}: bad parameter list {tuple(params)}") from exc


# ---------------------------------------------------------- transformations

def _rebuild(d: Distribution, points: Sequence[float], order: Sequence[int]) -> Distribution:
    pts = tuple(float(points[i]) for i in order)
    if d.exact:
        cs = [d.counts[i] for i in order]
        return Distribution(pts, tuple(Fraction(c, d.total) for c in cs),
                            counts=tuple(cs), total=d.total, max_support=d.max_support)
    return Distribution(pts, tuple(d.masses[i] for i in order),
                        tail_deficit=d.tail_deficit, max_support=d.max_support)


def affine(d: Distribution, a: float, b: float) -> Distribution:
    """Distribution of ``a * X + b``."""
    if a == 0:
        raise DistributionError("affine map needs a nonzero slope")
    new = [a * x + b for x in d.points]
    order = range(len(new)) if a > 0 else range(len(new) - 1, -1, -1)
    return _rebuild(d, new, list(order))


def map_monotone(d: Distribution, phi: Callable[[float], float]) -> Distribution:
    """Distribution of ``phi(X)`` for ``phi`` strictly monotone on the support."""
    img = [float(phi(x)) for x in d.points]
    diffs = [b - a for a, b in zip(img, img[1:])]
    if all(g > 0 for g in diffs):
        order = list(range(len(img)))
    elif all(g < 0 for g in diffs):
        order = list(range(len(img) - 1, -1, -1))
    else:
        raise DistributionError("map is not strictly monotone on the support")
    return _rebuild(d, img, order)


def convolve(x: Distribution, y: Distribution, *, max_support: int = DEFAULT_MAX_SUPPORT):
    """Distribution of X + Y for independent X and Y."""
    if len(x) * len(y) > 1000 * max_support:
        raise DistributionError("convolution too large for the configured support cap")
    sums = np.add.outer(np.asarray(x.points), np.asarray(y.points)).ravel()
    if x.exact and y.exact:
        w = np.multiply.outer(np.array(x.counts, dtype=object),
                              np.array(y.counts, dtype=object)).ravel()
        pts, cs = _merge(sums, w)
        return _exact(pts, cs, max_support)
    w = np.multiply.outer(x.float_masses(), y.float_masses()).ravel()
    pts, ms = _merge(sums, list(w))
    deficit = x.tail_deficit + y.tail_deficit
    return _from_pmf(pts, ms, deficit, max_support)


# ------------------------------------------------------------------ lattice

def lattice_info(d: Distribution) -> Optional[LatticeInfo]:
    """Coarsest lattice containing the support, or ``None`` if gaps are incommensurable."""
    if d.is_degenerate:
        return LatticeInfo(d.points[0], 1.0)
    gaps = np.diff(d.points)
    base = float(gaps.min())
    den = 1
    fracs = []
    for g in gaps:
        r = g / base
        f = Fraction(r).limit_denominator(_LATTICE_MAX_DEN)
        if abs(float(f) - r) > _LATTICE_RTOL * r:
            return None
        fracs.append(f)
        den = den * f.denominator // math.gcd(den, f.denominator)
    ks = [int(f * den) for f in fracs]
    step = base / den * reduce(math.gcd, ks)
    if d.support_range / step > d.max_support * 10:
        return None
    return LatticeInfo(d.points[0], step)


def lattice_pmf(d: Distribution, step: Optional[float] = None) -> list[Mass]:
    """Masses on every lattice site from min to max support point, zeros filled in."""
    if step is None:
        info = lattice_info(d)
        if info is None:
            raise DistributionError("support is not contained in a lattice")
        step = info.step
    n_sites = int(round(d.support_range / step)) + 1
    zero = Fraction(0) if d.exact else 0.0
    out = [zero] * n_sites
    for x, m in zip(d.points, d.masses):
        k = (x - d.points[0]) / step
        ki = int(round(k))
        if abs(k - ki) > 1e-6:
            raise DistributionError(f"point {x} is off the lattice with step {step}")
        out[ki] = m
    return out


def is_unimodal(d: Distribution) -> bool:
    """Whether the lattice-completed pmf rises (weakly) to a mode and then falls."""
    pmf = lattice_pmf(d)
    tol = 0 if d.exact else 1e-12
    i = 0
    while i + 1 < len(pmf) and pmf[i + 1] >= pmf[i] - tol:
        i += 1
    return all(pmf[j + 1] <= pmf[j] + tol for j in range(i, len(pmf) - 1))

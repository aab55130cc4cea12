"""Decision procedures for dispersion and auxiliary stochastic orders.

Every comparison tests both directions, "X <= Y" (forward) and "Y <= X"
(backward), and folds the two outcomes into an :class:`OrderVerdict`.
Exact-backend inputs are compared with exact rational arithmetic; anything
involving floating masses uses an absolute tolerance of 1e-9, widened by twice
the truncated tail mass so that truncation can never manufacture an order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional

import numpy as np

from .concentration import FLOAT_EQ_TOL, concentration_function, distance_tol
from .distributions import Distribution, DistributionError


class Relation(str, enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    EQUIVALENT = "Equivalent"
    INCOMPARABLE = "Incomparable"

    def flipped(self) -> "Relation":
        return {Relation.LESS: Relation.GREATER, Relation.GREATER: Relation.LESS}.get(self, self)


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of comparing X with Y.

    ``witness_forward`` locates a failure of "X <= Y", ``witness_backward`` a
    failure of "Y <= X".  When ``approximate`` is set and the verdict is
    Incomparable only because a difference fell inside the truncation band,
    the direction that did hold has no witness.
    """

    relation: Relation
    witness_forward: Optional[Any] = None
    witness_backward: Optional[Any] = None
    approximate: bool = False

    @property
    def holds_forward(self) -> bool:
        return self.relation in (Relation.LESS, Relation.EQUIVALENT)

    @property
    def holds_backward(self) -> bool:
        return self.relation in (Relation.GREATER, Relation.EQUIVALENT)

    def swapped(self) -> "OrderVerdict":
        return OrderVerdict(self.relation.flipped(), self.witness_backward,
                            self.witness_forward, self.approximate)

    def to_dict(self) -> dict:
        return {
            "relation": self.relation.value,
            "witness_forward": _jsonable(self.witness_forward),
            "witness_backward": _jsonable(self.witness_backward),
            "approximate": self.approximate,
        }


def _jsonable(w):
    if w is None:
        return None
    if isinstance(w, tuple):
        return [_jsonable(v) for v in w]
    if isinstance(w, (np.integer, int)):
        return int(w)
    return float(w)


HOLDS, FAILS, UNKNOWN = "holds", "fails", "unknown"


class _Direction:
    """Scans ``(key, slack)`` pairs where the inequality under test needs ``slack >= 0``."""

    def __init__(self, tol, band):
        self.tol = tol
        self.band = max(tol, band)

    def scan(self, items: Iterable[tuple[Any, Any]]) -> tuple[str, Any]:
        unsure = None
        for key, slack in items:
            if slack >= -self.tol:
                continue
            if slack < -self.band:
                return FAILS, key
            if unsure is None:
                unsure = key
        return (UNKNOWN, unsure) if unsure is not None else (HOLDS, None)


def _verdict(fwd, bwd, approximate) -> OrderVerdict:
    (fs, fw), (bs, bw) = fwd, bwd
    if fs == HOLDS and bs == HOLDS:
        rel = Relation.EQUIVALENT
    elif fs == HOLDS and bs == FAILS:
        rel = Relation.LESS
    elif fs == FAILS and bs == HOLDS:
        rel = Relation.GREATER
    else:
        rel = Relation.INCOMPARABLE
    return OrderVerdict(rel, fw, bw, approximate)


def _tolerances(x: Distribution, y: Distribution):
    if x.exact and y.exact:
        return 0, 0
    return FLOAT_EQ_TOL, 2 * (x.tail_deficit + y.tail_deficit)


def _approx(x, y) -> bool:
    return x.tail_deficit > 0 or y.tail_deficit > 0


def _merged_grid(values: Iterable[float], tol: float) -> list[float]:
    grid: list[float] = []
    for v in sorted(values):
        if not grid or v - grid[-1] > tol:
            grid.append(v)
    return grid


# ------------------------------------------------------------ weak dispersive

def weak_dispersive_compare(x: Distribution, y: Distribution) -> OrderVerdict:
    """X <=_wd Y iff Q_X(eps) >= Q_Y(eps) for every eps > 0.

    Both concentration functions are constant between consecutive breakpoints
    of either one, so checking the union of breakpoints (0 standing for the
    right limit) decides the order.
    """
    qx, qy = concentration_function(x), concentration_function(y)
    grid = _merged_grid(qx.breakpoints + qy.breakpoints, distance_tol(x, y))
    diffs = [(eps, qx(eps) - qy(eps)) for eps in grid]
    tol, band = _tolerances(x, y)
    d = _Direction(tol, band)
    return _verdict(d.scan(diffs), d.scan((e, -v) for e, v in diffs), _approx(x, y))


# ----------------------------------------------------------------- classical

def stochastic_compare(x: Distribution, y: Distribution) -> OrderVerdict:
    """X <=_st Y iff F_X(t) >= F_Y(t) on the merged support grid."""
    grid = _merged_grid(x.points + y.points, 0.0)
    diffs = [(t, x.cdf(t) - y.cdf(t)) for t in grid]
    tol, band = _tolerances(x, y)
    d = _Direction(tol, band)
    return _verdict(d.scan(diffs), d.scan((t, -v) for t, v in diffs), _approx(x, y))


def _aligned(x: Distribution, y: Distribution):
    grid = _merged_grid(x.points + y.points, 0.0)
    pos = {t: k for k, t in enumerate(grid)}
    exact = x.exact and y.exact
    dtype = object if exact else float
    p, q = np.zeros(len(grid), dtype=dtype), np.zeros(len(grid), dtype=dtype)
    if exact:
        p[:], q[:] = 0, 0
    for d, arr in ((x, p), (y, q)):
        vals = d.counts if exact else d.float_masses()
        for t, v in zip(d.points, vals):
            arr[pos[t]] = v
    return np.asarray(grid), p, q, exact


def lr_compare(x: Distribution, y: Distribution, *, chunk: int = 1024) -> OrderVerdict:
    """X <=_lr Y iff p_i q_j >= p_j q_i for all union points i < j.

    Zero masses need no special casing in the cross-product form.  Exact
    inputs compare raw counts (the denominators cancel).
    """
    grid, p, q, exact = _aligned(x, y)
    n = len(grid)

    def slacks(a, b):
        # yields ((t_i, t_j), a_i b_j - a_j b_i) over i < j, blockwise
        for lo in range(0, n, chunk):
            rows = slice(lo, min(lo + chunk, n))
            ab = np.multiply.outer(a[rows], b)
            ba = np.multiply.outer(b[rows], a)
            s = ab - ba
            if not exact:
                scale = np.maximum(np.abs(ab), np.abs(ba))
                s = np.where(np.abs(s) <= FLOAT_EQ_TOL * scale, 0.0, s)
            ii, jj = np.nonzero(_upper_mask(s.shape, lo) & (s < 0))
            if len(ii):
                yield (float(grid[lo + ii[0]]), float(grid[jj[0]])), s[ii[0], jj[0]]
                return

    d = _Direction(0, 0)
    return _verdict(d.scan(slacks(p, q)), d.scan(slacks(q, p)), _approx(x, y))


def _upper_mask(shape, row_offset):
    rows = np.arange(shape[0])[:, None] + row_offset
    cols = np.arange(shape[1])[None, :]
    return cols > rows


def randomness_compare(x: Distribution, y: Distribution) -> OrderVerdict:
    """X <=_rand Y iff the sorted masses of X majorize those of Y."""
    px = sorted(x.masses, reverse=True)
    py = sorted(y.masses, reverse=True)
    n = max(len(px), len(py))
    zero = Fraction(0) if x.exact and y.exact else 0.0
    px += [zero] * (n - len(px))
    py += [zero] * (n - len(py))
    sx = sy = zero
    diffs = []
    for k in range(n):
        sx += px[k]
        sy += py[k]
        diffs.append((k + 1, sx - sy))
    tol, band = _tolerances(x, y)
    d = _Direction(tol, band)
    return _verdict(d.scan(diffs), d.scan((k, -v) for k, v in diffs), _approx(x, y))


# ------------------------------------------------------------- wedge-discrete

@dataclass(frozen=True)
class IdentifyingSequence:
    """Indexed form ``(x_j, p_j), j = 1..n`` of a finite-support distribution."""

    points: tuple[float, ...]
    masses: tuple
    cdf: tuple  # F(x_0) = 0, F(x_1), ..., F(x_n) = 1
    exact: bool

    @property
    def index_set(self) -> range:
        return range(1, len(self.points) + 1)

    @property
    def entries(self) -> list[tuple[float, Any]]:
        return list(zip(self.points, self.masses))

    def __len__(self):
        return len(self.points)


def identifying_sequence(d: Distribution) -> IdentifyingSequence:
    if d.is_degenerate:
        raise DistributionError("an identifying sequence needs at least two support points")
    cdf = d.cdf_values()
    one = Fraction(1) if d.exact else 1.0
    zero = Fraction(0) if d.exact else 0.0
    cdf = [zero] + cdf[:-1] + [one]
    return IdentifyingSequence(d.points, d.masses, tuple(cdf), d.exact)


def ek_relevant_pairs(f: IdentifyingSequence, g: IdentifyingSequence):
    """Index pairs whose open cdf intervals overlap, and the "wedge" subset.

    The intervals (F(x_{a-1}), F(x_a)) partition (0, 1), as do those of G, so
    one merge sweep visits exactly the overlapping pairs.
    """
    tol = 0 if f.exact and g.exact else FLOAT_EQ_TOL
    F, G = f.cdf, g.cdf
    n, m = len(f), len(g)
    a = b = 1
    rel = []
    while a <= n and b <= m:
        if max(F[a - 1], G[b - 1]) < min(F[a], G[b]) - tol:
            rel.append((a, b))
        if F[a] < G[b] - tol:
            a += 1
        elif G[b] < F[a] - tol:
            b += 1
        else:
            a += 1
            b += 1
    rs = set(rel)
    wedge = [(a, b) for a, b in rel if a >= 2 and b >= 2 and (a - 1, b - 1) in rs]
    return rs, set(wedge)


def _ek_direction(f, g, rel, wedge, mass_tol, gap_tol) -> tuple[str, Any]:
    # f "at most as dispersed as" g
    for a, b in sorted(rel):
        if g.masses[b - 1] - f.masses[a - 1] > mass_tol:
            return FAILS, (a, b)
    for a, b in sorted(wedge):
        gx = f.points[a - 1] - f.points[a - 2]
        gy = g.points[b - 1] - g.points[b - 2]
        if gx - gy > gap_tol:
            return FAILS, (a, b)
    return HOLDS, None


def ek_discrete_compare(x: Distribution, y: Distribution) -> OrderVerdict:
    """Wedge-discrete dispersive order on finite supports.

    Witnesses are 1-based index pairs ``(a, b)`` read in the frame of the
    failing inequality: ``a`` indexes its left-hand distribution, so a
    backward witness indexes ``y`` first.
    """
    f, g = identifying_sequence(x), identifying_sequence(y)
    rel, wedge = ek_relevant_pairs(f, g)
    mass_tol = 0 if x.exact and y.exact else FLOAT_EQ_TOL
    gap_tol = distance_tol(x, y)
    fwd = _ek_direction(f, g, rel, wedge, mass_tol, gap_tol)
    bwd = _ek_direction(g, f, {(b, a) for a, b in rel}, {(b, a) for a, b in wedge},
                        mass_tol, gap_tol)
    return _verdict(fwd, bwd, _approx(x, y))

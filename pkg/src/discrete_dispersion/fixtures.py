"""Bundled count-data fixtures and their published dispersion tables.

Each example holds two samples as ``(value, count)`` rows.  Example 3's
sample 1 has a censored top bin ("40 or more", four eels); it is stored at its
lower bound and flagged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .distributions import Distribution, from_counts
from .measures import Sample

MEASURE_COLUMNS = ("sd", "mad", "gmd", "iqr", "nu1", "nu2", "nu_rob")


@dataclass(frozen=True)
class Fixture:
    title: str
    rows: tuple[tuple[tuple[float, int], ...], tuple[tuple[float, int], ...]]
    published: tuple[tuple[float, ...], tuple[float, ...]]
    censored_at: tuple[Optional[float], Optional[float]] = (None, None)

    def counts(self, sample: int) -> tuple[tuple[float, int], ...]:
        return tuple((v, c) for v, c in self.rows[sample - 1] if c > 0)

    def distribution(self, sample: int) -> Distribution:
        return from_counts(self.counts(sample))

    def sample(self, sample: int) -> Sample:
        return Sample.from_counts(self.counts(sample))

    def published_row(self, sample: int) -> dict[str, float]:
        return dict(zip(MEASURE_COLUMNS, self.published[sample - 1]))


def _rows(ks, *hs):
    return tuple(tuple(zip(ks, h)) for h in hs)


_K1 = (0, 1, 2, 3, 4, 5, 6, 7, 8, 12, 16, 21, 42, 64)
_K2 = (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 16, 22, 23)
_K3 = (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 27, 37, 39, 40)
_K4 = (0, 3, 5, 6, 8, 10, 11, 12, 13, 14, 15, 16, 17, 19, 25)

FIXTURES: dict[int, Fixture] = {
    1: Fixture(
        "Swimbladder nematodes, Japanese eels (cultured vs wild)",
        _rows(_K1,
              (32, 15, 8, 4, 1, 1, 3, 2, 1, 0, 1, 1, 1, 1),
              (134, 19, 9, 0, 1, 2, 0, 1, 1, 1, 0, 0, 0, 0)),
        ((9.39, 4.29, 5.48, 2, 1.65, 4.95, 0.90),
         (1.43, 0.74, 0.83, 0, 0.23, 0.75, 0.51)),
    ),
    2: Fixture(
        "Swimbladder nematodes, European eels (Karlsruhe vs Sulzbach)",
        _rows(_K2,
              (104, 47, 16, 13, 5, 3, 2, 1, 0, 1, 0, 0, 0, 1, 1, 1, 1),
              (61, 16, 10, 1, 2, 1, 1, 1, 2, 0, 2, 2, 1, 0, 0, 0, 0)),
        ((2.94, 1.53, 1.99, 1, 0.65, 1.61, 0.79),
         (2.73, 1.76, 2.18, 1, 0.68, 1.52, 0.75)),
    ),
    3: Fixture(
        "Intestinal parasites, European eels (1999 vs 2005)",
        _rows(_K3,
              (14, 3, 5, 4, 2, 1, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 1, 4),
              (1, 0, 2, 1, 3, 2, 1, 0, 1, 2, 0, 2, 2, 1, 1, 0, 1, 0)),
        ((35.83, 21.48, 25.68, 6.25, 7.60, 19.25, 1.06),
         (9.19, 6.06, 8.93, 7.25, 4.07, 6.23, 1.23)),
        censored_at=(40, None),
    ),
    4: Fixture(
        "Aggression attributed to film characters (populations A and B)",
        _rows(_K4,
              (1, 0, 1, 0, 2, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1),
              (0, 1, 0, 1, 0, 2, 1, 1, 2, 0, 0, 1, 0, 0, 0)),
        ((7.75, 6.30, 9.28, 9, 4.78, 6.28, 1.23),
         (3.91, 2.84, 4.50, 3, 2.11, 3.02, 1.14)),
    ),
}


def counts_text(example: int, sample: int) -> str:
    """Fixture rendered in the counts-file format (censored bin as ``>=v``)."""
    fx = FIXTURES[example]
    cens = fx.censored_at[sample - 1]
    lines = [f"# {fx.title}, sample {sample}"]
    for v, c in fx.counts(sample):
        lines.append(f"{'>=' if v == cens else ''}{v},{c}")
    return "\n".join(lines) + "\n"

"""Command-line front end: compare, qcurve, report.

Dataset arguments accept

* a family expression such as ``poisson(2.0)`` or ``hermite(0.1, 0.15)``;
* ``fixture:E:S`` for sample S of bundled example E;
* ``counts:PATH`` / ``sample:PATH`` or a bare path (a file containing commas
  is read as a counts table, anything else as whitespace-separated values).

Exit codes: 0 success, 1 internal error, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import fixtures
from .concentration import common_step, concentration_function, dm_sequence
from .distributions import (
    DEFAULT_MAX_SUPPORT, FAMILIES, Distribution, DistributionError, TailBudget, family,
    from_counts,
)
from .measures import EstimatorConfig, MeasureReport, Sample, measure_report
from .orders import (
    ek_discrete_compare, lr_compare, randomness_compare, stochastic_compare,
    weak_dispersive_compare,
)


class InputError(DistributionError):
    pass


# ------------------------------------------------------------------- parsing

@dataclass(frozen=True)
class ParsedCounts:
    distribution: Distribution
    censored_at: Optional[float] = None

    @property
    def censored(self) -> bool:
        return self.censored_at is not None


_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_COUNTS_LINE = re.compile(rf"^\s*(>=|≥)?\s*({_NUM})\s*,\s*(\S+)\s*$")


def parse_counts(text: str, *, max_support: int = DEFAULT_MAX_SUPPORT) -> ParsedCounts:
    """Parse ``value,count`` lines; a ``>=v,count`` row is a censored bin placed at v."""
    pairs, censored = [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _COUNTS_LINE.match(line)
        if not m:
            raise InputError(f"line {lineno}: expected 'value,count', got {raw!r}")
        cens, value, count = m.groups()
        try:
            c = int(count)
        except ValueError:
            raise InputError(f"line {lineno}: count {count!r} is not an integer") from None
        if c < 1:
            raise InputError(f"line {lineno}: count must be positive")
        v = float(value)
        if cens:
            if censored is not None and censored != v:
                raise InputError(f"line {lineno}: only one censored bin is supported")
            censored = v
        pairs.append((v, c))
    if not pairs:
        raise InputError("no data rows")
    return ParsedCounts(from_counts(pairs, max_support=max_support), censored)


def _fmt_value(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def serialize_counts(parsed: ParsedCounts) -> str:
    d = parsed.distribution
    lines = []
    for x, c in zip(d.points, d.counts):
        prefix = ">=" if parsed.censored_at is not None and x == parsed.censored_at else ""
        lines.append(f"{prefix}{_fmt_value(x)},{c}")
    return "\n".join(lines) + "\n"


def parse_sample(text: str) -> Sample:
    try:
        return Sample.of(float(tok) for tok in text.split())
    except ValueError as exc:
        raise InputError(f"sample file: {exc}") from None


_FAMILY_EXPR = re.compile(r"^\s*([a-z_]+)\s*\((.*)\)\s*$")


@dataclass(frozen=True)
class Dataset:
    """A parsed dataset argument."""

    label: str
    distribution: Distribution
    sample: Optional[Sample] = None
    censored: bool = False

    def measures(self, config: EstimatorConfig) -> MeasureReport:
        return measure_report(self.sample if self.sample is not None else self.distribution,
                              config)


def load_dataset(spec: str, budget: TailBudget = TailBudget(),
                 max_support: int = DEFAULT_MAX_SUPPORT) -> Dataset:
    m = _FAMILY_EXPR.match(spec)
    if m and m.group(1) in FAMILIES:
        try:
            args = [float(a) for a in m.group(2).split(",") if a.strip()]
        except ValueError:
            raise InputError(f"bad family arguments in {spec!r}") from None
        args = [int(a) if a.is_integer() and m.group(1) == "binomial" else a for a in args]
        return Dataset(spec, family(m.group(1), args, budget, max_support))
    if m:
        raise InputError(f"unknown family {m.group(1)!r}")
    if spec.startswith("fixture:"):
        try:
            _, e, s = spec.split(":")
            fx = fixtures.FIXTURES[int(e)]
            if int(s) not in (1, 2):
                raise KeyError(s)
            text = fixtures.counts_text(int(e), int(s))
        except (ValueError, KeyError):
            raise InputError(f"unknown fixture {spec!r} (use fixture:1..4:1..2)") from None
        parsed = parse_counts(text, max_support=max_support)
        return Dataset(spec, parsed.distribution, fx.sample(int(s)), parsed.censored)
    kind, _, path = spec.partition(":")
    if kind not in ("counts", "sample"):
        kind, path = None, spec
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path!r}: {exc.strerror}") from None
    if kind is None:
        kind = "counts" if "," in text else "sample"
    if kind == "counts":
        parsed = parse_counts(text, max_support=max_support)
        d = parsed.distribution
        sample = Sample.from_counts(zip(d.points, d.counts))
        return Dataset(spec, d, sample, parsed.censored)
    sample = parse_sample(text)
    return Dataset(spec, sample.to_distribution(), sample)


# ------------------------------------------------------------------ commands

def _ek_or_error(x, y):
    try:
        return ek_discrete_compare(x, y).to_dict()
    except DistributionError as exc:
        return {"error": str(exc)}


def compare(a: Dataset, b: Dataset, *, mmax: Optional[int] = None,
            config: EstimatorConfig = EstimatorConfig()) -> dict:
    x, y = a.distribution, b.distribution
    verdicts = {
        "wd": weak_dispersive_compare(x, y).to_dict(),
        "ek": _ek_or_error(x, y),
        "st": stochastic_compare(x, y).to_dict(),
        "lr": lr_compare(x, y).to_dict(),
        "rand": randomness_compare(x, y).to_dict(),
    }
    try:
        step = common_step(x, y)
        top = mmax if mmax is not None else int(round(max(x.support_range, y.support_range) / step))
        dm = dm_sequence(x, y, top)
        dm_out = {"step": step, "values": [float(v) for v in dm.values]}
    except DistributionError:
        dm_out = None
    approximate = x.tail_deficit > 0 or y.tail_deficit > 0
    return {
        "inputs": {
            side: {"spec": ds.label, "backend": ds.distribution.backend,
                   "support_size": len(ds.distribution),
                   "tail_deficit": ds.distribution.tail_deficit, "censored": ds.censored}
            for side, ds in (("a", a), ("b", b))
        },
        "verdicts": verdicts,
        "measures": {"a": a.measures(config).to_dict(), "b": b.measures(config).to_dict()},
        "dm": dm_out,
        "flags": {"approximate": approximate, "censored": a.censored or b.censored},
    }


def qcurve_rows(d: Distribution) -> list[tuple[float, float]]:
    q = concentration_function(d)
    return [(float(bp), float(v)) for bp, v in zip(q.breakpoints, q.values)]


def qcurve_csv(d: Distribution) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["breakpoint", "Q"])
    for bp, v in qcurve_rows(d):
        w.writerow([repr(bp), repr(v)])
    return buf.getvalue()


def report_rows(example: int, nu_rob_variant: str = "sqrt") -> list[dict]:
    if example not in fixtures.FIXTURES:
        raise InputError(f"unknown example id {example!r} (choose 1-4)")
    fx = fixtures.FIXTURES[example]
    cfg = EstimatorConfig(nu_rob_variant=nu_rob_variant)
    out = []
    for s in (1, 2):
        rep = measure_report(fx.sample(s), cfg)
        ours = {k: rep[k] for k in fixtures.MEASURE_COLUMNS}
        out.append({"sample": s, "computed": ours, "published": fx.published_row(s),
                    "censored": fx.censored_at[s - 1] is not None})
    return out


def format_report(example: int, nu_rob_variant: str = "sqrt") -> str:
    fx = fixtures.FIXTURES.get(example)
    rows = report_rows(example, nu_rob_variant)
    cols = fixtures.MEASURE_COLUMNS
    lines = [f"Example {example}: {fx.title}", ""]
    lines.append(f"{'':<20}" + "".join(f"{c:>9}" for c in cols))
    for r in rows:
        for label, vals in (("computed", r["computed"]), ("published", r["published"])):
            lines.append(f"{'sample %d %s' % (r['sample'], label):<20}"
                         + "".join(f"{vals[c]:>9.2f}" for c in cols))
        lines.append(f"{'sample %d diff' % r['sample']:<20}"
                     + "".join(f"{r['computed'][c] - r['published'][c]:>+9.2f}" for c in cols))
    if any(r["censored"] for r in rows):
        cens = [fx.censored_at[i] for i in (0, 1) if fx.censored_at[i] is not None][0]
        lines += ["", f"caveat: a censored bin ('>= {_fmt_value(cens)}') is placed at its lower "
                  "bound; moment-type measures of that sample are lower bounds and are not "
                  "expected to match the published row."]
    lines.append(f"\nnu_rob variant: {nu_rob_variant}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------- main

def _common_args(p: argparse.ArgumentParser):
    p.add_argument("--tail-budget", type=float, default=1e-12,
                   help="maximum tail mass dropped when truncating infinite families")
    p.add_argument("--max-support", type=int, default=DEFAULT_MAX_SUPPORT)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discdisp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compare", help="all order verdicts, measures and d_m as JSON")
    c.add_argument("spec_a")
    c.add_argument("spec_b")
    c.add_argument("--mmax", type=int, default=None)
    c.add_argument("--quantile-type", choices=("interp", "inverse-cdf"), default="interp")
    c.add_argument("--nu-rob", choices=("raw", "sqrt"), default="raw")
    _common_args(c)

    q = sub.add_parser("qcurve", help="concentration function as CSV")
    q.add_argument("spec")
    _common_args(q)

    r = sub.add_parser("report", help="reproduce a bundled dispersion table")
    r.add_argument("example", type=int)
    r.add_argument("--nu-rob", choices=("raw", "sqrt"), default="sqrt")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "report":
            sys.stdout.write(format_report(args.example, args.nu_rob))
            return 0
        budget = TailBudget(args.tail_budget)
        if args.command == "qcurve":
            ds = load_dataset(args.spec, budget, args.max_support)
            sys.stdout.write(qcurve_csv(ds.distribution))
            return 0
        a = load_dataset(args.spec_a, budget, args.max_support)
        b = load_dataset(args.spec_b, budget, args.max_support)
        cfg = EstimatorConfig(quantile_type=args.quantile_type, nu_rob_variant=args.nu_rob)
        out = compare(a, b, mmax=args.mmax, config=cfg)
        json.dump(out, sys.stdout, indent=2, allow_nan=False, default=_json_default)
        sys.stdout.write("\n")
        return 0
    except (DistributionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - last-resort guard
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1


def _json_default(o):
    if isinstance(o, float) and not math.isfinite(o):
        return None
    return float(o)


if __name__ == "__main__":
    sys.exit(main())

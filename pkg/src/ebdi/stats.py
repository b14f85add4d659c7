"""Spearman rank correlation with tie handling and two-tailed significance.

Ranks are assigned smallest-first with tied values sharing their average rank;
the correlation is the Pearson correlation of the two rank vectors, which is
the tie-correct form of Spearman's rho. Significance uses the standard t
approximation, t = rho * sqrt((n-2) / (1-rho^2)) with n-2 degrees of freedom,
recorded in ``method_note`` of every result.

Series are joined pairwise-complete: units missing from either series are
dropped for that pair only.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Mapping, Sequence

from scipy.stats import t as _student_t

from .errors import LoadError, ValidationError

METHOD_NOTE_T_APPROX = "t-approximation (df=n-2)"
METHOD_NOTE_DEGENERATE = "|rho|=1; p=0 by convention"


@dataclass(frozen=True)
class MetricSeries:
    """Named per-unit values of one metric; units without a value are absent."""

    metric_name: str
    values: Mapping[str, float]

    def __post_init__(self) -> None:
        for unit_id, value in self.values.items():
            if not math.isfinite(value):
                raise ValidationError(
                    f"non-finite value for unit {unit_id!r} in metric {self.metric_name!r}"
                )


@dataclass(frozen=True)
class CorrelationResult:
    metric_x: str
    metric_y: str
    n: int
    rho: float
    p_two_tailed: float
    method_note: str


def _average_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks, ties sharing the average of the ranks they span."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mean_rank = (i + j + 2) / 2.0  # average of 1-based ranks i+1 .. j+1
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return ranks


def _pearson(x: Sequence[float], y: Sequence[float]) -> float:
    n = len(x)
    mean_x = math.fsum(x) / n
    mean_y = math.fsum(y) / n
    dx = [v - mean_x for v in x]
    dy = [v - mean_y for v in y]
    cov = math.fsum(a * b for a, b in zip(dx, dy))
    var_x = math.fsum(a * a for a in dx)
    var_y = math.fsum(b * b for b in dy)
    if var_x == 0 or var_y == 0:
        raise ValidationError("constant series; correlation undefined")
    r = cov / math.sqrt(var_x * var_y)
    return max(-1.0, min(1.0, r))


def spearman_rho(x: MetricSeries, y: MetricSeries) -> tuple[float, int]:
    """Tie-corrected Spearman correlation over the units present in both series.

    Returns (rho, n) where n is the overlap size. Requires n >= 3 and both
    overlapping series non-constant.
    """
    overlap = sorted(set(x.values) & set(y.values))
    if len(overlap) < 3:
        raise ValidationError(
            f"only {len(overlap)} overlapping units between {x.metric_name!r} and "
            f"{y.metric_name!r}; need at least 3"
        )
    xs = [x.values[unit] for unit in overlap]
    ys = [y.values[unit] for unit in overlap]
    rho = _pearson(_average_ranks(xs), _average_ranks(ys))
    return rho, len(overlap)


def p_two_tailed(rho: float, n: int) -> float:
    """Two-tailed significance of a rank correlation via the t approximation.

    For |rho| = 1 the statistic diverges; p is 0 by convention (callers flag
    this in the method note).
    """
    if n < 3:
        raise ValidationError("p-value needs n >= 3")
    if not -1.0 <= rho <= 1.0:
        raise ValidationError("rho must lie in [-1, 1]")
    if abs(rho) == 1.0:
        return 0.0
    t_stat = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    p = 2.0 * float(_student_t.sf(abs(t_stat), n - 2))
    return min(1.0, max(0.0, p))


def correlate(x: MetricSeries, y: MetricSeries) -> CorrelationResult:
    """Full correlation record for one pair of series."""
    rho, n = spearman_rho(x, y)
    degenerate = abs(rho) == 1.0
    return CorrelationResult(
        metric_x=x.metric_name,
        metric_y=y.metric_name,
        n=n,
        rho=rho,
        p_two_tailed=p_two_tailed(rho, n),
        method_note=METHOD_NOTE_DEGENERATE if degenerate else METHOD_NOTE_T_APPROX,
    )


def load_metric_series(source: str | Path | IO[str]) -> list[MetricSeries]:
    """Read long-format metric values: header ``journal_id,metric_name,value``.

    Returns one series per metric name, sorted by name. Duplicate
    (journal, metric) rows and non-numeric values are load errors.
    """
    if hasattr(source, "read"):
        handle = source
        path: object = getattr(source, "name", "<stream>")
        return _read_metric_rows(handle, path)
    path = Path(source)
    try:
        handle = path.open("r", encoding="utf-8-sig", newline="")
    except OSError as exc:
        raise LoadError(f"cannot open file: {exc.strerror or exc}", path=path) from exc
    with handle:
        return _read_metric_rows(handle, path)


def _read_metric_rows(handle: IO[str], path: object) -> list[MetricSeries]:
    reader = csv.DictReader(handle)
    if reader.fieldnames is None:
        raise LoadError("empty file (missing header)", path=path)
    required = ("journal_id", "metric_name", "value")
    missing = [name for name in required if name not in [f.strip() for f in reader.fieldnames]]
    if missing:
        raise LoadError(f"missing required column(s): {', '.join(missing)}", path=path, line=1)
    by_metric: dict[str, dict[str, float]] = {}
    for row in reader:
        journal_id = (row.get("journal_id") or "").strip()
        metric_name = (row.get("metric_name") or "").strip()
        raw_value = (row.get("value") or "").strip()
        if not journal_id or not metric_name:
            raise LoadError("journal_id and metric_name must be non-empty",
                            path=path, line=reader.line_num)
        try:
            value = float(raw_value)
        except ValueError:
            raise LoadError(f"invalid value {raw_value!r}", path=path, line=reader.line_num) from None
        if not math.isfinite(value):
            raise LoadError(f"non-finite value {raw_value!r}", path=path, line=reader.line_num)
        series = by_metric.setdefault(metric_name, {})
        if journal_id in series:
            raise LoadError(
                f"duplicate value for journal {journal_id!r}, metric {metric_name!r}",
                path=path, line=reader.line_num,
            )
        series[journal_id] = value
    return [
        MetricSeries(metric_name=name, values=dict(sorted(values.items())))
        for name, values in sorted(by_metric.items())
    ]

"""Pipeline orchestration and artifact emission.

Each ``run_*`` function loads what it needs, computes one artifact, writes it
under the configured output directory, and returns the rows it wrote. Outputs
are deterministic: row order is fixed (unit, SC, dimension), numbers are
full-precision in JSON and rounded to the configured decimals in CSV, and no
timestamps or environment details leak into any file. Every run also writes
``run_meta.json`` recording the parameters that shaped the numbers, in
particular the n_categories actually used for the maximum entropy.

Missing values (a unit with no citations in a dimension) are emitted as empty
CSV cells / JSON nulls, never as zeros.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Mapping, Sequence

from .corpus import Corpus, CountingMode, Dimension, load_corpus
from .errors import LoadError, NoCitationsError, ValidationError
from .metrics import build_profile, compute_ebdi, compute_journal_indicators
from .stats import MetricSeries, correlate, load_metric_series
from .svg import scatter_svg
from .taxonomy import build_journal_roles, classify_discipline, median_threshold

log = logging.getLogger(__name__)

UNCLASSIFIED = "UNCLASSIFIED"

INDICATOR_COLUMNS = (
    "unit_id", "focal_sc", "dimension",
    "pct_internal", "sum_external", "H", "Hmax", "pct_hmax", "ebdi", "raw_diversity",
)
ROLES_JOURNAL_COLUMNS = (
    "unit_id", "cited_ebdi", "citing_ebdi",
    "cited_level", "citing_level", "role", "cited_threshold", "citing_threshold",
)
ROLES_DISCIPLINE_COLUMNS = ("unit_id", "cited_ebdi", "citing_ebdi", "difference", "type")
CORRELATION_COLUMNS = ("metric_x", "metric_y", "n", "rho", "p_two_tailed", "method_note")
NETWORK_COLUMNS = ("source_sc", "target_sc", "weight")

#: integer-valued columns, emitted without decimals
_INT_COLUMNS = {"sum_external", "raw_diversity", "n"}
#: data-export columns kept at full precision even in CSV
_RAW_COLUMNS = {"weight"}


@dataclass
class RunConfig:
    """Everything a pipeline stage needs to know, resolved from the CLI."""

    classification: Path | None = None
    journals: Path | None = None
    citations: Path | None = None
    metrics: Path | None = None
    scores: Path | None = None
    focal_sc: str | None = None
    unit_type: str = "journal"  # "journal" or "discipline"
    n_categories: int | None = None
    counting: CountingMode = CountingMode.WHOLE
    dimension: Dimension | None = None
    top_k: int | None = None
    out_dir: Path = field(default_factory=lambda: Path("."))
    fmt: str = "csv"  # "csv" or "json"
    decimals: int = 2

    def __post_init__(self) -> None:
        if self.fmt not in ("csv", "json"):
            raise ValidationError(f"unknown output format {self.fmt!r}")
        if self.decimals < 0:
            raise ValidationError("decimals must be >= 0")
        if self.n_categories is not None and self.n_categories < 2:
            raise ValidationError("n_categories override must be >= 2")
        if self.unit_type not in ("journal", "discipline"):
            raise ValidationError(f"unknown unit type {self.unit_type!r}")


# -- shared plumbing --------------------------------------------------------------


def _load_corpus(config: RunConfig) -> Corpus:
    missing = [
        name
        for name, value in (
            ("classification", config.classification),
            ("journals", config.journals),
            ("citations", config.citations),
        )
        if value is None
    ]
    if missing:
        raise ValidationError(f"missing corpus input file(s): {', '.join(missing)}")
    return load_corpus(
        config.classification, config.journals, config.citations,
        n_categories=config.n_categories,
    )


def _csv_cell(column: str, value: object, decimals: int) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if column in _RAW_COLUMNS:
        if float(value).is_integer():
            return str(int(value))
        return repr(float(value))
    if column in _INT_COLUMNS or isinstance(value, int):
        return str(int(round(float(value))))
    return f"{float(value):.{decimals}f}"


def _write_csv(path: Path, columns: Sequence[str], rows: Iterable[Mapping[str, object]], decimals: int) -> None:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_cell(col, row.get(col), decimals) for col in columns])


def _write_json(path: Path, payload: Mapping[str, object]) -> None:
    with path.open("w", encoding="utf-8", newline="") as handle:
        json.dump(payload, handle, indent=2, ensure_ascii=False)
        handle.write("\n")


def _write_table(
    config: RunConfig,
    stem: str,
    columns: Sequence[str],
    rows: Sequence[Mapping[str, object]],
    meta: Mapping[str, object],
) -> Path:
    config.out_dir.mkdir(parents=True, exist_ok=True)
    if config.fmt == "csv":
        path = config.out_dir / f"{stem}.csv"
        _write_csv(path, columns, rows, config.decimals)
    else:
        path = config.out_dir / f"{stem}.json"
        _write_json(path, {"meta": dict(meta), "rows": [dict(row) for row in rows]})
    _write_json(config.out_dir / "run_meta.json", dict(meta))
    return path


def _run_meta(config: RunConfig, command: str, corpus: Corpus | None, **extra: object) -> dict[str, object]:
    meta: dict[str, object] = {
        "command": command,
        "counting_mode": config.counting.value,
        "n_categories": corpus.n_categories if corpus is not None else None,
        "focal_sc": config.focal_sc,
        "format": config.fmt,
        "decimals": config.decimals,
    }
    meta.update(extra)
    return meta


# -- score collection (shared by roles and correlations) ---------------------------


def _read_scores_csv(source: str | Path | IO[str]) -> list[tuple[str, float | None, float | None]]:
    """Precomputed indicator pairs: header ``unit_id,cited_ebdi,citing_ebdi``.

    Empty cells mean the dimension is missing for that unit.
    """
    path = Path(source) if not hasattr(source, "read") else None
    handle = path.open("r", encoding="utf-8-sig", newline="") if path else source
    try:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise LoadError("empty file (missing header)", path=path)
        required = ("unit_id", "cited_ebdi", "citing_ebdi")
        names = [name.strip() for name in reader.fieldnames]
        missing = [name for name in required if name not in names]
        if missing:
            raise LoadError(f"missing required column(s): {', '.join(missing)}", path=path, line=1)
        seen: set[str] = set()
        rows: list[tuple[str, float | None, float | None]] = []
        for row in reader:
            unit_id = (row.get("unit_id") or "").strip()
            if not unit_id:
                raise LoadError("unit_id must be non-empty", path=path, line=reader.line_num)
            if unit_id in seen:
                raise LoadError(f"duplicate unit_id {unit_id!r}", path=path, line=reader.line_num)
            seen.add(unit_id)
            values: list[float | None] = []
            for column in ("cited_ebdi", "citing_ebdi"):
                cell = (row.get(column) or "").strip()
                if not cell:
                    values.append(None)
                    continue
                try:
                    values.append(float(cell))
                except ValueError:
                    raise LoadError(
                        f"invalid {column} value {cell!r}", path=path, line=reader.line_num
                    ) from None
            rows.append((unit_id, values[0], values[1]))
        return sorted(rows)
    finally:
        if path is not None:
            handle.close()


def _collect_score_pairs(
    config: RunConfig,
) -> tuple[list[tuple[str, float | None, float | None]], Corpus | None]:
    """Per-unit (cited, citing) indicator values, from a corpus or a scores file."""
    if config.scores is not None:
        return _read_scores_csv(config.scores), None

    corpus = _load_corpus(config)
    if config.unit_type == "discipline":
        units = [sc_id for sc_id in sorted(corpus.sc_registry) if corpus.journals_in(sc_id)]
        focal = {unit: unit for unit in units}
    else:
        if not config.focal_sc:
            raise ValidationError(
                "role and correlation runs over a corpus need --focal-sc "
                "(journals are analyzed relative to one subject category)"
            )
        if config.focal_sc not in corpus.sc_registry:
            raise ValidationError(f"unknown sc_id {config.focal_sc!r}")
        units = list(corpus.journals_in(config.focal_sc))
        focal = {unit: config.focal_sc for unit in units}

    pairs = []
    for unit in units:
        cited, citing = compute_journal_indicators(corpus, unit, focal[unit], config.counting)
        pairs.append(
            (unit, cited.ebdi if cited else None, citing.ebdi if citing else None)
        )
    return pairs, corpus


# -- pipeline stages ----------------------------------------------------------------


def run_indicators(config: RunConfig) -> list[dict[str, object]]:
    """One row per (journal, focal SC, dimension) with the full indicator breakdown."""
    corpus = _load_corpus(config)
    if config.focal_sc is not None:
        if config.focal_sc not in corpus.sc_registry:
            raise ValidationError(f"unknown sc_id {config.focal_sc!r}")
        pairs = [(jid, config.focal_sc) for jid in corpus.journals_in(config.focal_sc)]
    else:
        pairs = [
            (jid, sc_id)
            for jid in sorted(corpus.journals)
            for sc_id in sorted(corpus.journals[jid].sc_memberships)
        ]

    rows: list[dict[str, object]] = []
    missing = 0
    for jid, sc_id in pairs:
        for dimension in (Dimension.CITED, Dimension.CITING):
            profile = build_profile(corpus, jid, sc_id, dimension, config.counting)
            row: dict[str, object] = {
                "unit_id": jid, "focal_sc": sc_id, "dimension": dimension.value,
            }
            try:
                score = compute_ebdi(profile, corpus.n_categories)
                row.update(
                    pct_internal=score.pct_internal,
                    sum_external=profile.external_total,
                    H=score.stats.entropy,
                    Hmax=score.stats.hmax,
                    pct_hmax=score.pct_hmax,
                    ebdi=score.ebdi,
                    raw_diversity=score.stats.raw_diversity,
                )
            except NoCitationsError:
                missing += 1
                row.update(
                    pct_internal=None, sum_external=None, H=None, Hmax=None,
                    pct_hmax=None, ebdi=None, raw_diversity=None,
                )
            rows.append(row)

    if missing:
        log.warning("%d (unit, SC, dimension) rows have no citations; emitted as missing", missing)
    meta = _run_meta(config, "indicators", corpus)
    path = _write_table(config, "indicators", INDICATOR_COLUMNS, rows, meta)
    log.info("wrote %s (%d rows)", path, len(rows))
    return rows


def run_roles(config: RunConfig) -> dict[str, object]:
    """Role report plus the quadrant scatter plot.

    Journal units get HIGH/LOW levels against each dimension's median and the
    four-quadrant role; discipline units get the importer/exporter type from
    the sign of (cited - citing). Units missing a dimension are reported
    unclassified. The scatter carries one point per classified unit and one
    median threshold line per dimension, cited on the horizontal axis.
    """
    pairs, corpus = _collect_score_pairs(config)
    classified = [(unit, cited, citing) for unit, cited, citing in pairs
                  if cited is not None and citing is not None]
    if len(classified) < 2:
        raise ValidationError(
            f"only {len(classified)} units have indicator values in both dimensions; need at least 2"
        )

    rows: list[dict[str, object]] = []
    if config.unit_type == "journal":
        cited_scores = {unit: cited for unit, cited, _ in pairs if cited is not None}
        citing_scores = {unit: citing for unit, _, citing in pairs if citing is not None}
        roles, thresholds = build_journal_roles(cited_scores, citing_scores)
        by_unit = {role.unit_id: role for role in roles}
        for unit, cited, citing in pairs:
            role = by_unit.get(unit)  # units missing both dimensions have no assignment
            cited_level = role.cited_level if role else None
            citing_level = role.citing_level if role else None
            rows.append({
                "unit_id": unit,
                "cited_ebdi": cited,
                "citing_ebdi": citing,
                "cited_level": cited_level.value if cited_level else None,
                "citing_level": citing_level.value if citing_level else None,
                "role": role.role.value if role and role.role else UNCLASSIFIED,
                "cited_threshold": thresholds[Dimension.CITED],
                "citing_threshold": thresholds[Dimension.CITING],
            })
        columns = ROLES_JOURNAL_COLUMNS
        quadrants = {
            "top_right": "CORE",
            "bottom_right": "KNOWLEDGE_IMPORTER",
            "top_left": "KNOWLEDGE_EXPORTER",
            "bottom_left": "TANGENTIAL",
        }
    else:
        thresholds = {
            Dimension.CITED: median_threshold([c for _, c, _ in pairs if c is not None]),
            Dimension.CITING: median_threshold([c for _, _, c in pairs if c is not None]),
        }
        for unit, cited, citing in pairs:
            typed = classify_discipline(cited, citing, sc_id=unit)
            rows.append({
                "unit_id": unit,
                "cited_ebdi": cited,
                "citing_ebdi": citing,
                "difference": typed.difference if typed else None,
                "type": typed.type.value if typed else UNCLASSIFIED,
            })
        columns = ROLES_DISCIPLINE_COLUMNS
        quadrants = None

    unclassified = sum(1 for row in rows if row.get("role", row.get("type")) == UNCLASSIFIED)
    if unclassified:
        log.warning("%d units lack a dimension and are reported unclassified", unclassified)

    meta = _run_meta(
        config, "roles", corpus,
        unit_type=config.unit_type,
        cited_threshold=thresholds[Dimension.CITED],
        citing_threshold=thresholds[Dimension.CITING],
    )
    path = _write_table(config, "roles", columns, rows, meta)

    svg_text = scatter_svg(
        points=[(unit, cited, citing) for unit, cited, citing in classified],
        x_threshold=thresholds[Dimension.CITED],
        y_threshold=thresholds[Dimension.CITING],
        x_label="EBDI (cited)",
        y_label="EBDI (citing)",
        quadrant_labels=quadrants,
        title="Disciplinarity by dimension",
    )
    svg_path = config.out_dir / "scatter.svg"
    svg_path.write_text(svg_text, encoding="utf-8", newline="\n")
    log.info("wrote %s (%d rows) and %s (%d points)", path, len(rows), svg_path, len(classified))
    return {"meta": meta, "rows": rows}


def run_correlations(config: RunConfig) -> list[dict[str, object]]:
    """Pairwise rank correlations among the indicator series and supplied metrics."""
    if config.metrics is None:
        raise ValidationError("correlation runs need a metrics file (--metrics)")
    pairs, corpus = _collect_score_pairs(config)
    series: list[MetricSeries] = [
        MetricSeries("cited_ebdi", {u: c for u, c, _ in pairs if c is not None}),
        MetricSeries("citing_ebdi", {u: c for u, _, c in pairs if c is not None}),
    ]
    series.extend(load_metric_series(config.metrics))

    rows: list[dict[str, object]] = []
    for i in range(len(series)):
        for j in range(i + 1, len(series)):
            try:
                result = correlate(series[i], series[j])
            except ValidationError as exc:
                log.warning(
                    "skipping pair (%s, %s): %s",
                    series[i].metric_name, series[j].metric_name, exc,
                )
                continue
            rows.append({
                "metric_x": result.metric_x,
                "metric_y": result.metric_y,
                "n": result.n,
                "rho": result.rho,
                "p_two_tailed": result.p_two_tailed,
                "method_note": result.method_note,
            })

    meta = _run_meta(config, "correlate", corpus, metrics_file=str(config.metrics))
    path = _write_table(config, "correlations", CORRELATION_COLUMNS, rows, meta)
    log.info("wrote %s (%d pairs)", path, len(rows))
    return rows


def aggregate_sc_network(
    corpus: Corpus,
    dimension: Dimension,
    counting_mode: CountingMode = CountingMode.WHOLE,
) -> dict[tuple[str, str], float]:
    """SC-to-SC citation weights for one dimension.

    Every journal edge fans out over the focal journal's SCs (sources) and the
    partner's SCs (targets): the full count per pair under WHOLE counting, or
    count / (#focal SCs * #partner SCs) under FRACTIONAL, which preserves the
    total volume.
    """
    weights: dict[tuple[str, str], float] = {}
    for edge in corpus.edges:
        if edge.dimension is not dimension or edge.count == 0:
            continue
        focal_scs = sorted(corpus.journals[edge.focal_journal].sc_memberships)
        partner_scs = sorted(corpus.journals[edge.partner_journal].sc_memberships)
        if counting_mode is CountingMode.WHOLE:
            share = float(edge.count)
        else:
            share = edge.count / (len(focal_scs) * len(partner_scs))
        for source in focal_scs:
            for target in partner_scs:
                weights[(source, target)] = weights.get((source, target), 0.0) + share
    return weights


def export_sc_network(config: RunConfig) -> list[dict[str, object]]:
    """Edge list of the SC-level citation network, trimmed to the top-k SCs.

    SCs are ranked by their total incident citation volume; an edge is kept
    when either endpoint is among the retained SCs. Rows are sorted by weight
    descending (ties by source then target).
    """
    if config.dimension is None:
        raise ValidationError("network export needs a dimension (--dimension cited|citing)")
    if config.top_k is None or config.top_k < 1:
        raise ValidationError("network export needs --top-k >= 1")
    corpus = _load_corpus(config)
    weights = aggregate_sc_network(corpus, config.dimension, config.counting)

    volume: dict[str, float] = {}
    for (source, target), weight in weights.items():
        volume[source] = volume.get(source, 0.0) + weight
        if target != source:
            volume[target] = volume.get(target, 0.0) + weight
    ranked = sorted(volume, key=lambda sc: (-volume[sc], sc))
    if config.top_k > len(ranked):
        log.warning(
            "top-k %d exceeds the %d SCs with citation volume; emitting all",
            config.top_k, len(ranked),
        )
    retained = set(ranked[: config.top_k])

    rows = [
        {"source_sc": source, "target_sc": target, "weight": weight}
        for (source, target), weight in weights.items()
        if source in retained or target in retained
    ]
    rows.sort(key=lambda row: (-float(row["weight"]), row["source_sc"], row["target_sc"]))

    meta = _run_meta(
        config, "network", corpus,
        dimension=config.dimension.value, top_k=config.top_k,
    )
    config.out_dir.mkdir(parents=True, exist_ok=True)
    path = config.out_dir / "sc_network.csv"
    _write_csv(path, NETWORK_COLUMNS, rows, config.decimals)
    _write_json(config.out_dir / "run_meta.json", meta)
    log.info("wrote %s (%d edges, %d SCs retained)", path, len(rows), min(config.top_k, len(ranked)))
    return rows

"""HIGH/LOW level assignment and role labels derived from indicator values.

Journals get a four-quadrant role from their cited/citing levels, where a
level is HIGH when the unit's indicator value reaches the median (the 50th
percentile) of its dimension's distribution within the analyzed set:

    citing HIGH + cited HIGH -> CORE                (disciplinary both ways)
    citing LOW  + cited HIGH -> KNOWLEDGE_IMPORTER  (multidisciplinary intake)
    citing HIGH + cited LOW  -> KNOWLEDGE_EXPORTER  (multidisciplinary output)
    citing LOW  + cited LOW  -> TANGENTIAL          (weak tie to the SC)

Whole disciplines are typed by the sign of (cited - citing): positive means
the discipline imports knowledge, negative means it exports.

Values exactly at the threshold are HIGH; the tie rule keeps boundary units
deterministic.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .corpus import Dimension
from .errors import ComputationError, ValidationError


class Level(str, Enum):
    HIGH = "HIGH"
    LOW = "LOW"


class JournalRoleLabel(str, Enum):
    CORE = "CORE"
    KNOWLEDGE_IMPORTER = "KNOWLEDGE_IMPORTER"
    KNOWLEDGE_EXPORTER = "KNOWLEDGE_EXPORTER"
    TANGENTIAL = "TANGENTIAL"


class TradeDirection(str, Enum):
    IMPORTER = "IMPORTER"
    EXPORTER = "EXPORTER"
    BALANCED = "BALANCED"


@dataclass(frozen=True)
class LevelAssignment:
    unit_id: str
    dimension: Dimension
    ebdi_value: float
    level: Level
    threshold_used: float

    def __post_init__(self) -> None:
        expected = Level.HIGH if self.ebdi_value >= self.threshold_used else Level.LOW
        if self.level is not expected:
            raise ComputationError("level disagrees with the value/threshold comparison")


@dataclass(frozen=True)
class JournalRole:
    unit_id: str
    cited_level: Level | None
    citing_level: Level | None
    role: JournalRoleLabel | None  # None when either level is missing


@dataclass(frozen=True)
class DisciplineType:
    sc_id: str
    cited_ebdi: float
    citing_ebdi: float
    difference: float  # cited - citing
    type: TradeDirection

    def __post_init__(self) -> None:
        if abs(self.difference - (self.cited_ebdi - self.citing_ebdi)) > 1e-12:
            raise ComputationError("stored difference disagrees with cited - citing")
        if self.difference > 0:
            expected = TradeDirection.IMPORTER
        elif self.difference < 0:
            expected = TradeDirection.EXPORTER
        else:
            expected = TradeDirection.BALANCED
        if self.type is not expected:
            raise ComputationError("trade direction disagrees with the difference sign")


def median_threshold(values: Sequence[float]) -> float:
    """Median of the values: middle order statistic, or the midpoint of the
    two middle order statistics for an even count."""
    if not values:
        raise ValidationError("cannot take the median of an empty list")
    if any(math.isnan(v) for v in values):
        raise ValidationError("median input contains NaN; exclude missing values first")
    return float(statistics.median(values))


def assign_levels(
    scores: Iterable[tuple[str, float]],
    dimension: Dimension,
) -> list[LevelAssignment]:
    """HIGH/LOW assignment for every scored unit of one dimension.

    The threshold is the median of the given values and is recorded in each
    assignment. HIGH means value >= threshold.
    """
    items = list(scores)
    if len(items) < 2:
        raise ValidationError("fewer than 2 scored units; a threshold needs at least 2")
    threshold = median_threshold([value for _, value in items])
    return [
        LevelAssignment(
            unit_id=unit_id,
            dimension=dimension,
            ebdi_value=value,
            level=Level.HIGH if value >= threshold else Level.LOW,
            threshold_used=threshold,
        )
        for unit_id, value in items
    ]


def classify_journal(cited_level: Level | None, citing_level: Level | None) -> JournalRoleLabel | None:
    """Quadrant role from the two levels; None (unclassified) if either is missing."""
    if cited_level is None or citing_level is None:
        return None
    if citing_level is Level.HIGH:
        return JournalRoleLabel.CORE if cited_level is Level.HIGH else JournalRoleLabel.KNOWLEDGE_EXPORTER
    return JournalRoleLabel.KNOWLEDGE_IMPORTER if cited_level is Level.HIGH else JournalRoleLabel.TANGENTIAL


def classify_discipline(
    cited_ebdi: float | None,
    citing_ebdi: float | None,
    sc_id: str = "",
) -> DisciplineType | None:
    """Importer/exporter type for a discipline from its two indicator values.

    A positive cited-minus-citing difference marks an importer, a negative one
    an exporter, an exact zero is BALANCED. Returns None (unclassified) when
    either value is missing.
    """
    if cited_ebdi is None or citing_ebdi is None:
        return None
    difference = cited_ebdi - citing_ebdi
    if difference > 0:
        direction = TradeDirection.IMPORTER
    elif difference < 0:
        direction = TradeDirection.EXPORTER
    else:
        direction = TradeDirection.BALANCED
    return DisciplineType(
        sc_id=sc_id,
        cited_ebdi=cited_ebdi,
        citing_ebdi=citing_ebdi,
        difference=difference,
        type=direction,
    )


def build_journal_roles(
    cited_scores: dict[str, float],
    citing_scores: dict[str, float],
) -> tuple[list[JournalRole], dict[Dimension, float]]:
    """Compose level assignment and role classification for a set of units.

    Units missing a dimension are excluded from that dimension's threshold but
    still appear in the result, unclassified. Output is sorted by unit_id.
    """
    cited_levels = {
        a.unit_id: a for a in assign_levels(sorted(cited_scores.items()), Dimension.CITED)
    }
    citing_levels = {
        a.unit_id: a for a in assign_levels(sorted(citing_scores.items()), Dimension.CITING)
    }
    thresholds = {
        Dimension.CITED: next(iter(cited_levels.values())).threshold_used,
        Dimension.CITING: next(iter(citing_levels.values())).threshold_used,
    }
    roles = []
    for unit_id in sorted(set(cited_scores) | set(citing_scores)):
        cited = cited_levels.get(unit_id)
        citing = citing_levels.get(unit_id)
        cited_level = cited.level if cited else None
        citing_level = citing.level if citing else None
        roles.append(
            JournalRole(
                unit_id=unit_id,
                cited_level=cited_level,
                citing_level=citing_level,
                role=classify_journal(cited_level, citing_level),
            )
        )
    return roles, thresholds

"""Classification registries and citation edge storage.

This module owns the input side of the toolkit: the subject-category (SC)
registry, the journal registry with per-journal SC memberships, and the
directed citation edge list. Everything is parsed from plain CSV exports
(schemas documented in the README) into an immutable :class:`Corpus`, which
downstream modules treat as a read-only database.

The one piece of domain logic living here is :func:`is_internal`: a citation
partner counts as internal to a focal subject category exactly when the
partner journal is classified in that category. Membership is a Boolean "or":
a partner co-classified in the focal SC plus other SCs is wholly internal,
and its other memberships contribute nothing.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import IO, Iterator

from .errors import LoadError, ValidationError

log = logging.getLogger(__name__)


class Dimension(str, Enum):
    """Direction of a citation flow relative to the analyzed unit."""

    CITED = "CITED"    # citations received by the unit
    CITING = "CITING"  # citations made by the unit

    @classmethod
    def parse(cls, token: str) -> "Dimension":
        try:
            return cls(token.strip().upper())
        except ValueError:
            raise ValidationError(
                f"unparseable dimension {token!r} (expected CITED or CITING)"
            ) from None


class CountingMode(str, Enum):
    """How a citation to/from a multi-SC partner spreads over the partner's SCs.

    WHOLE credits the full citation count to every SC of an external partner;
    FRACTIONAL splits the count evenly across the partner's SCs. Internal
    classification is unaffected: it is Boolean, never fractional.
    """

    WHOLE = "whole"
    FRACTIONAL = "fractional"

    @classmethod
    def parse(cls, token: str) -> "CountingMode":
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ValidationError(
                f"unknown counting mode {token!r} (expected whole or fractional)"
            ) from None


@dataclass(frozen=True)
class SubjectCategory:
    """One discipline label in the classification system."""

    sc_id: str
    name: str
    branch: str | None = None

    def __post_init__(self) -> None:
        if not self.sc_id:
            raise ValidationError("subject category with empty sc_id")
        if not self.name:
            raise ValidationError(f"subject category {self.sc_id!r} with empty name")


@dataclass(frozen=True)
class Journal:
    """A journal plus the set of subject categories it is classified in."""

    journal_id: str
    title: str
    sc_memberships: frozenset[str]

    def __post_init__(self) -> None:
        if not self.journal_id:
            raise ValidationError("journal with empty journal_id")
        if not self.sc_memberships:
            raise ValidationError(f"journal without SC: {self.journal_id!r}")


@dataclass(frozen=True)
class CitationEdge:
    """Citation volume between a focal journal and one partner, one dimension.

    ``count`` is the aggregated all-years citation count; duplicate input rows
    for the same (focal, partner, dimension) are summed at ingest.
    """

    focal_journal: str
    partner_journal: str
    dimension: Dimension
    count: int

    def __post_init__(self) -> None:
        if self.count < 0:
            raise ValidationError(
                f"negative citation count for edge "
                f"({self.focal_journal}, {self.partner_journal}, {self.dimension.value})"
            )


@dataclass(frozen=True)
class Corpus:
    """Immutable registry of SCs, journals, and citation edges.

    ``n_categories`` is the number of possible subject categories in the
    system, used downstream as the n of the maximum entropy ln(n). It defaults
    to the number of SCs in the classification file and may be overridden,
    but never below the number of distinct SCs actually used by journals.
    """

    sc_registry: dict[str, SubjectCategory]
    journals: dict[str, Journal]
    edges: tuple[CitationEdge, ...]
    n_categories: int

    def __post_init__(self) -> None:
        used_scs: set[str] = set()
        for journal in self.journals.values():
            for sc_id in journal.sc_memberships:
                if sc_id not in self.sc_registry:
                    raise ValidationError(
                        f"journal {journal.journal_id!r} references unknown sc_id {sc_id!r}"
                    )
                used_scs.add(sc_id)
        for edge in self.edges:
            for endpoint in (edge.focal_journal, edge.partner_journal):
                if endpoint not in self.journals:
                    raise ValidationError(f"edge references unknown journal {endpoint!r}")
        if self.n_categories < 1:
            raise ValidationError("n_categories must be >= 1")
        if self.n_categories < len(used_scs):
            raise ValidationError(
                f"n_categories={self.n_categories} is below the {len(used_scs)} "
                "distinct SCs used by journal memberships"
            )

    # -- read-only conveniences -------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def total_citations(self, dimension: Dimension | None = None) -> int:
        """Total citation volume, optionally restricted to one dimension."""
        return sum(e.count for e in self.edges if dimension is None or e.dimension is dimension)

    @cached_property
    def _edges_by_focal(self) -> dict[tuple[str, Dimension], tuple[CitationEdge, ...]]:
        index: dict[tuple[str, Dimension], list[CitationEdge]] = {}
        for edge in self.edges:
            index.setdefault((edge.focal_journal, edge.dimension), []).append(edge)
        return {key: tuple(edges) for key, edges in index.items()}

    def edges_for(self, journal_id: str, dimension: Dimension) -> tuple[CitationEdge, ...]:
        return self._edges_by_focal.get((journal_id, dimension), ())

    @cached_property
    def _journals_by_sc(self) -> dict[str, tuple[str, ...]]:
        index: dict[str, list[str]] = {}
        for journal_id in sorted(self.journals):
            for sc_id in self.journals[journal_id].sc_memberships:
                index.setdefault(sc_id, []).append(journal_id)
        return {sc_id: tuple(ids) for sc_id, ids in index.items()}

    def journals_in(self, sc_id: str) -> tuple[str, ...]:
        """Journal ids classified in ``sc_id``, sorted for determinism."""
        return self._journals_by_sc.get(sc_id, ())


def is_internal(corpus: Corpus, partner_journal: str, focal_sc: str) -> bool:
    """True iff the partner journal is classified in the focal SC.

    A pure membership test: it never consults counts or direction, and a
    partner holding the focal SC among several memberships is still internal.
    """
    journal = corpus.journals.get(partner_journal)
    if journal is None:
        raise ValidationError(f"unknown journal {partner_journal!r}")
    return focal_sc in journal.sc_memberships


# -- CSV loading ----------------------------------------------------------------

SC_FIELDS = ("sc_id", "name", "branch")
JOURNAL_FIELDS = ("journal_id", "title", "sc_memberships")
CITATION_FIELDS = ("focal_journal_id", "partner_journal_id", "dimension", "count")


def _open_rows(source: str | Path | IO[str], required: tuple[str, ...]) -> Iterator[tuple[int, dict[str, str]]]:
    """Yield (line_number, row) dicts from a CSV source, validating the header.

    Accepts a path or an already-open text stream. Extra columns are ignored;
    values are whitespace-stripped.
    """
    if hasattr(source, "read"):
        yield from _iter_rows(source, required, path=getattr(source, "name", "<stream>"))
        return
    path = Path(source)
    try:
        handle = path.open("r", encoding="utf-8-sig", newline="")
    except OSError as exc:
        raise LoadError(f"cannot open file: {exc.strerror or exc}", path=path) from exc
    with handle:
        yield from _iter_rows(handle, required, path=path)


def _iter_rows(handle: IO[str], required: tuple[str, ...], path: object) -> Iterator[tuple[int, dict[str, str]]]:
    reader = csv.DictReader(handle)
    if reader.fieldnames is None:
        raise LoadError("empty file (missing header)", path=path)
    # normalize away stray whitespace and a BOM that survived stream decoding
    reader.fieldnames = [name.strip().lstrip("﻿") for name in reader.fieldnames]
    missing = [name for name in required if name not in reader.fieldnames]
    if missing:
        raise LoadError(f"missing required column(s): {', '.join(missing)}", path=path, line=1)
    for row in reader:
        if None in row and any(extra for extra in row[None]):  # type: ignore[index]
            raise LoadError("row has more cells than the header", path=path, line=reader.line_num)
        cleaned = {
            key: (value.strip() if isinstance(value, str) else "")
            for key, value in row.items()
            if key is not None
        }
        yield reader.line_num, cleaned


def load_classification(
    sc_file: str | Path | IO[str],
    journal_file: str | Path | IO[str],
    *,
    n_categories: int | None = None,
) -> Corpus:
    """Load the SC and journal registries; returns a corpus with no edges yet.

    ``n_categories`` defaults to the number of distinct SCs in ``sc_file``.
    """
    sc_registry: dict[str, SubjectCategory] = {}
    for line, row in _open_rows(sc_file, SC_FIELDS):
        sc_id, name = row["sc_id"], row["name"]
        if not sc_id or not name:
            raise LoadError("sc_id and name must be non-empty", path=_name_of(sc_file), line=line)
        if sc_id in sc_registry:
            raise LoadError(f"duplicate sc_id {sc_id!r}", path=_name_of(sc_file), line=line)
        sc_registry[sc_id] = SubjectCategory(sc_id=sc_id, name=name, branch=row.get("branch") or None)

    journals: dict[str, Journal] = {}
    for line, row in _open_rows(journal_file, JOURNAL_FIELDS):
        journal_id = row["journal_id"]
        if not journal_id:
            raise LoadError("journal_id must be non-empty", path=_name_of(journal_file), line=line)
        if journal_id in journals:
            raise LoadError(f"duplicate journal_id {journal_id!r}", path=_name_of(journal_file), line=line)
        tokens = [token.strip() for token in row["sc_memberships"].split(";") if token.strip()]
        if not tokens:
            raise LoadError(f"journal without SC: {journal_id!r}", path=_name_of(journal_file), line=line)
        if len(tokens) != len(set(tokens)):
            raise LoadError(
                f"duplicate SC membership for journal {journal_id!r}",
                path=_name_of(journal_file), line=line,
            )
        for sc_id in tokens:
            if sc_id not in sc_registry:
                raise LoadError(
                    f"journal {journal_id!r} references unknown sc_id {sc_id!r}",
                    path=_name_of(journal_file), line=line,
                )
        journals[journal_id] = Journal(
            journal_id=journal_id, title=row.get("title", ""), sc_memberships=frozenset(tokens)
        )

    n = len(sc_registry) if n_categories is None else n_categories
    return Corpus(sc_registry=sc_registry, journals=journals, edges=(), n_categories=n)


def load_edges(corpus: Corpus, citation_file: str | Path | IO[str]) -> Corpus:
    """Attach citation edges to an already-classified corpus.

    Duplicate (focal, partner, dimension) rows are summed; repeated calls merge
    into the existing edge multiset, so per-year export files can be loaded one
    after another. The resulting edge tuple is canonically sorted, which makes
    loading independent of input row order.
    """
    merged: dict[tuple[str, str, Dimension], int] = {
        (e.focal_journal, e.partner_journal, e.dimension): e.count for e in corpus.edges
    }
    path = _name_of(citation_file)
    for line, row in _open_rows(citation_file, CITATION_FIELDS):
        focal, partner = row["focal_journal_id"], row["partner_journal_id"]
        for journal_id in (focal, partner):
            if journal_id not in corpus.journals:
                raise LoadError(f"unknown journal id {journal_id!r}", path=path, line=line)
        try:
            dimension = Dimension.parse(row["dimension"])
        except ValidationError as exc:
            raise LoadError(str(exc), path=path, line=line) from None
        try:
            count = int(row["count"])
        except ValueError:
            raise LoadError(f"invalid count {row['count']!r}", path=path, line=line) from None
        if count < 0:
            raise LoadError("negative citation count", path=path, line=line)
        key = (focal, partner, dimension)
        merged[key] = merged.get(key, 0) + count

    edges = tuple(
        CitationEdge(focal_journal=f, partner_journal=p, dimension=d, count=c)
        for (f, p, d), c in sorted(merged.items(), key=lambda item: (item[0][0], item[0][1], item[0][2].value))
    )
    loaded = replace(corpus, edges=edges)
    log.info(
        "loaded %d citation edges, total citation volume %d",
        loaded.edge_count, loaded.total_citations(),
    )
    return loaded


def load_corpus(
    sc_file: str | Path | IO[str],
    journal_file: str | Path | IO[str],
    citation_file: str | Path | IO[str],
    *,
    n_categories: int | None = None,
) -> Corpus:
    """Convenience wrapper: classification plus edges in one call."""
    partial = load_classification(sc_file, journal_file, n_categories=n_categories)
    return load_edges(partial, citation_file)


def _name_of(source: str | Path | IO[str]) -> object:
    if hasattr(source, "read"):
        return getattr(source, "name", "<stream>")
    return source

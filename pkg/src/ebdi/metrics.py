"""Citation profiles and the entropy-based disciplinarity indicator (EBDI).

For one unit (a journal, or a whole subject category) in one citation
dimension, the indicator is

    ebdi = pct_internal / (pct_hmax + 1)

where ``pct_internal`` is the share (0..100) of citations whose partner
journal is classified in the focal subject category, and ``pct_hmax`` is the
Shannon entropy of the external-citation distribution over subject categories,
expressed as a percentage of the maximum entropy ln(n_categories). The "+1"
sits in percentage units, so the indicator ranges over [0, 100].

Boundary behavior is exact: a profile whose citations are all internal has an
empty external distribution, hence entropy 0 and ebdi == pct_internal == 100;
a profile with no internal citations has ebdi == 0. High values read as
disciplinary (monodisciplinary at the extreme), low values as multidisciplinary.

Entropy is computed in nats (natural logarithm) with the 0*ln(0) terms defined
as 0: zero-count categories are simply absent from the distribution.

Percentages in both numerator and denominator make every quantity here
invariant under rescaling all counts by a common positive factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .corpus import Corpus, CountingMode, Dimension, is_internal
from .errors import ComputationError, NoCitationsError, ValidationError

#: Tolerance for internal consistency checks on derived quantities.
_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class CitationProfile:
    """One unit's citation distribution in one dimension, split by focal SC.

    ``internal_count`` and ``external_total`` count raw citations (each
    citation exactly once, whatever the partner's memberships), so
    ``total == internal_count + external_total`` is the raw citation volume
    and percentages of it stay within [0, 100].

    ``external_counts`` holds the per-SC attribution of the external
    citations and feeds only the entropy. Under WHOLE counting a citation to
    a partner classified in k external SCs contributes its full count to each
    of the k SCs, so the values may sum to more than ``external_total``;
    under FRACTIONAL counting each SC receives count/k and the values sum to
    ``external_total`` exactly.
    """

    unit_id: str
    focal_sc: str
    dimension: Dimension
    counting_mode: CountingMode
    internal_count: float
    external_counts: Mapping[str, float] = field(default_factory=dict)
    external_total: float = 0.0

    def __post_init__(self) -> None:
        if self.internal_count < 0 or self.external_total < 0:
            raise ComputationError("negative citation totals in profile")
        if any(value <= 0 for value in self.external_counts.values()):
            raise ComputationError("external_counts must hold strictly positive values")
        if self.focal_sc in self.external_counts:
            raise ComputationError("focal SC leaked into the external distribution")
        if self.counting_mode is CountingMode.FRACTIONAL:
            attributed = math.fsum(self.external_counts.values())
            if abs(attributed - self.external_total) > _CHECK_TOL * max(1.0, self.external_total):
                raise ComputationError(
                    "fractional external attribution does not sum to the raw external total"
                )

    @property
    def total(self) -> float:
        """Raw citation volume: internal plus external, each citation counted once."""
        return self.internal_count + self.external_total

    def scaled(self, factor: float) -> "CitationProfile":
        """Profile with every count multiplied by ``factor`` (> 0)."""
        if factor <= 0:
            raise ValidationError("scale factor must be positive")
        return CitationProfile(
            unit_id=self.unit_id,
            focal_sc=self.focal_sc,
            dimension=self.dimension,
            counting_mode=self.counting_mode,
            internal_count=self.internal_count * factor,
            external_counts={sc: value * factor for sc, value in self.external_counts.items()},
            external_total=self.external_total * factor,
        )


@dataclass(frozen=True)
class DistributionStats:
    """Entropy summary of one external-citation distribution."""

    entropy: float        # H, in nats
    hmax: float           # ln(n_categories), in nats
    pct_hmax: float       # 100 * H / Hmax
    raw_diversity: int    # distinct SCs with nonzero external count

    def __post_init__(self) -> None:
        if self.hmax <= 0:
            raise ComputationError("hmax must be positive")
        if self.raw_diversity <= 1:
            if abs(self.entropy) > _CHECK_TOL:
                raise ComputationError("entropy of a <=1 category distribution must be 0")
        elif not -_CHECK_TOL <= self.entropy <= math.log(self.raw_diversity) + _CHECK_TOL:
            raise ComputationError("entropy outside [0, ln(raw_diversity)]")
        if not -_CHECK_TOL <= self.pct_hmax <= 100 + _CHECK_TOL:
            raise ComputationError("pct_hmax outside [0, 100]")


@dataclass(frozen=True)
class EbdiScore:
    """The indicator value for one (unit, focal SC, dimension), with provenance."""

    unit_id: str
    focal_sc: str
    dimension: Dimension
    pct_internal: float
    pct_hmax: float
    ebdi: float
    stats: DistributionStats

    def __post_init__(self) -> None:
        if not -_CHECK_TOL <= self.pct_internal <= 100 + _CHECK_TOL:
            raise ComputationError("pct_internal outside [0, 100]")
        if abs(self.ebdi - self.pct_internal / (self.pct_hmax + 1.0)) > _CHECK_TOL:
            raise ComputationError("stored ebdi disagrees with its defining ratio")
        if not -_CHECK_TOL <= self.ebdi <= 100 + _CHECK_TOL:
            raise ComputationError("ebdi outside [0, 100]")


def shannon_entropy(counts: Mapping[str, float]) -> float:
    """Shannon entropy, in nats, of a frequency distribution.

    H = -sum(p_i * ln(p_i)) with p_i = x_i / sum(x). Zero-count entries are
    excluded (0*ln(0) := 0); an empty distribution has entropy 0 by definition.
    """
    values = [v for v in counts.values() if v != 0]
    if any(v < 0 for v in values):
        raise ValidationError("entropy requires non-negative counts")
    if not values:
        return 0.0
    total = math.fsum(values)
    # the +0.0 normalizes -0.0 away (single-category distributions)
    return -math.fsum(v / total * math.log(v / total) for v in values) + 0.0


def pct_of_max_entropy(entropy_nats: float, n_categories: int) -> float:
    """Entropy as a percentage of the maximum entropy ln(n_categories).

    ``n_categories`` is the number of possible SCs in the whole classification
    system, not the number observed in one distribution.
    """
    if n_categories < 2:
        raise ValidationError("n_categories must be >= 2 (otherwise the maximum entropy is 0)")
    if entropy_nats < 0:
        raise ValidationError("entropy must be non-negative")
    return 100.0 * entropy_nats / math.log(n_categories)


def raw_diversity(profile: CitationProfile) -> int:
    """Number of distinct SCs with a nonzero external citation count."""
    return len(profile.external_counts)


def ebdi_value(pct_internal: float, pct_hmax: float) -> float:
    """The indicator ratio itself: pct_internal / (pct_hmax + 1).

    Both arguments are percentages in [0, 100]; the +1 is in percentage units.
    A rounding-sized overshoot of the bounds is clamped rather than rejected,
    so a maximal-entropy distribution computing to 100+1e-15 still scores.
    """
    if not -_CHECK_TOL <= pct_internal <= 100 + _CHECK_TOL:
        raise ValidationError("pct_internal must lie in [0, 100]")
    if not -_CHECK_TOL <= pct_hmax <= 100 + _CHECK_TOL:
        raise ValidationError("pct_hmax must lie in [0, 100]")
    return min(max(pct_internal, 0.0), 100.0) / (min(max(pct_hmax, 0.0), 100.0) + 1.0)


def build_profile(
    corpus: Corpus,
    unit_id: str,
    focal_sc: str,
    dimension: Dimension,
    counting_mode: CountingMode = CountingMode.WHOLE,
) -> CitationProfile:
    """Classify every edge of a unit in one dimension as internal or external.

    The unit may be a journal (the focal SC must be one of its memberships) or
    a subject category (the focal SC must be the category itself; the profile
    then aggregates the edges of every member journal).

    Internal edges add their count to ``internal_count``. External edges add
    their count once to ``external_total`` and distribute it over the
    partner's SCs according to ``counting_mode``. SCs that would receive a
    zero count never appear in the map.
    """
    if focal_sc not in corpus.sc_registry:
        raise ValidationError(f"unknown sc_id {focal_sc!r}")

    journal = corpus.journals.get(unit_id)
    if journal is not None:
        if focal_sc not in journal.sc_memberships:
            raise ValidationError(
                f"focal SC {focal_sc!r} is not among the memberships of journal {unit_id!r}"
            )
        member_journals: tuple[str, ...] = (unit_id,)
    elif unit_id in corpus.sc_registry:
        if focal_sc != unit_id:
            raise ValidationError(
                f"a subject-category unit is profiled against itself; got unit {unit_id!r} "
                f"with focal SC {focal_sc!r}"
            )
        member_journals = corpus.journals_in(unit_id)
    else:
        raise ValidationError(f"unknown unit {unit_id!r}")

    internal = 0.0
    external_total = 0.0
    external: dict[str, float] = {}
    for member in member_journals:
        for edge in corpus.edges_for(member, dimension):
            if edge.count == 0:
                continue
            if is_internal(corpus, edge.partner_journal, focal_sc):
                internal += edge.count
                continue
            external_total += edge.count
            partner_scs = corpus.journals[edge.partner_journal].sc_memberships
            if counting_mode is CountingMode.WHOLE:
                share = float(edge.count)
            else:
                share = edge.count / len(partner_scs)
            for sc_id in partner_scs:
                external[sc_id] = external.get(sc_id, 0.0) + share

    return CitationProfile(
        unit_id=unit_id,
        focal_sc=focal_sc,
        dimension=dimension,
        counting_mode=counting_mode,
        internal_count=internal,
        external_counts=dict(sorted(external.items())),
        external_total=external_total,
    )


def distribution_stats(external_counts: Mapping[str, float], n_categories: int) -> DistributionStats:
    """Entropy, maximum entropy, percentage of maximum, and raw diversity."""
    entropy = shannon_entropy(external_counts)
    pct_hmax = pct_of_max_entropy(entropy, n_categories)  # validates n_categories >= 2
    return DistributionStats(
        entropy=entropy,
        hmax=math.log(n_categories),
        pct_hmax=pct_hmax,
        raw_diversity=sum(1 for v in external_counts.values() if v != 0),
    )


def compute_ebdi(profile: CitationProfile, n_categories: int) -> EbdiScore:
    """Indicator score for one profile.

    Raises :class:`NoCitationsError` when the profile has no citations at all
    in its dimension; callers report that as a missing value, never as 0.
    """
    if profile.total <= 0:
        raise NoCitationsError(
            f"no citations in dimension {profile.dimension.value} for unit "
            f"{profile.unit_id!r} (focal SC {profile.focal_sc!r})"
        )
    stats = distribution_stats(profile.external_counts, n_categories)
    pct_internal = 100.0 * (profile.internal_count / profile.total)
    return EbdiScore(
        unit_id=profile.unit_id,
        focal_sc=profile.focal_sc,
        dimension=profile.dimension,
        pct_internal=pct_internal,
        pct_hmax=stats.pct_hmax,
        ebdi=ebdi_value(pct_internal, stats.pct_hmax),
        stats=stats,
    )


def compute_journal_indicators(
    corpus: Corpus,
    unit_id: str,
    focal_sc: str,
    counting_mode: CountingMode = CountingMode.WHOLE,
) -> tuple[EbdiScore | None, EbdiScore | None]:
    """Indicator scores for both dimensions of one unit: (cited, citing).

    A dimension with zero citations yields None (missing), not a score.
    Works for journal units and, with ``unit_id == focal_sc``, for whole
    subject categories.
    """
    scores: list[EbdiScore | None] = []
    for dimension in (Dimension.CITED, Dimension.CITING):
        profile = build_profile(corpus, unit_id, focal_sc, dimension, counting_mode)
        try:
            scores.append(compute_ebdi(profile, corpus.n_categories))
        except NoCitationsError:
            scores.append(None)
    return scores[0], scores[1]

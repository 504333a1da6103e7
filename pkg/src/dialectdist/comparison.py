"""Concept-by-concept comparison of two wordlists and the pairwise aggregates.

For each variety pair this yields the average similarity and distance, the
number of concepts that are completely similar (score 1.0) or completely
different (score 0.0), and both counts as percentages of a denominator,
which by default is the full concept-list length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Sequence

from .exceptions import NoOverlapError
from .metrics import Metric, resolve_metric
from .wordlist import ConceptList, Wordlist


class VariantPolicy(str, Enum):
    MAX = "max"
    MEAN = "mean"
    FIRST = "first"


class DenominatorMode(str, Enum):
    FULL = "full"
    ALIGNED = "aligned"


class ConceptStatus(str, Enum):
    SCORED = "scored"
    MISSING_A = "missing_a"
    MISSING_B = "missing_b"
    MISSING_BOTH = "missing_both"


@dataclass(frozen=True)
class ConceptScore:
    concept_id: int
    status: ConceptStatus
    score: float | None = None
    best_pair: tuple[str, str] | None = None

    def __post_init__(self):
        if (self.status is ConceptStatus.SCORED) != (self.score is not None):
            raise ValueError("a concept has a score exactly when its status is 'scored'")


def score_concept(
    forms_a: Sequence[str],
    forms_b: Sequence[str],
    metric: str | Metric = "jaro",
    policy: VariantPolicy | str = VariantPolicy.MAX,
) -> tuple[float, tuple[str, str]]:
    """Score one concept across the variant cross-product.

    Returns ``(score, best_pair)``. Under ``max`` the first pair reaching the
    maximum is reported; under ``mean`` the pair whose score lies closest to
    the mean (earliest on ties); under ``first`` the two first-listed forms.
    """
    if not forms_a or not forms_b:
        raise ValueError("score_concept needs at least one form on each side")
    _, fn = resolve_metric(metric)
    policy = VariantPolicy(policy)
    if policy is VariantPolicy.FIRST:
        pair = (forms_a[0], forms_b[0])
        return fn(*pair), pair

    scored = [((x, y), fn(x, y)) for x in forms_a for y in forms_b]
    if policy is VariantPolicy.MAX:
        best_pair, best = scored[0]
        for pair, s in scored[1:]:
            if s > best:
                best_pair, best = pair, s
        return best, best_pair

    # fsum keeps the mean independent of the cross-product order
    mean = math.fsum(s for _, s in scored) / len(scored)
    best_pair = min(scored, key=lambda item: abs(item[1] - mean))[0]
    return mean, best_pair


def percentage(count: int, denominator: int) -> float:
    """``100 * count / denominator``, unrounded."""
    if denominator <= 0:
        raise ValueError(f"denominator must be positive, got {denominator}")
    if not 0 <= count <= denominator:
        raise ValueError(f"count {count} outside [0, {denominator}]")
    return 100.0 * count / denominator


@dataclass(frozen=True)
class PairwiseComparison:
    pair: tuple[str, str]
    metric: str
    policy: VariantPolicy
    denominator_mode: DenominatorMode
    concept_scores: tuple[ConceptScore, ...] = field(repr=False)
    avg_similarity: float
    avg_distance: float
    n_completely_similar: int
    n_completely_different: int
    pct_completely_similar: float
    pct_completely_different: float
    denominator: int
    aligned_count: int

    @property
    def label(self) -> str:
        return f"{self.pair[0]}-{self.pair[1]}"

    def scored(self):
        return [cs for cs in self.concept_scores if cs.status is ConceptStatus.SCORED]


def compare_pair(
    list_a: Wordlist,
    list_b: Wordlist,
    concept_list: ConceptList,
    metric: str | Metric = "jaro",
    policy: VariantPolicy | str = VariantPolicy.MAX,
    denominator_mode: DenominatorMode | str = DenominatorMode.FULL,
) -> PairwiseComparison:
    """Score every concept attested in both lists and aggregate."""
    metric_name, fn = resolve_metric(metric)
    policy = VariantPolicy(policy)
    denominator_mode = DenominatorMode(denominator_mode)
    for wl in (list_a, list_b):
        stray = [cid for cid in wl.entries if cid not in concept_list]
        if stray:
            raise ValueError(
                f"wordlist {wl.variety} has concept ids {stray[:5]} outside concept list {concept_list.name!r}"
            )

    concept_scores = []
    for cid in concept_list.ids:
        in_a, in_b = cid in list_a, cid in list_b
        if in_a and in_b:
            score, pair = score_concept(list_a.forms(cid), list_b.forms(cid), fn, policy)
            concept_scores.append(ConceptScore(cid, ConceptStatus.SCORED, score, pair))
        elif in_a:
            concept_scores.append(ConceptScore(cid, ConceptStatus.MISSING_B))
        elif in_b:
            concept_scores.append(ConceptScore(cid, ConceptStatus.MISSING_A))
        else:
            concept_scores.append(ConceptScore(cid, ConceptStatus.MISSING_BOTH))

    scores = [cs.score for cs in concept_scores if cs.status is ConceptStatus.SCORED]
    if not scores:
        raise NoOverlapError((list_a.variety, list_b.variety))
    aligned = len(scores)
    avg = math.fsum(scores) / aligned
    n_same = sum(1 for s in scores if s == 1.0)
    n_diff = sum(1 for s in scores if s == 0.0)
    denominator = len(concept_list) if denominator_mode is DenominatorMode.FULL else aligned
    return PairwiseComparison(
        pair=(list_a.variety, list_b.variety),
        metric=metric_name,
        policy=policy,
        denominator_mode=denominator_mode,
        concept_scores=tuple(concept_scores),
        avg_similarity=avg,
        avg_distance=1.0 - avg,
        n_completely_similar=n_same,
        n_completely_different=n_diff,
        pct_completely_similar=percentage(n_same, denominator),
        pct_completely_different=percentage(n_diff, denominator),
        denominator=denominator,
        aligned_count=aligned,
    )


def all_pairs(
    wordlists: Sequence[Wordlist],
    concept_list: ConceptList,
    metric: str | Metric = "jaro",
    policy: VariantPolicy | str = VariantPolicy.MAX,
    denominator_mode: DenominatorMode | str = DenominatorMode.FULL,
) -> list[PairwiseComparison]:
    """One comparison per unordered pair, in input order: (0,1), (0,2), ..., (1,2), ..."""
    if len(wordlists) < 2:
        raise ValueError("all_pairs needs at least two wordlists")
    seen = set()
    for wl in wordlists:
        if wl.variety in seen:
            raise ValueError(f"duplicate variety id {wl.variety!r}")
        seen.add(wl.variety)
    return [
        compare_pair(a, b, concept_list, metric, policy, denominator_mode)
        for a, b in combinations(wordlists, 2)
    ]

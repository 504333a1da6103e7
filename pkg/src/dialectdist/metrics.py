"""String similarity measures over Unicode scalar values.

Every registered metric maps a pair of normalized forms to a score in
[0, 1], is symmetric, and scores identical strings 1.0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .exceptions import UnknownMetricError

WINKLER_SCALING = 0.1
WINKLER_MAX_PREFIX = 4


@dataclass(frozen=True)
class MatchStats:
    """Jaro matching counts; ``t`` is already halved."""

    m: int
    t: float
    len_a: int
    len_b: int


def match_window(len_a: int, len_b: int) -> int:
    return max(0, max(len_a, len_b) // 2 - 1)


def jaro_match_stats(a: str, b: str) -> MatchStats:
    len_a, len_b = len(a), len(b)
    window = match_window(len_a, len_b)
    matched_b = [False] * len_b
    a_matches = []
    m = 0
    for i, ch in enumerate(a):
        lo = max(0, i - window)
        hi = min(len_b, i + window + 1)
        for j in range(lo, hi):
            if not matched_b[j] and b[j] == ch:
                matched_b[j] = True
                a_matches.append(ch)
                m += 1
                break
    b_matches = [ch for ch, hit in zip(b, matched_b) if hit]
    half = sum(x != y for x, y in zip(a_matches, b_matches))
    return MatchStats(m, half / 2, len_a, len_b)


def _jaro_from_stats(s: MatchStats) -> float:
    return (s.m / s.len_a + s.m / s.len_b + (s.m - s.t) / s.m) / 3


def jaro_similarity(a: str, b: str) -> float:
    """Jaro similarity of two normalized forms.

    Both empty gives 1.0; one empty or no matching characters gives 0.0.
    """
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    if a == b:
        return 1.0
    stats = jaro_match_stats(a, b)
    if stats.m == 0:
        return 0.0
    return _jaro_from_stats(stats)


def jaro_distance(a: str, b: str) -> float:
    return 1.0 - jaro_similarity(a, b)


def jaro_similarity_naive(a, b):
    """Literal full-scan transcription of the Jaro definition. Test oracle only."""
    la = len(a)
    lb = len(b)
    if la == 0 and lb == 0:
        return 1.0
    if la == 0 or lb == 0:
        return 0.0
    window = max(0, max(la, lb) // 2 - 1)
    used_a = [False] * la
    used_b = [False] * lb
    for i in range(la):
        for j in range(lb):
            if abs(i - j) <= window and not used_b[j] and a[i] == b[j]:
                used_a[i] = True
                used_b[j] = True
                break
    m = 0
    for i in range(la):
        if used_a[i]:
            m += 1
    if m == 0:
        return 0.0
    seq_a = []
    for i in range(la):
        if used_a[i]:
            seq_a.append(a[i])
    seq_b = []
    for j in range(lb):
        if used_b[j]:
            seq_b.append(b[j])
    out_of_order = 0
    for k in range(m):
        if seq_a[k] != seq_b[k]:
            out_of_order += 1
    t = out_of_order / 2
    return (m / la + m / lb + (m - t) / m) / 3


def common_prefix_length(a: str, b: str, limit: int = WINKLER_MAX_PREFIX) -> int:
    n = 0
    for x, y in zip(a[:limit], b[:limit]):
        if x != y:
            break
        n += 1
    return n


def jaro_winkler_similarity(a: str, b: str) -> float:
    """Jaro score boosted by the shared prefix (scaling 0.1, at most 4 characters)."""
    sim = jaro_similarity(a, b)
    prefix = common_prefix_length(a, b)
    return sim + prefix * WINKLER_SCALING * (1.0 - sim)


def levenshtein_distance(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ca != cb))
            )
        previous = current
    return previous[-1]


def levenshtein_similarity(a: str, b: str) -> float:
    """1 - edit distance / length of the longer form."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein_distance(a, b) / longest


Metric = Callable[[str, str], float]

METRICS: dict[str, Metric] = {
    "jaro": jaro_similarity,
    "jaro_winkler": jaro_winkler_similarity,
    "levenshtein_norm": levenshtein_similarity,
}


def metric_lookup(name: str) -> Metric:
    try:
        return METRICS[name]
    except (KeyError, TypeError):
        raise UnknownMetricError(name, METRICS) from None


def resolve_metric(metric: str | Metric) -> tuple[str, Metric]:
    """Accept a registered name or a callable; return ``(name, function)``."""
    if callable(metric):
        name = next((k for k, v in METRICS.items() if v is metric), getattr(metric, "__name__", "custom"))
        return name, metric
    return metric, metric_lookup(metric)

"""Input checks shared by the estimators."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array, check_symmetric

from .classification import SYMMETRY_TOL, DistanceMatrix
from .wordlist import ConceptList, Wordlist


def check_wordlists(X, concept_list: ConceptList | None = None, min_count: int = 1) -> list[Wordlist]:
    wordlists = list(X)
    if len(wordlists) < min_count:
        raise ValueError(f"expected at least {min_count} wordlists, got {len(wordlists)}")
    for wl in wordlists:
        if not isinstance(wl, Wordlist):
            raise TypeError(f"expected Wordlist objects, got {type(wl).__name__}")
        if concept_list is not None:
            stray = [cid for cid in wl.entries if cid not in concept_list]
            if stray:
                raise ValueError(f"{wl.variety}: concept ids {stray[:5]} not in {concept_list.name!r}")
    return wordlists


def check_distance_matrix(X, labels=None) -> DistanceMatrix:
    """Coerce ``X`` (DistanceMatrix or square array-like) into a validated DistanceMatrix."""
    if isinstance(X, DistanceMatrix):
        if labels is not None and tuple(labels) != X.labels:
            raise ValueError("labels disagree with the DistanceMatrix labels")
        return X
    arr = check_array(X, dtype=np.float64, ensure_min_samples=2, ensure_min_features=2)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"a precomputed distance matrix must be square, got {arr.shape}")
    check_symmetric(arr, tol=SYMMETRY_TOL, raise_exception=True)
    if labels is None:
        labels = [f"x{i}" for i in range(arr.shape[0])]
    return DistanceMatrix(tuple(labels), arr)

"""scikit-learn compatible wrappers around the comparison and clustering code."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .classification import build_matrix, cut_tree, to_newick, upgma
from .comparison import all_pairs, compare_pair
from .validation import check_distance_matrix, check_wordlists
from .wordlist import default_concept_list


class WordlistDistance(TransformerMixin, BaseEstimator):
    """Pairwise distances between varieties from their wordlists.

    ``fit`` compares every pair of the given wordlists; ``transform`` maps new
    wordlists to their distances from each fitted variety.

    Parameters
    ----------
    metric : {"jaro", "jaro_winkler", "levenshtein_norm"}, default="jaro"
    policy : {"max", "mean", "first"}, default="max"
        How several variants of one concept are combined.
    denominator : {"full", "aligned"}, default="full"
        Denominator for the completely-similar/different percentages.
    concept_list : ConceptList, default=None
        Governing concept list; the bundled 207-entry list when None.

    Attributes
    ----------
    concept_list_ : ConceptList
    varieties_ : tuple of str
    comparisons_ : list of PairwiseComparison
    matrix_ : DistanceMatrix
    """

    def __init__(self, metric="jaro", policy="max", denominator="full", concept_list=None):
        self.metric = metric
        self.policy = policy
        self.denominator = denominator
        self.concept_list = concept_list

    def fit(self, X, y=None):
        self.concept_list_ = self.concept_list if self.concept_list is not None else default_concept_list()
        wordlists = check_wordlists(X, self.concept_list_, min_count=2)
        self.comparisons_ = all_pairs(wordlists, self.concept_list_, self.metric, self.policy, self.denominator)
        self.matrix_ = build_matrix(self.comparisons_)
        self.varieties_ = tuple(wl.variety for wl in wordlists)
        self.wordlists_ = wordlists
        return self

    def transform(self, X):
        """Distances of shape ``(len(X), n_fitted_varieties)``."""
        check_is_fitted(self, "wordlists_")
        wordlists = check_wordlists(X, self.concept_list_)
        out = np.empty((len(wordlists), len(self.wordlists_)))
        for i, wl in enumerate(wordlists):
            for j, ref in enumerate(self.wordlists_):
                c = compare_pair(wl, ref, self.concept_list_, self.metric, self.policy, self.denominator)
                out[i, j] = c.avg_distance
        return out

    def fit_transform(self, X, y=None):
        return np.array(self.fit(X).matrix_.cells)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "varieties_")
        return np.asarray(self.varieties_, dtype=object)


class UPGMAClustering(ClusterMixin, BaseEstimator):
    """UPGMA on a precomputed distance matrix.

    ``fit`` accepts a :class:`DistanceMatrix` or a square array (with optional
    ``labels``). ``labels_`` assigns flat cluster indices after cutting the
    tree into ``n_clusters`` groups, numbered by first leaf in input order.
    """

    def __init__(self, n_clusters=1):
        self.n_clusters = n_clusters

    def fit(self, X, y=None, labels=None):
        matrix = check_distance_matrix(X, labels)
        self.matrix_ = matrix
        self.tree_ = upgma(matrix)
        self.varieties_ = matrix.labels
        self.merge_heights_ = np.sort([node.height for node in self.tree_.merges()])
        groups = cut_tree(self.tree_, self.n_clusters)
        order = sorted(groups, key=lambda g: min(matrix.labels.index(x) for x in g))
        assignment = {leaf: k for k, g in enumerate(order) for leaf in g}
        self.labels_ = np.array([assignment[lab] for lab in matrix.labels])
        return self

    def to_newick(self, digits=10):
        check_is_fitted(self, "tree_")
        return to_newick(self.tree_, digits)

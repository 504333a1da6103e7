"""Distance matrices, UPGMA trees and Newick output."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Sequence

import numpy as np

from .comparison import PairwiseComparison
from .exceptions import AnalysisError, InputError, ParseError
from .wordlist import _read_text

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    labels: tuple[str, ...]
    cells: np.ndarray

    def __post_init__(self):
        labels = tuple(self.labels)
        cells = np.array(self.cells, dtype=float)
        cells.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "cells", cells)
        n = len(labels)
        if len(set(labels)) != n:
            raise ValueError("distance matrix labels must be unique")
        if cells.shape != (n, n):
            raise ValueError(f"expected a {n}x{n} matrix, got shape {cells.shape}")
        if not np.all(np.isfinite(cells)):
            raise ValueError("distance matrix contains non-finite values")
        if np.any(np.diag(cells) != 0.0):
            raise ValueError("distance matrix diagonal must be zero")
        if np.any(np.abs(cells - cells.T) > SYMMETRY_TOL):
            raise ValueError("distance matrix is not symmetric")
        if np.any(cells < 0.0) or np.any(cells > 1.0):
            raise ValueError("distances must lie in [0, 1]")

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.cells, other.cells)

    def distance(self, a: str, b: str) -> float:
        return float(self.cells[self.labels.index(a), self.labels.index(b)])

    @classmethod
    def from_pairs(cls, distances: dict[tuple[str, str], float], labels: Sequence[str] | None = None):
        """Build from ``{(a, b): d}`` covering each unordered pair once."""
        if labels is None:
            labels = []
            for a, b in distances:
                for x in (a, b):
                    if x not in labels:
                        labels.append(x)
        index = {lab: i for i, lab in enumerate(labels)}
        cells = np.zeros((len(labels), len(labels)))
        filled = set()
        for (a, b), d in distances.items():
            key = frozenset((a, b))
            if a == b:
                raise ValueError(f"self pair {a}-{b}")
            if key in filled:
                raise ValueError(f"duplicate pair {a}-{b}")
            filled.add(key)
            cells[index[a], index[b]] = cells[index[b], index[a]] = d
        for a, b in combinations(labels, 2):
            if frozenset((a, b)) not in filled:
                raise ValueError(f"missing pair {a}-{b}")
        return cls(tuple(labels), cells)


def build_matrix(comparisons: Sequence[PairwiseComparison]) -> DistanceMatrix:
    """Assemble the avg_distance of each comparison into a symmetric matrix.

    Labels follow order of first appearance.
    """
    if not comparisons:
        raise AnalysisError("no comparisons to build a matrix from")
    distances = {}
    seen = set()
    for c in comparisons:
        key = frozenset(c.pair)
        if key in seen:
            raise AnalysisError(f"duplicate pair {c.pair[0]}-{c.pair[1]}")
        seen.add(key)
        distances[c.pair] = c.avg_distance
    try:
        return DistanceMatrix.from_pairs(distances)
    except ValueError as exc:
        raise AnalysisError(str(exc)) from None


def read_matrix_csv(path) -> DistanceMatrix:
    """Read a labelled square CSV: header ``,A,B,...`` then one ``A,d,d,...`` row per label."""
    source = str(path)
    text = _read_text(path)
    rows = [
        (n, row)
        for n, row in enumerate(csv.reader(io.StringIO(text, newline="")), start=1)
        if row and "".join(row).strip() and not row[0].startswith("#")
    ]
    if not rows:
        raise ParseError("empty matrix file", source)
    _, header = rows[0]
    labels = [c.strip() for c in header[1:]]
    if len(rows) - 1 != len(labels):
        raise ParseError(f"{len(labels)} column labels but {len(rows) - 1} data rows", source)
    cells = []
    for (n, row), expected in zip(rows[1:], labels):
        if len(row) != len(labels) + 1:
            raise ParseError(f"expected {len(labels) + 1} columns, found {len(row)}", source, n)
        if row[0].strip() != expected:
            raise ParseError(f"row label {row[0].strip()!r} does not match column label {expected!r}", source, n)
        try:
            cells.append([float(c) for c in row[1:]])
        except ValueError as exc:
            raise ParseError(f"non-numeric cell ({exc})", source, n) from None
    try:
        return DistanceMatrix(tuple(labels), np.array(cells))
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from None


def format_matrix_csv(matrix: DistanceMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(matrix.labels))
    for label, row in zip(matrix.labels, matrix.cells):
        writer.writerow([label] + [repr(float(x)) for x in row])
    return buf.getvalue()


@dataclass(frozen=True)
class ClusterTree:
    """A leaf (``label`` set, no children) or a binary merge at ``height``."""

    label: str | None = None
    children: tuple["ClusterTree", ...] = field(default=())
    height: float = 0.0

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> list[str]:
        if self.is_leaf:
            return [self.label]
        return [leaf for child in self.children for leaf in child.leaves()]

    def merges(self) -> list["ClusterTree"]:
        """Internal nodes in post-order."""
        if self.is_leaf:
            return []
        return [n for c in self.children for n in c.merges()] + [self]

    def clades(self) -> set[frozenset[str]]:
        """Leaf sets of every internal node; equal clade sets mean equal topology."""
        return {frozenset(n.leaves()) for n in self.merges()}


def _cluster_key(node: ClusterTree):
    leaves = node.leaves()
    return len(leaves), min(leaves)


def upgma(matrix: DistanceMatrix) -> ClusterTree:
    """Unweighted pair-group clustering with arithmetic means.

    Merges the closest pair of clusters at height ``d / 2``; distances to the
    merged cluster are size-weighted means. Exact ties go to the pair whose
    smallest member labels sort first. Children are ordered smaller cluster
    first, then by smallest label.
    """
    n = len(matrix.labels)
    if n < 2:
        raise AnalysisError("UPGMA needs at least two labels")
    nodes = {i: ClusterTree(label=lab) for i, lab in enumerate(matrix.labels)}
    sizes = {i: 1 for i in range(n)}
    names = {i: lab for i, lab in enumerate(matrix.labels)}  # smallest label per cluster
    dist = {frozenset((i, j)): float(matrix.cells[i, j]) for i, j in combinations(range(n), 2)}
    next_id = n
    while len(nodes) > 1:
        best = None
        for i, j in combinations(sorted(nodes), 2):
            d = dist[frozenset((i, j))]
            tie = tuple(sorted((names[i], names[j])))
            if best is None or (d, tie) < (best[0], best[1]):
                best = (d, tie, i, j)
        d, _, i, j = best
        children = tuple(sorted((nodes.pop(i), nodes.pop(j)), key=_cluster_key))
        merged = ClusterTree(children=children, height=d / 2)
        k = next_id
        next_id += 1
        for other in nodes:
            dist[frozenset((k, other))] = (
                sizes[i] * dist[frozenset((i, other))] + sizes[j] * dist[frozenset((j, other))]
            ) / (sizes[i] + sizes[j])
        nodes[k] = merged
        sizes[k] = sizes[i] + sizes[j]
        names[k] = min(names[i], names[j])
    return nodes.popitem()[1]


_NEWICK_UNSAFE = re.compile(r"[\s(),:;\[\]']")


def _newick_label(label: str) -> str:
    if _NEWICK_UNSAFE.search(label):
        return "'" + label.replace("'", "''") + "'"
    return label


def _fmt_length(x: float, digits: int) -> str:
    text = f"{x:.{digits}g}"
    return "0" if text == "-0" else text


def to_newick(tree: ClusterTree, digits: int = 10) -> str:
    """Newick text with branch lengths (parent height minus child height)."""

    def render(node, parent_height):
        if node.is_leaf:
            text = _newick_label(node.label)
        else:
            text = "(" + ",".join(render(c, node.height) for c in node.children) + ")"
        if parent_height is None:
            return text
        return f"{text}:{_fmt_length(parent_height - node.height, digits)}"

    return render(tree, None) + ";"


def cut_tree(tree: ClusterTree, n_clusters: int) -> list[frozenset[str]]:
    """Undo the top ``n_clusters - 1`` merges; return the resulting leaf groups."""
    n_leaves = len(tree.leaves())
    if not 1 <= n_clusters <= n_leaves:
        raise ValueError(f"n_clusters must be in [1, {n_leaves}]")
    groups = [tree]
    while len(groups) < n_clusters:
        # split the highest internal node; later-built nodes win ties
        candidates = [g for g in groups if not g.is_leaf]
        top = max(candidates, key=lambda g: g.height)
        groups.remove(top)
        groups.extend(top.children)
    return [frozenset(g.leaves()) for g in groups]


def write_newick(tree: ClusterTree, path) -> None:
    Path(path).write_text(to_newick(tree) + "\n", encoding="utf-8")

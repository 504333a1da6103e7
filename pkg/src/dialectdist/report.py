"""Report bundles and their CSV / JSON / Markdown renderings.

Tables follow the usual lexicostatistics layout: one column per variety
pair, with rows for average similarity and distance, exact-match counts
and the same counts as percentages. JSON keeps unrounded values next to
display strings; CSV and Markdown show rounded values only.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import __version__
from .classification import DistanceMatrix
from .comparison import PairwiseComparison
from .wordlist import NormalizationOptions

FORMATS = ("markdown", "csv", "json")
METRIC_TITLES = {
    "jaro": "Jaro",
    "jaro_winkler": "Jaro-Winkler",
    "levenshtein_norm": "Levenshtein (normalized)",
}


@dataclass(frozen=True)
class RunConfig:
    inputs: tuple[str, ...] = ()
    concepts: str | None = None
    metric: str = "jaro"
    policy: str = "max"
    denominator: str = "full"
    normalization: NormalizationOptions = NormalizationOptions()
    format: str = "markdown"
    round_digits: int = 2
    out: str | None = None
    matrix_file: str | None = None
    columns: str | None = None

    def to_dict(self):
        d = asdict(self)
        d["inputs"] = list(self.inputs)
        d["concepts"] = self.concepts or "bundled:swadesh207.tsv"
        return d


@dataclass
class ReportBundle:
    config: RunConfig
    comparisons: list[PairwiseComparison] = field(default_factory=list)
    matrix: DistanceMatrix | None = None
    tree: str | None = None
    validation: dict | None = None

    @property
    def metadata(self):
        return {
            "toolkit": "dialectdist",
            "version": __version__,
            "config": self.config.to_dict(),
            "averaging": "unweighted mean over concepts attested in both varieties",
            "completely_similar": "concept score == 1.0",
            "completely_different": "concept score == 0.0",
        }

    @property
    def columns(self) -> list[str]:
        return [c.label for c in self.comparisons]


def _num(x, digits):
    return f"{x:.{digits}f}"


def _pct(x, digits):
    return f"{x:.{digits}f}%"


def table_rows(bundle: ReportBundle, digits: int | None = None):
    """The three tables as ``{title: [(row label, [cells...]), ...]}`` with display strings."""
    d = bundle.config.round_digits if digits is None else digits
    cs = bundle.comparisons
    return {
        "similarity": [
            ("Similarity", [_num(c.avg_similarity, d) for c in cs]),
            ("Distance", [_num(c.avg_distance, d) for c in cs]),
        ],
        "counts": [
            ("Completely Similar", [str(c.n_completely_similar) for c in cs]),
            ("Completely Different", [str(c.n_completely_different) for c in cs]),
            ("Aligned Concepts", [str(c.aligned_count) for c in cs]),
        ],
        "percentages": [
            ("Completely Similar", [_pct(c.pct_completely_similar, d) for c in cs]),
            ("Completely Different", [_pct(c.pct_completely_different, d) for c in cs]),
            ("Denominator", [str(c.denominator) for c in cs]),
        ],
    }


def _md_table(header: Sequence[str], rows):
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join(["---"] * len(header)) + "|"]
    for label, cells in rows:
        lines.append("| " + " | ".join([label, *cells]) + " |")
    return "\n".join(lines)


def _matrix_md(matrix: DistanceMatrix, digits):
    rows = [(lab, [_num(x, digits) for x in row]) for lab, row in zip(matrix.labels, matrix.cells)]
    return _md_table(["", *matrix.labels], rows)


def _render_markdown(bundle: ReportBundle) -> str:
    cfg = bundle.config
    d = cfg.round_digits
    title = METRIC_TITLES.get(cfg.metric, cfg.metric)
    out = ["# Dialect distance report", "", "## Run", ""]
    meta = bundle.metadata
    for key, value in meta["config"].items():
        if key == "normalization":
            value = ", ".join(f"{k}={v}" for k, v in value.items())
        elif isinstance(value, list):
            value = ", ".join(value) or "-"
        elif value is None:
            value = "-"
        out.append(f"- {key}: {value}")
    out.append(f"- version: {meta['version']}")
    out.append(f"- averaging: {meta['averaging']}")
    out.append("")
    if bundle.comparisons:
        tables = table_rows(bundle)
        cols = bundle.columns
        out += ["## Similarity/Distance", "", _md_table([f"{title} (Avg)", *cols], tables["similarity"]), ""]
        out += ["## Completely Similar or Different (counts)", "", _md_table(["Count", *cols], tables["counts"]), ""]
        out += [
            "## Completely Similar or Different (percentages)",
            "",
            _md_table(["Percentage", *cols], tables["percentages"]),
            "",
        ]
    if bundle.matrix is not None:
        out += ["## Distance matrix", "", _matrix_md(bundle.matrix, d), ""]
    if bundle.tree is not None:
        out += ["## UPGMA tree", "", "```", bundle.tree, "```", ""]
    if bundle.validation is not None:
        out += ["## Validation", ""]
        for v in bundle.validation["varieties"]:
            out.append(f"- {v['variety']}: coverage {v['coverage']}/{v['total']}, script {v['script']}")
        for issue in bundle.validation["issues"]:
            out.append(f"- {issue['severity']}: {issue['message']}")
        out.append("")
    return "\n".join(out)


def _render_csv(bundle: ReportBundle) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["table", "row", *bundle.columns])
    for key, value in bundle.metadata["config"].items():
        if isinstance(value, dict):
            value = ";".join(f"{k}={v}" for k, v in value.items())
        elif isinstance(value, list):
            value = ";".join(value)
        writer.writerow(["metadata", key, "" if value is None else value])
    writer.writerow(["metadata", "version", __version__])
    if bundle.comparisons:
        for table, rows in table_rows(bundle).items():
            for label, cells in rows:
                writer.writerow([table, label, *cells])
    if bundle.matrix is not None:
        d = bundle.config.round_digits
        writer.writerow(["matrix", "", *bundle.matrix.labels])
        for lab, row in zip(bundle.matrix.labels, bundle.matrix.cells):
            writer.writerow(["matrix", lab, *[_num(x, d) for x in row]])
    if bundle.tree is not None:
        writer.writerow(["tree", "newick", bundle.tree])
    return buf.getvalue()


def comparison_to_dict(c: PairwiseComparison, digits: int) -> dict:
    return {
        "pair": list(c.pair),
        "label": c.label,
        "metric": c.metric,
        "policy": c.policy.value,
        "denominator_mode": c.denominator_mode.value,
        "avg_similarity": c.avg_similarity,
        "avg_distance": c.avg_distance,
        "n_completely_similar": c.n_completely_similar,
        "n_completely_different": c.n_completely_different,
        "pct_completely_similar": c.pct_completely_similar,
        "pct_completely_different": c.pct_completely_different,
        "denominator": c.denominator,
        "aligned_count": c.aligned_count,
        "display": {
            "avg_similarity": _num(c.avg_similarity, digits),
            "avg_distance": _num(c.avg_distance, digits),
            "pct_completely_similar": _pct(c.pct_completely_similar, digits),
            "pct_completely_different": _pct(c.pct_completely_different, digits),
        },
        "concept_scores": [
            {
                "concept_id": s.concept_id,
                "status": s.status.value,
                **({"score": s.score, "best_pair": list(s.best_pair)} if s.score is not None else {}),
            }
            for s in c.concept_scores
        ],
    }


def _render_json(bundle: ReportBundle) -> str:
    d = bundle.config.round_digits
    doc = {"metadata": bundle.metadata, "pairs": bundle.columns}
    doc["comparisons"] = [comparison_to_dict(c, d) for c in bundle.comparisons]
    if bundle.matrix is not None:
        doc["matrix"] = {"labels": list(bundle.matrix.labels), "cells": bundle.matrix.cells.tolist()}
    if bundle.tree is not None:
        doc["tree"] = bundle.tree
    if bundle.validation is not None:
        doc["validation"] = bundle.validation
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_tables(bundle: ReportBundle, format: str = "markdown") -> str:
    if format == "markdown":
        return _render_markdown(bundle)
    if format == "csv":
        return _render_csv(bundle)
    if format == "json":
        return _render_json(bundle)
    raise ValueError(f"unknown format {format!r}; choose from {', '.join(FORMATS)}")

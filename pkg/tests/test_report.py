import csv
import io
import json

import pytest

from dialectdist.comparison import (
    ConceptScore,
    ConceptStatus,
    DenominatorMode,
    PairwiseComparison,
    VariantPolicy,
    all_pairs,
    percentage,
)
from dialectdist.report import ReportBundle, RunConfig, render_tables
from dialectdist.wordlist import read_wordlists


def make_comparison(pair, sim, same, diff, denominator=207):
    return PairwiseComparison(
        pair=pair,
        metric="jaro",
        policy=VariantPolicy.MAX,
        denominator_mode=DenominatorMode.FULL,
        concept_scores=(ConceptScore(1, ConceptStatus.SCORED, 1.0, ("a", "a")),),
        avg_similarity=sim,
        avg_distance=1 - sim,
        n_completely_similar=same,
        n_completely_different=diff,
        pct_completely_similar=percentage(same, denominator),
        pct_completely_different=percentage(diff, denominator),
        denominator=denominator,
        aligned_count=denominator,
    )


@pytest.fixture
def bundle():
    return ReportBundle(
        RunConfig(inputs=("x.tsv",)),
        [
            make_comparison(("Zaza", "Hawrami"), 0.5712345678901234, 10, 20),
            make_comparison(("Kurmanji", "Sorani"), 0.6812345678901234, 55, 23),
        ],
    )


def test_markdown_layout(bundle):
    text = render_tables(bundle, "markdown")
    assert "| Jaro (Avg) | Zaza-Hawrami | Kurmanji-Sorani |" in text
    assert "| Similarity | 0.57 | 0.68 |" in text
    assert "| Distance | 0.43 | 0.32 |" in text
    assert "| Completely Similar | 10 | 55 |" in text
    assert "| Completely Different | 20 | 23 |" in text
    assert "| Completely Similar | 4.83% | 26.57% |" in text
    assert "| Completely Different | 9.66% | 11.11% |" in text
    assert "- metric: jaro" in text


def test_tables_share_columns(bundle):
    text = render_tables(bundle, "markdown")
    headers = [line for line in text.splitlines() if line.startswith("| ") and "Zaza-Hawrami" in line]
    assert len(headers) == 3
    assert len({h.split("|", 2)[2] for h in headers}) == 1


def test_json_unrounded(bundle):
    doc = json.loads(render_tables(bundle, "json"))
    first = doc["comparisons"][0]
    assert first["avg_similarity"] == 0.5712345678901234
    assert abs(first["avg_similarity"] + first["avg_distance"] - 1) <= 1e-12
    assert first["display"]["avg_similarity"] == "0.57"
    assert first["pct_completely_similar"] == 100 * 10 / 207
    assert "tree" not in doc and "matrix" not in doc
    assert doc["metadata"]["config"]["policy"] == "max"
    assert doc["pairs"] == ["Zaza-Hawrami", "Kurmanji-Sorani"]


def test_json_tree_present(bundle):
    bundle.tree = "(A:0.1,B:0.1);"
    assert json.loads(render_tables(bundle, "json"))["tree"] == "(A:0.1,B:0.1);"


def test_csv(bundle):
    rows = list(csv.reader(io.StringIO(render_tables(bundle, "csv"))))
    assert rows[0] == ["table", "row", "Zaza-Hawrami", "Kurmanji-Sorani"]
    assert ["counts", "Completely Similar", "10", "55"] in rows
    assert ["percentages", "Completely Different", "9.66%", "11.11%"] in rows
    assert ["metadata", "metric", "jaro"] in rows


def test_rounding_digits(bundle):
    bundle.config = RunConfig(round_digits=3)
    assert "| Similarity | 0.571 | 0.681 |" in render_tables(bundle, "markdown")


def test_deterministic(swadesh, fixture207):
    def render(fmt):
        comps = all_pairs(read_wordlists(fixture207, swadesh), swadesh)
        return render_tables(ReportBundle(RunConfig(inputs=(str(fixture207),)), comps), fmt)

    for fmt in ("markdown", "csv", "json"):
        assert render(fmt) == render(fmt)


def test_unknown_format(bundle):
    with pytest.raises(ValueError):
        render_tables(bundle, "html")

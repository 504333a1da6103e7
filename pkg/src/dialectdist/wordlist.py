"""Concept lists, per-variety wordlists, form normalization and validation.

Wordlists are read from a long-format TSV::

    concept_id<TAB>gloss<TAB>variety<TAB>form

with one row per variant. A header row is required and ``#`` lines are
comments. Several varieties may share one file. Wide files (one column per
variety) are read through an explicit column mapping instead.
"""

from __future__ import annotations

import csv
import io
import re
import unicodedata
import warnings
from collections import Counter
from dataclasses import asdict, dataclass, field
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .exceptions import (
    DuplicateFormWarning,
    EncodingError,
    InputError,
    ParseError,
    ValidationError,
)

LONG_HEADER = ("concept_id", "gloss", "variety", "form")
CONCEPT_HEADER = ("concept_id", "gloss")
DEFAULT_CONCEPT_LIST = "swadesh207.tsv"

_WHITESPACE_RUN = re.compile(r"\s+")
# Letters whose Unicode name does not start with a script name.
_SCRIPTLESS_PREFIXES = {"MODIFIER"}


class EmptyFormError(ValueError):
    """The form is empty once normalized; callers treat the cell as absent."""


@dataclass(frozen=True)
class NormalizationOptions:
    case_fold: bool = True
    strip_punctuation: bool = True
    collapse_internal_whitespace: bool = True

    def to_dict(self):
        return asdict(self)


def _is_edge_junk(ch):
    return ch.isspace() or unicodedata.category(ch).startswith("P")


def normalize_form(raw: str, options: NormalizationOptions = NormalizationOptions()) -> str:
    """Return the comparison form of ``raw``.

    Steps: NFC composition, optional case folding, optional whitespace
    collapsing, optional removal of leading/trailing punctuation, trimming.
    The function is idempotent. Raises :class:`EmptyFormError` if nothing
    is left.
    """
    text = unicodedata.normalize("NFC", raw)
    if options.case_fold:
        # casefold can emit combining sequences (e.g. for dotted capital I)
        text = unicodedata.normalize("NFC", text.casefold())
    if options.collapse_internal_whitespace:
        text = _WHITESPACE_RUN.sub(" ", text)
    if options.strip_punctuation:
        start, end = 0, len(text)
        while start < end and _is_edge_junk(text[start]):
            start += 1
        while end > start and _is_edge_junk(text[end - 1]):
            end -= 1
        text = text[start:end]
    else:
        text = text.strip()
    # stripping can leave a combining mark at the front; recompose once more
    text = unicodedata.normalize("NFC", text)
    if not text:
        raise EmptyFormError(f"form {raw!r} is empty after normalization")
    return text


def char_script(ch: str) -> str | None:
    """Script name of a letter, from its Unicode character name; None for non-letters."""
    if not unicodedata.category(ch).startswith("L"):
        return None
    name = unicodedata.name(ch, "")
    if not name:
        return None
    head = name.split()[0]
    if head in _SCRIPTLESS_PREFIXES:
        return None
    return head.capitalize()


def dominant_script(texts: str | Iterable[str]) -> str:
    """Most frequent letter script across ``texts`` ("Common" when there are no letters)."""
    if isinstance(texts, str):
        texts = [texts]
    counts = Counter(s for text in texts for s in map(char_script, text) if s is not None)
    if not counts:
        return "Common"
    # highest count, alphabetical on ties
    return min(counts.items(), key=lambda kv: (-kv[1], kv[0]))[0]


@dataclass(frozen=True)
class Concept:
    id: int
    gloss: str

    def __post_init__(self):
        if not isinstance(self.id, int) or self.id < 1:
            raise ValueError(f"concept id must be a positive integer, got {self.id!r}")
        if not self.gloss.strip():
            raise ValueError(f"concept {self.id} has an empty gloss")


@dataclass(frozen=True)
class ConceptList:
    name: str
    concepts: tuple[Concept, ...]

    def __post_init__(self):
        object.__setattr__(self, "concepts", tuple(self.concepts))
        if not self.concepts:
            raise ValueError("a concept list needs at least one concept")
        for expected, concept in enumerate(self.concepts, start=1):
            if concept.id != expected:
                raise ValueError(
                    f"concept ids must be contiguous from 1; position {expected} has id {concept.id}"
                )

    def __len__(self):
        return len(self.concepts)

    def __iter__(self):
        return iter(self.concepts)

    def __contains__(self, concept_id):
        return isinstance(concept_id, int) and 1 <= concept_id <= len(self.concepts)

    @property
    def ids(self) -> range:
        return range(1, len(self.concepts) + 1)

    def gloss(self, concept_id: int) -> str:
        if concept_id not in self:
            raise KeyError(concept_id)
        return self.concepts[concept_id - 1].gloss


@dataclass(frozen=True)
class LexicalForm:
    raw: str
    normalized: str
    script: str

    @classmethod
    def from_raw(cls, raw: str, options: NormalizationOptions = NormalizationOptions()):
        normalized = normalize_form(raw, options)
        return cls(raw=raw, normalized=normalized, script=dominant_script(normalized))


@dataclass(frozen=True)
class Wordlist:
    """Forms attested for one variety, keyed by concept id.

    Absent concepts are missing keys; every present key maps to a non-empty
    tuple of distinct normalized forms.
    """

    variety: str
    entries: Mapping[int, tuple[LexicalForm, ...]]
    source: str = field(default="", compare=False)

    def __post_init__(self):
        check_variety_id(self.variety)
        entries = {}
        for cid in sorted(self.entries):
            forms = tuple(self.entries[cid])
            if not forms:
                raise ValueError(f"{self.variety}: concept {cid} has an empty variant sequence")
            normalized = [f.normalized for f in forms]
            if len(set(normalized)) != len(normalized):
                raise ValueError(f"{self.variety}: concept {cid} repeats a normalized form")
            entries[cid] = forms
        object.__setattr__(self, "entries", entries)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, concept_id):
        return concept_id in self.entries

    @property
    def concept_ids(self) -> tuple[int, ...]:
        return tuple(self.entries)

    def forms(self, concept_id: int) -> tuple[str, ...]:
        return tuple(f.normalized for f in self.entries[concept_id])

    @property
    def script(self) -> str:
        return dominant_script(f.normalized for forms in self.entries.values() for f in forms)

    @classmethod
    def from_forms(
        cls,
        variety: str,
        forms: Mapping[int, str | Sequence[str]],
        options: NormalizationOptions = NormalizationOptions(),
        source: str = "",
    ) -> "Wordlist":
        """Build a wordlist from raw strings, e.g. ``{1: "ez", 3: ["av", "aw"]}``."""
        builder = _WordlistBuilder(variety, options)
        for cid, value in forms.items():
            for raw in [value] if isinstance(value, str) else value:
                builder.add(cid, raw)
        return builder.build(source)


def check_variety_id(value) -> str:
    if not isinstance(value, str) or not value or any(ch.isspace() for ch in value):
        raise ValueError(f"variety id must be a non-empty token without whitespace, got {value!r}")
    return value


class _WordlistBuilder:
    def __init__(self, variety, options, path=None):
        self.variety = variety
        self.options = options
        self.path = path
        self.entries: dict[int, list[LexicalForm]] = {}

    def add(self, concept_id, raw, line=None):
        try:
            form = LexicalForm.from_raw(raw, self.options)
        except EmptyFormError:
            return
        variants = self.entries.setdefault(concept_id, [])
        if any(v.normalized == form.normalized for v in variants):
            where = f"{self.path}:{line}: " if line is not None else ""
            warnings.warn(
                f"{where}duplicate form {form.normalized!r} for {self.variety} concept {concept_id}; dropped",
                DuplicateFormWarning,
                stacklevel=4,
            )
            return
        variants.append(form)

    def build(self, source=""):
        return Wordlist(self.variety, {k: tuple(v) for k, v in self.entries.items() if v}, source)


def _read_text(path) -> str:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        line = data[: exc.start].count(b"\n") + 1
        raise EncodingError(
            f"invalid UTF-8 byte 0x{data[exc.start]:02x} at offset {exc.start}", path, line
        ) from exc


def _rows(text: str, delimiter: str = "\t", quoting=csv.QUOTE_NONE):
    """Yield (line_number, cells) for non-blank, non-comment lines."""
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        cells = next(csv.reader([line], delimiter=delimiter, quoting=quoting))
        yield number, cells


def _parse_concept_id(cell, path, line, concept_list=None):
    try:
        cid = int(cell.strip())
    except ValueError:
        raise ParseError(f"concept_id {cell!r} is not an integer", path, line) from None
    if concept_list is not None and cid not in concept_list:
        raise ValidationError(
            f"unknown concept id {cid} (concept list {concept_list.name!r} has ids 1-{len(concept_list)})",
            path,
            line,
        )
    return cid


def load_concept_list(path=None, name: str | None = None) -> ConceptList:
    """Read a ``concept_id<TAB>gloss`` file; ``None`` loads the bundled 207-entry list."""
    if path is None:
        text = resources.files("dialectdist").joinpath("data", DEFAULT_CONCEPT_LIST).read_text("utf-8")
        source = DEFAULT_CONCEPT_LIST
    else:
        text = _read_text(path)
        source = str(path)
    rows = _rows(text)
    try:
        number, header = next(rows)
    except StopIteration:
        raise ParseError("empty concept list", source) from None
    if tuple(c.strip() for c in header) != CONCEPT_HEADER:
        raise ParseError(f"expected header {'<TAB>'.join(CONCEPT_HEADER)}", source, number)
    concepts = []
    for number, cells in rows:
        if len(cells) != 2:
            raise ParseError(f"expected 2 columns, found {len(cells)}", source, number)
        cid = _parse_concept_id(cells[0], source, number)
        try:
            concepts.append(Concept(cid, cells[1].strip()))
        except ValueError as exc:
            raise ParseError(str(exc), source, number) from None
    try:
        return ConceptList(name or Path(source).stem, tuple(concepts))
    except ValueError as exc:
        raise ParseError(str(exc), source) from None


def default_concept_list() -> ConceptList:
    return load_concept_list()


def read_wordlists(
    path,
    concept_list: ConceptList,
    options: NormalizationOptions = NormalizationOptions(),
) -> list[Wordlist]:
    """Parse every variety in a long-format file, in order of first appearance."""
    text = _read_text(path)
    source = str(path)
    rows = _rows(text)
    try:
        number, header = next(rows)
    except StopIteration:
        raise ParseError("missing header row", source) from None
    if tuple(c.strip() for c in header) != LONG_HEADER:
        raise ParseError(f"expected header {'<TAB>'.join(LONG_HEADER)}", source, number)

    builders: dict[str, _WordlistBuilder] = {}
    for number, cells in rows:
        if len(cells) != len(LONG_HEADER):
            raise ParseError(
                f"expected {len(LONG_HEADER)} tab-separated columns, found {len(cells)}", source, number
            )
        cid = _parse_concept_id(cells[0], source, number, concept_list)
        variety = cells[2].strip()
        try:
            check_variety_id(variety)
        except ValueError as exc:
            raise ParseError(str(exc), source, number) from None
        builder = builders.get(variety)
        if builder is None:
            builder = builders[variety] = _WordlistBuilder(variety, options, source)
        builder.add(cid, cells[3], number)
    return [b.build(source) for b in builders.values()]


def parse_wordlist(
    path,
    concept_list: ConceptList,
    options: NormalizationOptions = NormalizationOptions(),
    variety: str | None = None,
) -> Wordlist:
    """Parse a single variety from a long-format file.

    If the file holds several varieties, ``variety`` selects one.
    """
    wordlists = read_wordlists(path, concept_list, options)
    if variety is not None:
        for wl in wordlists:
            if wl.variety == variety:
                return wl
        raise ValidationError(f"variety {variety!r} not found in {path}")
    if len(wordlists) != 1:
        names = ", ".join(wl.variety for wl in wordlists) or "none"
        raise ValidationError(f"{path} holds {len(wordlists)} varieties ({names}); pass variety=")
    return wordlists[0]


def parse_column_mapping(spec: str | Mapping[str, int]) -> dict[str, int]:
    """Parse ``id=1,gloss=2,Zaza=3`` into ``{"id": 1, "gloss": 2, "Zaza": 3}`` (1-based)."""
    if isinstance(spec, Mapping):
        mapping = dict(spec)
    else:
        mapping = {}
        for item in spec.split(","):
            if not item.strip():
                continue
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or not key:
                raise InputError(f"bad column mapping entry {item!r}; expected name=index")
            if key in mapping:
                raise InputError(f"column mapping names {key!r} twice")
            try:
                mapping[key] = int(value)
            except ValueError:
                raise InputError(f"column index for {key!r} must be an integer, got {value!r}") from None
    if "id" not in mapping:
        raise InputError("column mapping must include id=<column>")
    for key, index in mapping.items():
        if index < 1:
            raise InputError(f"column index for {key!r} must be >= 1")
        if key not in ("id", "gloss"):
            try:
                check_variety_id(key)
            except ValueError as exc:
                raise InputError(str(exc)) from None
    if len(mapping) - (1 + ("gloss" in mapping)) < 1:
        raise InputError("column mapping names no variety columns")
    return mapping


def read_wide_wordlists(
    path,
    concept_list: ConceptList,
    columns: str | Mapping[str, int],
    options: NormalizationOptions = NormalizationOptions(),
    delimiter: str | None = None,
    variant_separator: str = ",",
    header: bool = True,
) -> list[Wordlist]:
    """Parse a wide file (one column per variety) through a column mapping.

    A cell may hold several variants separated by ``variant_separator``.
    The delimiter defaults to ``,`` for ``.csv`` files and tab otherwise.
    """
    mapping = parse_column_mapping(columns)
    source = str(path)
    if delimiter is None:
        delimiter = "," if Path(path).suffix.lower() == ".csv" else "\t"
    text = _read_text(path)
    varieties = [k for k in mapping if k not in ("id", "gloss")]
    builders = {v: _WordlistBuilder(v, options, source) for v in varieties}
    width = max(mapping.values())
    reader = csv.reader(io.StringIO(text, newline=""), delimiter=delimiter)
    seen_header = not header
    for cells in reader:
        number = reader.line_num
        if not cells or not "".join(cells).strip() or cells[0].startswith("#"):
            continue
        if not seen_header:
            seen_header = True
            continue
        if len(cells) < width:
            raise ParseError(f"expected at least {width} columns, found {len(cells)}", source, number)
        cid = _parse_concept_id(cells[mapping["id"] - 1], source, number, concept_list)
        for variety in varieties:
            cell = cells[mapping[variety] - 1]
            parts = cell.split(variant_separator) if variant_separator else [cell]
            for raw in parts:
                builders[variety].add(cid, raw, number)
    return [builders[v].build(source) for v in varieties]


def format_wordlists(wordlists: Sequence[Wordlist], concept_list: ConceptList) -> str:
    """Serialize wordlists to the long TSV format (raw forms, concept-id order)."""
    out = ["\t".join(LONG_HEADER)]
    for wl in wordlists:
        for cid, forms in wl.entries.items():
            gloss = concept_list.gloss(cid)
            for form in forms:
                out.append(f"{cid}\t{gloss}\t{wl.variety}\t{form.raw}")
    return "\n".join(out) + "\n"


def write_wordlists(wordlists: Sequence[Wordlist], path, concept_list: ConceptList) -> None:
    Path(path).write_text(format_wordlists(wordlists, concept_list), encoding="utf-8", newline="\n")


@dataclass(frozen=True)
class Issue:
    severity: str  # "error" | "warning"
    message: str
    variety: str | None = None


@dataclass(frozen=True)
class VarietySummary:
    variety: str
    source: str
    covered: int
    total: int
    missing: tuple[int, ...]
    variant_histogram: dict[int, int]
    script: str


@dataclass
class ValidationReport:
    concept_list: str
    total: int
    varieties: list[VarietySummary] = field(default_factory=list)
    issues: list[Issue] = field(default_factory=list)

    @property
    def errors(self):
        return [i for i in self.issues if i.severity == "error"]

    @property
    def warnings(self):
        return [i for i in self.issues if i.severity == "warning"]

    @property
    def ok(self) -> bool:
        return not self.errors

    def summary(self, variety: str) -> VarietySummary:
        for s in self.varieties:
            if s.variety == variety:
                return s
        raise KeyError(variety)

    def to_dict(self):
        return {
            "concept_list": self.concept_list,
            "total": self.total,
            "varieties": [
                {
                    "variety": s.variety,
                    "source": s.source,
                    "coverage": s.covered,
                    "total": s.total,
                    "missing": list(s.missing),
                    "variant_histogram": {str(k): v for k, v in sorted(s.variant_histogram.items())},
                    "script": s.script,
                }
                for s in self.varieties
            ],
            "issues": [asdict(i) for i in self.issues],
        }

    def to_text(self) -> str:
        lines = []
        for s in self.varieties:
            hist = ", ".join(f"{k}:{v}" for k, v in sorted(s.variant_histogram.items()))
            lines.append(
                f"{s.variety}: coverage {s.covered}/{s.total}; script {s.script}; variants per concept {{{hist}}}"
            )
            if s.missing:
                lines.append(f"  missing: {', '.join(map(str, s.missing))}")
        for issue in self.issues:
            lines.append(f"{issue.severity}: {issue.message}")
        return "\n".join(lines) + "\n"


def validate_wordlists(wordlists: Sequence[Wordlist], concept_list: ConceptList) -> ValidationReport:
    """Coverage, variant histogram and script consistency for a set of wordlists."""
    if not wordlists:
        raise ValueError("validate_wordlists needs at least one wordlist")
    report = ValidationReport(concept_list.name, len(concept_list))
    seen = Counter(wl.variety for wl in wordlists)
    for variety, count in seen.items():
        if count > 1:
            report.issues.append(Issue("error", f"variety {variety} appears {count} times", variety))

    for wl in wordlists:
        unknown = sorted(cid for cid in wl.entries if cid not in concept_list)
        if unknown:
            report.issues.append(
                Issue("error", f"{wl.variety}: concept ids not in {concept_list.name}: {unknown}", wl.variety)
            )
        missing = tuple(cid for cid in concept_list.ids if cid not in wl.entries)
        report.varieties.append(
            VarietySummary(
                variety=wl.variety,
                source=wl.source,
                covered=len(concept_list) - len(missing),
                total=len(concept_list),
                missing=missing,
                variant_histogram=dict(sorted(Counter(len(f) for f in wl.entries.values()).items())),
                script=wl.script,
            )
        )

    scripts = {s.variety: s.script for s in report.varieties if s.covered}
    mismatched = [(a, b) for a, b in combinations(scripts, 2) if scripts[a] != scripts[b]]
    if mismatched:
        listing = ", ".join(f"{v}={s}" for v, s in scripts.items())
        pairs = ", ".join(f"{a}-{b}" for a, b in mismatched)
        report.issues.append(
            Issue(
                "warning",
                f"mixed scripts ({listing}); Jaro scores across scripts are near zero and not meaningful "
                f"for pairs {pairs}",
            )
        )
    return report

import unicodedata

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dialectdist.exceptions import (
    DuplicateFormWarning,
    EncodingError,
    InputError,
    ParseError,
    ValidationError,
)
from dialectdist.wordlist import (
    Concept,
    ConceptList,
    EmptyFormError,
    NormalizationOptions,
    Wordlist,
    dominant_script,
    format_wordlists,
    load_concept_list,
    normalize_form,
    parse_column_mapping,
    parse_wordlist,
    read_wide_wordlists,
    read_wordlists,
    validate_wordlists,
)

HEADER = "concept_id\tgloss\tvariety\tform\n"


def write(tmp_path, body, name="wl.tsv", header=HEADER):
    path = tmp_path / name
    path.write_text(header + body, encoding="utf-8")
    return path


def test_bundled_list(swadesh):
    assert len(swadesh) == 207
    assert [c.id for c in swadesh] == list(range(1, 208))
    assert swadesh.gloss(150) == "water"
    assert swadesh.gloss(207) == "name"


def test_concept_invariants():
    with pytest.raises(ValueError):
        Concept(0, "x")
    with pytest.raises(ValueError):
        Concept(1, "   ")
    with pytest.raises(ValueError):
        ConceptList("gap", (Concept(1, "a"), Concept(3, "b")))
    with pytest.raises(ValueError):
        ConceptList("empty", ())


@pytest.mark.parametrize(
    "raw, expected",
    [
        ("Av", "av"),
        ("ê", "ê"),
        ("aw,", "aw"),
        ("  Aw  ", "aw"),
        ("av  vexwarin", "av vexwarin"),
        ("(kitêb)", "kitêb"),
        ("İstanbul", unicodedata.normalize("NFC", "i̇stanbul")),
    ],
)
def test_normalize(raw, expected):
    assert normalize_form(raw) == expected


def test_normalize_options():
    opts = NormalizationOptions(case_fold=False, strip_punctuation=False)
    assert normalize_form(" Aw, ", opts) == "Aw,"
    opts = NormalizationOptions(collapse_internal_whitespace=False)
    assert normalize_form("a  b", opts) == "a  b"


@pytest.mark.parametrize("raw", ["", "   ", "...", " ,; "])
def test_normalize_empty(raw):
    with pytest.raises(EmptyFormError):
        normalize_form(raw)


@settings(max_examples=500, deadline=None)
@given(st.text(), st.booleans(), st.booleans(), st.booleans())
def test_normalize_idempotent(raw, fold, strip, collapse):
    opts = NormalizationOptions(fold, strip, collapse)
    try:
        once = normalize_form(raw, opts)
    except EmptyFormError:
        return
    assert normalize_form(once, opts) == once
    assert unicodedata.is_normalized("NFC", once)
    if fold:
        assert not any(ch.isupper() for ch in once)


def test_script_detection():
    assert dominant_script("kitêb") == "Latin"
    assert dominant_script("کتێب") == "Arabic"
    assert dominant_script("123") == "Common"
    assert dominant_script(["ab", "ب"]) == "Latin"


def test_parse_single_row(tmp_path, swadesh):
    wl = parse_wordlist(write(tmp_path, "31\tdog\tKurmanji\tse\n"), swadesh)
    assert wl.variety == "Kurmanji"
    assert wl.forms(31) == ("se",)
    assert wl.concept_ids == (31,)


def test_variants_accumulate(tmp_path, swadesh):
    wl = parse_wordlist(write(tmp_path, "31\tdog\tKurmanji\tse\n31\tdog\tKurmanji\tseg\n"), swadesh)
    assert wl.forms(31) == ("se", "seg")


def test_raw_kept_normalized_applied(tmp_path, swadesh):
    wl = parse_wordlist(write(tmp_path, "150\twater\tX\t  Aw  \n"), swadesh)
    form = wl.entries[150][0]
    assert form.raw == "  Aw  "
    assert form.normalized == "aw"
    assert form.script == "Latin"


def test_comments_blank_lines_and_empty_cells(tmp_path, swadesh):
    body = "# comment\n\n1\tI\tX\tez\n2\tyou\tX\t  \n3\the\tX\t...\n"
    wl = parse_wordlist(write(tmp_path, body), swadesh)
    assert wl.concept_ids == (1,)


def test_duplicate_form_warns(tmp_path, swadesh):
    path = write(tmp_path, "31\tdog\tX\tse\n31\tdog\tX\tSe\n")
    with pytest.warns(DuplicateFormWarning, match=":3:"):
        wl = parse_wordlist(path, swadesh)
    assert wl.forms(31) == ("se",)


def test_bad_column_count_reports_line(tmp_path, swadesh):
    path = write(tmp_path, "1\tI\tX\tez\n2\tyou\tX\n")
    with pytest.raises(ParseError) as info:
        parse_wordlist(path, swadesh)
    assert info.value.line == 3
    assert ":3:" in str(info.value)


def test_unknown_concept(tmp_path, swadesh):
    with pytest.raises(ValidationError, match="unknown concept id 208"):
        parse_wordlist(write(tmp_path, "208\tx\tX\tez\n"), swadesh)


def test_non_integer_id(tmp_path, swadesh):
    with pytest.raises(ParseError, match="not an integer"):
        parse_wordlist(write(tmp_path, "one\tI\tX\tez\n"), swadesh)


def test_bad_header(tmp_path, swadesh):
    with pytest.raises(ParseError, match="header"):
        parse_wordlist(write(tmp_path, "1\tI\tX\tez\n", header="id\tgloss\tlang\tword\n"), swadesh)


def test_non_utf8(tmp_path, swadesh):
    path = tmp_path / "bad.tsv"
    path.write_bytes(HEADER.encode() + b"1\tI\tX\te\xff\n")
    with pytest.raises(EncodingError) as info:
        parse_wordlist(path, swadesh)
    assert info.value.line == 2


def test_missing_file(tmp_path, swadesh):
    with pytest.raises(InputError, match="nope.tsv"):
        read_wordlists(tmp_path / "nope.tsv", swadesh)


def test_multi_variety_file(tmp_path, swadesh):
    path = write(tmp_path, "1\tI\tA\tez\n1\tI\tB\tez\n")
    assert [w.variety for w in read_wordlists(path, swadesh)] == ["A", "B"]
    assert parse_wordlist(path, swadesh, variety="B").variety == "B"
    with pytest.raises(ValidationError):
        parse_wordlist(path, swadesh)


def test_variety_with_whitespace_rejected(tmp_path, swadesh):
    with pytest.raises(ParseError):
        read_wordlists(write(tmp_path, "1\tI\tNorth Kurdish\tez\n"), swadesh)


def test_wordlist_invariants():
    with pytest.raises(ValueError):
        Wordlist("X", {1: ()})
    with pytest.raises(ValueError):
        Wordlist("has space", {})


def test_from_forms_dedupes():
    with pytest.warns(DuplicateFormWarning):
        wl = Wordlist.from_forms("X", {3: ["av", "Av", "aw"], 1: "ez"})
    assert wl.forms(3) == ("av", "aw")
    assert wl.concept_ids == (1, 3)


def test_round_trip(tmp_path, swadesh, fixture207):
    first = read_wordlists(fixture207, swadesh)
    out = tmp_path / "again.tsv"
    out.write_text(format_wordlists(first, swadesh), encoding="utf-8")
    second = read_wordlists(out, swadesh)
    assert first == second
    assert all(len(w) == 207 for w in first)


def test_concept_list_file(tmp_path):
    path = tmp_path / "c.tsv"
    path.write_text("concept_id\tgloss\n1\tI\n2\tyou\n", encoding="utf-8")
    cl = load_concept_list(path)
    assert len(cl) == 2 and cl.name == "c"
    path.write_text("concept_id\tgloss\n1\tI\n3\tyou\n", encoding="utf-8")
    with pytest.raises(ParseError, match="contiguous"):
        load_concept_list(path)


def test_column_mapping():
    assert parse_column_mapping("id=1,gloss=2,Zaza=3") == {"id": 1, "gloss": 2, "Zaza": 3}
    for bad in ("gloss=2,Zaza=3", "id=1", "id=1,Zaza=x", "id=0,Zaza=1", "id=1,Zaza"):
        with pytest.raises(InputError):
            parse_column_mapping(bad)


def test_wide_format(tmp_path, swadesh):
    path = tmp_path / "wide.csv"
    path.write_text(
        "No,English,Zaza,Hawrami\n1,I,ez,mi\n2,you,\"ti, tu\",to\n3,he,,ew\n", encoding="utf-8"
    )
    za, haw = read_wide_wordlists(path, swadesh, "id=1,gloss=2,Zaza=3,Hawrami=4")
    assert za.variety == "Zaza" and haw.variety == "Hawrami"
    assert za.forms(2) == ("ti", "tu")
    assert 3 not in za and haw.forms(3) == ("ew",)
    tsv = tmp_path / "wide.tsv"
    tsv.write_text("id\tZaza\n1\tez\n", encoding="utf-8")
    (only,) = read_wide_wordlists(tsv, swadesh, {"id": 1, "Zaza": 2})
    assert only.forms(1) == ("ez",)


def test_wide_short_row(tmp_path, swadesh):
    path = tmp_path / "wide.csv"
    path.write_text("id,A,B\n1,x\n", encoding="utf-8")
    with pytest.raises(ParseError) as info:
        read_wide_wordlists(path, swadesh, "id=1,A=2,B=3")
    assert info.value.line == 2


def test_validation_full_coverage(swadesh, fixture207):
    report = validate_wordlists(read_wordlists(fixture207, swadesh), swadesh)
    assert report.ok and not report.warnings
    assert [s.covered for s in report.varieties] == [207] * 4
    assert "coverage 207/207" in report.to_text()


def test_validation_missing_ids(swadesh, fixture207):
    wls = read_wordlists(fixture207, swadesh)
    mutated = Wordlist(wls[0].variety, {k: v for k, v in wls[0].entries.items() if k not in (5, 9)})
    report = validate_wordlists([mutated, *wls[1:]], swadesh)
    assert report.summary(mutated.variety).missing == (5, 9)
    assert report.summary(mutated.variety).covered == 205
    assert report.summary(wls[1].variety).missing == ()


def test_validation_cross_script(swadesh):
    latin = Wordlist.from_forms("Kurmanji", {1: "ez", 150: "av"})
    arabic = Wordlist.from_forms("Sorani", {1: "من", 150: "ئاو"})
    report = validate_wordlists([latin, arabic], swadesh)
    assert report.ok
    assert len(report.warnings) == 1
    assert "Latin" in report.warnings[0].message and "Arabic" in report.warnings[0].message


def test_validation_histogram_and_duplicates(swadesh):
    a = Wordlist.from_forms("A", {1: ["ez", "az"], 2: "tu"})
    report = validate_wordlists([a, a], swadesh)
    assert report.summary("A").variant_histogram == {1: 1, 2: 1}
    assert not report.ok

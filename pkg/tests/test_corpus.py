import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from commentropy.corpus import (
    Document,
    GroupingScheme,
    assign_groups,
    extract_countries,
    load_scheme,
    parse_corpus,
    serialize_corpus,
)
from commentropy.exceptions import CorpusFormatError, DuplicateIdError, InputError, UnmatchedCountryError

D1 = {
    "id": "d1",
    "year": 1996,
    "title": "Enzyme Kinetics",
    "journal": "BIOTECH BIOENG",
    "addresses": ["UNIV AMSTERDAM, AMSTERDAM, NETHERLANDS"],
    "references": ["SMITH J, 1990, J X, V1, P1"],
}


def test_empty_stream():
    assert parse_corpus(b"") == []


def test_single_record_round_trip():
    (doc,) = parse_corpus((json.dumps(D1) + "\n").encode())
    assert doc.to_dict() == D1


def test_duplicate_id_names_the_id():
    line = json.dumps(D1) + "\n"
    with pytest.raises(DuplicateIdError, match="'d1'") as exc:
        parse_corpus((line + line).encode())
    assert exc.value.doc_id == "d1"


@pytest.mark.parametrize(
    "line, lineno",
    [
        ("{not json", 2),
        ('{"id": "x"}', 2),
        ('{"id": "", "year": 1990}', 2),
        ('{"id": "x", "year": "1990"}', 2),
        ('{"id": "x", "year": 1990, "addresses": "NL"}', 2),
        ("[1, 2]", 2),
    ],
)
def test_malformed_line_reports_line_number(line, lineno):
    text = json.dumps(D1) + "\n" + line + "\n"
    with pytest.raises(CorpusFormatError) as exc:
        parse_corpus(text.encode())
    assert exc.value.lineno == lineno
    assert f"line {lineno}" in str(exc.value)


def test_accepts_text_and_skips_blank_lines():
    docs = parse_corpus("\n" + json.dumps(D1) + "\n\n")
    assert [d.id for d in docs] == ["d1"]


def test_optional_fields_default_empty():
    (doc,) = parse_corpus(b'{"id": "a", "year": 2000}')
    assert doc.title == "" and doc.addresses == () and doc.references == ()


def test_bundled_toy_corpus(toy_path):
    docs = parse_corpus(toy_path.read_bytes())
    assert [d.id for d in docs] == ["d1", "d2", "d3"]


text = st.text(st.characters(blacklist_categories=("Cs",)), max_size=20)
documents = st.builds(
    Document,
    id=st.text(min_size=1, max_size=8),
    year=st.integers(1900, 2100),
    title=text,
    journal=text,
    addresses=st.lists(text, max_size=3),
    references=st.lists(text, max_size=3),
)


@given(st.lists(documents, max_size=5, unique_by=lambda d: d.id))
def test_serialize_parse_identity(docs):
    assert parse_corpus(serialize_corpus(docs).encode("utf-8")) == docs


@pytest.mark.parametrize(
    "address, expected",
    [
        ("UNIV AMSTERDAM, AMSTERDAM, NETHERLANDS", ["NL"]),
        ("MIT, CAMBRIDGE, MA 02139, USA", ["US"]),
        ("ATLANTIS INST, ATLANTIS", []),
        ("UNIV EDINBURGH, EDINBURGH EH9 3JZ, MIDLOTHIAN, SCOTLAND", ["GB"]),
        ("UNIV WALES, CARDIFF, WALES", ["GB"]),
        ("QUEENS UNIV, BELFAST, NORTH IRELAND", ["GB"]),
        ("ACAD SINICA, BEIJING, PEOPLES R CHINA", ["CN"]),
        ("TU MUNCHEN, D-8000 MUNICH, FED REP GER", ["DE"]),
        ("UNIV TOKYO, TOKYO 113, JAPAN.", ["JP"]),
        ("", []),
    ],
)
def test_extract_countries(address, expected):
    assert extract_countries(address) == expected


def _doc(*addresses):
    return Document("x", 1996, addresses=addresses)


NL = "UNIV AMSTERDAM, AMSTERDAM, NETHERLANDS"
US = "MIT, CAMBRIDGE, MA 02139, USA"
CA = "UNIV TORONTO, TORONTO, ON, CANADA"


def test_assign_eu15():
    assert assign_groups(_doc(NL), load_scheme("eu15")) == {"Netherlands"}


def test_assign_blocs_whole_counting():
    assert assign_groups(_doc(NL, US, NL), load_scheme("blocs")) == {"EU", "USA"}


def test_canada_dropped_from_blocs():
    assert assign_groups(_doc(CA), load_scheme("blocs", unmatched="drop")) == set()


def test_unmatched_error_names_country():
    with pytest.raises(UnmatchedCountryError, match="CA"):
        assign_groups(_doc(NL, CA), load_scheme("blocs", unmatched="error"))


def test_unmatched_other_bucket():
    scheme = load_scheme("blocs", unmatched="other")
    assert assign_groups(_doc(CA), scheme) == {"Other"}
    assert scheme.groups == ("EU", "Japan", "USA", "Other")


def test_scheme_file(tmp_path):
    path = tmp_path / "two.tsv"
    path.write_text("# comment\nNL\tNorth\nBE\tNorth\n\nES\tSouth\n")
    scheme = load_scheme(path)
    assert scheme.name == "two"
    assert scheme.groups == ("North", "South")


@pytest.mark.parametrize("body", ["nl\tX\n", "NL\t\n", "NL X\n", "NL\tA\nNL\tB\n", "# only comments\n"])
def test_bad_scheme_files(tmp_path, body):
    path = tmp_path / "bad.tsv"
    path.write_text(body)
    with pytest.raises(InputError):
        load_scheme(path)


def test_bad_policy():
    with pytest.raises(InputError):
        GroupingScheme("s", {"NL": "A"}, unmatched="ignore")


def test_eu15_has_fifteen_groups():
    assert len(load_scheme("eu15").groups) == 15
    assert set(load_scheme("blocs").groups) == {"EU", "Japan", "USA"}


ADDRESSES = [NL, US, CA, "TOKYO UNIV, TOKYO, JAPAN", "KU LEUVEN, LEUVEN, BELGIUM", "NOWHERE"]


@given(st.lists(st.sampled_from(ADDRESSES), max_size=4), st.sampled_from(ADDRESSES))
def test_assign_groups_monotone_and_in_codomain(addresses, extra):
    scheme = load_scheme("blocs")
    before = assign_groups(_doc(*addresses), scheme)
    after = assign_groups(_doc(*addresses, extra), scheme)
    assert before <= after
    assert after <= set(scheme.groups)

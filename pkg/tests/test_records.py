import dataclasses
import json
import os

import pytest
from hypothesis import given, strategies as st

from kummer3.records import (
    FixtureError,
    FixtureRecord,
    ResultRecord,
    compare,
    ingest_fixture,
    parse_cubic,
    read_results,
    three_part,
    write_jsonl,
)

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")
APPENDIX = os.path.join(FIXTURES, "appendix_records.jsonl")

ints = st.integers(-10**30, 10**30)
invs = st.lists(st.integers(1, 10**6), max_size=5)
cubics = st.tuples(st.integers(-50, 50), st.integers(-10**9, 10**9), ints).map(list)

records = st.builds(
    ResultRecord,
    m=st.integers(2, 10**8),
    case=st.sampled_from([None, "NonSplit", "NormalSplit", "SpecialSplit", "Trivial"]),
    val=st.one_of(st.none(), st.integers(-3, 12)),
    ram_status=st.sampled_from([None, "Ramified", "Unramified"]),
    Q_acyc=st.one_of(st.none(), cubics),
    winner_index=st.one_of(st.none(), st.integers(1, 13)),
    delta=st.integers(0, 13),
    sigma_flag=st.booleans(),
    eliminated_by=st.lists(st.tuples(st.integers(1, 13), st.integers(5, 10**6)).map(list), max_size=4),
    H_k=st.one_of(st.none(), invs),
    T_k=st.one_of(st.none(), invs),
    otbp=st.one_of(st.none(), st.integers(1, 81)),
    capitulation=st.one_of(st.none(), st.fixed_dictionaries({"verdict": st.sampled_from(["total", "partial"])})),
    extra=st.dictionaries(st.sampled_from(["note", "fixture_diff"]), st.text(max_size=8)),
)


@given(records)
def test_result_round_trip(rec):
    assert ResultRecord.from_json(rec.to_json()) == rec


def test_jsonl_files(tmp_path):
    recs = [ResultRecord(m=302, val=3, Q_acyc=[0, -93, -458]), ResultRecord(m=87, error="x")]
    p = tmp_path / "out.jsonl"
    assert write_jsonl(p, recs) == 2
    assert list(read_results(p)) == recs
    assert write_jsonl(tmp_path / "empty.jsonl", []) == 0
    assert (tmp_path / "empty.jsonl").read_text() == ""


def test_parse_cubic():
    assert parse_cubic("x^3-318*x-4067") == [0, -318, -4067]
    assert parse_cubic("x^3-x^2+6") == [-1, 0, 6]
    assert parse_cubic([1, 0, -3, -523]) == [0, -3, -523]
    for bad in ("x^2+1", "2*x^3+1", "x^3+x/2"):
        with pytest.raises(ValueError):
            parse_cubic(bad)


def test_three_part():
    assert three_part([135, 3, 3, 3]) == [27, 3, 3, 3]
    assert three_part([36, 6, 2]) == [9, 3]
    assert three_part([2, 2]) == []


def test_fixture_files_load():
    recs = ingest_fixture(APPENDIX)
    assert {r.m for r in recs} >= {157019, 3647, 302, 87, 8139}
    assert len(ingest_fixture(os.path.join(FIXTURES, "capitulation_prose.jsonl"))) == 8
    r = FixtureRecord.from_dict(recs[0].to_dict())
    assert r == recs[0]


def test_corrupted_fixture_reports_the_line(tmp_path):
    lines = open(APPENDIX).read().splitlines()
    lines[2] = lines[2][:-5]  # truncated JSON
    p = tmp_path / "bad.jsonl"
    p.write_text("\n".join(lines) + "\n")
    with pytest.raises(FixtureError, match=r"bad\.jsonl:3:"):
        ingest_fixture(p)


def test_fixture_validation():
    with pytest.raises(ValueError):
        FixtureRecord.from_dict({"m": 302, "H_(k_1^acyc)": [12, 3], "norm_rows": [[0, 0]]})
    with pytest.raises(ValueError):
        FixtureRecord.from_dict({"m": 302, "H_k": [0]})
    with pytest.raises(ValueError):
        FixtureRecord.from_dict({"H_k": [3]})


@pytest.fixture(scope="module")
def rec302():
    from kummer3.cli import layer_record

    return layer_record(302, capitulate=True)


def test_302_matches_its_fixture(rec302):
    fx = next(r for r in ingest_fixture(APPENDIX) if r.m == 302)
    assert compare(rec302, fx) == []


@pytest.mark.parametrize("field,value,name", [
    ("H_K", [12, 9], "H_K"),
    ("val", 4, "val"),
    ("Q_acyc", [0, -3, -523], "Q_acyc"),
    ("norm_rows", [[0, 1], [0, 0]], "norm_rows"),
    ("T_k", [9], "T_k"),
])
def test_mutation_is_named(rec302, field, value, name):
    fx = next(r for r in ingest_fixture(APPENDIX) if r.m == 302)
    assert compare(rec302, dataclasses.replace(fx, **{field: value})) == [name]


def test_fixture_json_keys_follow_the_printed_labels():
    d = json.loads(open(APPENDIX).readline())
    assert {"Val", "k_1^ac", "Q^acyc", "H_(k_1^acyc)"} <= set(d)

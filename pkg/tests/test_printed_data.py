"""The transcribed oracle values really occur in the source text."""

import os
import re

import pytest

from printed_data import CAPITULE1_HEAD, CAPITULE2_HEAD, CENSUS_1E6, NORMAL_SPLIT_1E4, PROGRAM_I_LIST

from kummer3.radicals import poly_str

SOURCE = os.path.join(os.path.dirname(__file__), "..", "paper.md")


@pytest.fixture(scope="module")
def text():
    if not os.path.exists(SOURCE):
        pytest.skip("source text not present")
    return open(SOURCE).read()


def _numbers(chunk):
    return [int(x) for x in re.findall(r"\d+", chunk)]


def test_normal_split_list(text):
    i = text.index("The Normal Special cases up to")
    chunk = text[i:text.index("ldots", i)]
    assert _numbers(chunk)[2:] == NORMAL_SPLIT_1E4  # skip "10^4"


def test_program_i_list(text):
    i = text.index('print("Program I")')
    chunk = text[text.index("Listm=List([", i):text.index("]);", i)]
    assert _numbers(chunk) == PROGRAM_I_LIST


def test_capitule_lists(text):
    for head, label in ((CAPITULE1_HEAD, "capitule1"), (CAPITULE2_HEAD, "capitule2")):
        i = text.index("For $p=3$, this holds for", text.index(f"label{{{label}}}"))
        assert _numbers(text[i + 25:i + 400])[:5] == head


def test_census_counts(text):
    for key, prog in zip(CENSUS_1E6, ("Nprog1", "Nprog2", "Nprog3", "Nprog4")):
        assert f"{prog}={CENSUS_1E6[key]}" in text


def test_layer_records(text):
    from printed_data import LAYER_RECORDS

    for m, (_, _, _, Q) in LAYER_RECORDS.items():
        if m == 107:
            assert "w=Mod(-1/2*x-17/2,x^2-321)" in text
            continue
        assert f"Q^acyc={poly_str(Q)}" in text, m

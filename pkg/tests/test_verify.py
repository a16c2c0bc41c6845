import pathlib
import shutil

import pytest

from symconn.errors import ParseError
from symconn.verify import run_verify

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def test_missing_directory():
    with pytest.raises(ParseError, match="does not exist"):
        run_verify("no/such/corpus")


def test_empty_corpus(tmp_path):
    rep = run_verify(tmp_path)
    assert rep["fixtures"] == []
    assert rep["total_queries"] == 0
    assert rep["agreement_rate"] == "0/0"
    assert rep["all_agree"] is True
    assert rep["disagreements"] == []


def test_single_fixture_rows(tmp_path):
    corpus = tmp_path / "c"
    corpus.mkdir()
    shutil.copy(FIXTURES / "split2.json", corpus / "split2.json")
    rep = run_verify(corpus)
    assert rep["total_queries"] == 10
    assert rep["all_agree"] is True
    (fixture,) = rep["fixtures"]
    assert fixture["fixture"] == "split2.json"
    assert fixture["agreement"] == "10/10"
    for row in fixture["queries"]:
        assert row["engine"] == row["brute_force"]
        assert row["agree"] is True
        assert row["engine_seconds"] >= 0
        assert row["brute_force_seconds"] >= 0
        assert row["engine"] == row["expect"]


def test_unsorted_queries_match_brute_force(tmp_path):
    # the brute grid works on raw coordinates, the engine on sorted ones;
    # a fixture full of permuted points exercises the conjugation path
    corpus = tmp_path / "c"
    corpus.mkdir()
    shutil.copy(FIXTURES / "circle-arcs.json", corpus / "arcs.json")
    rep = run_verify(corpus)
    assert rep["all_agree"] is True
    assert rep["total_queries"] == 7


def test_broken_fixture_is_reported_with_filename(tmp_path):
    corpus = tmp_path / "c"
    corpus.mkdir()
    (corpus / "bad.json").write_text("{\"n\": 2}")
    with pytest.raises(ParseError, match="bad.json"):
        run_verify(corpus)


def test_underresolved_disagreement_carries_certificate():
    rep = run_verify(FIXTURES / "underresolved")
    assert rep["all_agree"] is False
    (dis,) = rep["disagreements"]
    assert dis["fixture"] == "pinch3.json"
    assert dis["engine"] is False
    assert dis["brute_force"] is True
    cert = dis["engine_certificate"]
    assert cert["kind"] == "symmetric"
    assert cert["orbit"]["connected"] is True
    assert cert["walls"]["1"]["connected"] is False
    (fail,) = rep["expectation_failures"]
    assert fail["expect"] is True
    assert fail["engine"] is False


def test_full_corpus_agreement():
    rep = run_verify(FIXTURES)
    assert rep["total_queries"] >= 100
    assert rep["all_agree"] is True
    assert rep["agreement_rate"] == f"{rep['total_queries']}/{rep['total_queries']}"
    assert rep["expectation_failures"] == []
    assert rep["seconds"] > 0

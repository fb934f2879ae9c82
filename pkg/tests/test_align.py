import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from structsynth.align import (
    AlignmentScore,
    LexicalScorer,
    RemoteScorer,
    filter_corpus,
    lexical_score,
    make_scorer,
    score_with,
    tokens,
)
from structsynth.errors import EmptyDescription, ProtocolViolation, ScorerUnavailable
from structsynth.layout import UI_VIEWPORT, compute_layout
from structsynth.markup import parse_document
from structsynth.raster import RasterImage
from structsynth.render import rasterize
from structsynth.schema import Domain


def test_lexical_worked_example():
    desc = "a login screen with a blue sign in button"
    doc_text = "Sign In company logo login"
    assert len(tokens(desc)) == 8
    score = lexical_score(doc_text, desc)
    assert score.value == pytest.approx(0.375)
    assert score.scorer_id == "lexical"


def test_lexical_empty_doc_text():
    assert lexical_score("", "any words here").value == 0.0


def test_lexical_identity():
    text = "profile page with avatar"
    assert lexical_score(text, text).value == 1.0


def test_lexical_empty_description_raises():
    with pytest.raises(EmptyDescription):
        lexical_score("some text", "")
    with pytest.raises(EmptyDescription):
        lexical_score("some text", "  !! ")


def test_filter_boundary_keeps_threshold():
    items = [("a", 0.29), ("b", 0.30), ("c", 0.31)]
    kept, dropped, stats = filter_corpus(items, 0.3)
    assert kept == ["b", "c"]
    assert dropped == ["a"]
    assert stats.input_count == 3
    assert stats.kept_count == 2
    assert stats.dropped_count == 1


def test_filter_empty_input():
    kept, dropped, stats = filter_corpus([], 0.3)
    assert kept == [] and dropped == []
    assert stats.input_count == 0
    assert stats.drop_fraction == 0.0


def test_paper_scale_drop_fractions():
    items = [(i, 0.9) for i in range(10268 - 215)] + [(i, 0.0) for i in range(215)]
    _, _, stats = filter_corpus(items, 0.3)
    assert stats.dropped_count == 215
    assert stats.drop_fraction == pytest.approx(215 / 10268)


@given(st.lists(st.tuples(st.integers(), st.floats(0, 1)), max_size=200),
       st.floats(0, 1))
@settings(max_examples=150, deadline=None)
def test_partition_law(items, threshold):
    kept, dropped, stats = filter_corpus(items, threshold)
    assert len(kept) + len(dropped) == len(items)
    assert stats.kept_count + stats.dropped_count == stats.input_count
    # disjoint cover with order preserved within each partition
    assert kept == [x for x, s in items if s >= threshold]
    assert dropped == [x for x, s in items if s < threshold]


@given(st.lists(st.tuples(st.integers(), st.floats(0, 1)), max_size=100),
       st.floats(0, 1), st.floats(0, 1))
@settings(max_examples=100, deadline=None)
def test_threshold_monotonicity(items, t1, t2):
    lo, hi = min(t1, t2), max(t1, t2)
    kept_lo, _, _ = filter_corpus(items, lo)
    kept_hi, _, _ = filter_corpus(items, hi)
    assert len(kept_hi) <= len(kept_lo)


def test_alignment_score_rejects_out_of_range():
    with pytest.raises(ProtocolViolation):
        AlignmentScore(1.2, "remote:x")
    with pytest.raises(ProtocolViolation):
        AlignmentScore(-0.1, "remote:x")
    with pytest.raises(ProtocolViolation):
        AlignmentScore(math.nan, "remote:x")


def _doc_and_raster(text_markup):
    doc, _ = parse_document(text_markup, Domain.UI)
    tree = compute_layout(doc, UI_VIEWPORT)
    raster = rasterize(tree, doc, {}, 0)
    return doc, raster


def test_score_with_default_scorer_matches_lexical():
    doc, raster = _doc_and_raster(
        '<meta content="login" name="screentype"><p>Sign In</p>'
        '<img src="https://e.com/x.png" alt="company logo">')
    desc = "a login screen with a blue sign in button"
    score = score_with(LexicalScorer(), raster, doc, desc)
    assert score.value == pytest.approx(0.375)
    assert score.scorer_id == "lexical"


class _FakeRemote:
    scorer_id = "remote:fake"

    def __init__(self, value):
        self.value = value

    def score(self, raster, doc, description):
        return self.value


def test_score_with_rejects_protocol_violation():
    doc, raster = _doc_and_raster("<p>x</p>")
    with pytest.raises(ProtocolViolation):
        score_with(_FakeRemote(1.2), raster, doc, "words")


def test_score_with_records_scorer_id():
    doc, raster = _doc_and_raster("<p>x</p>")
    score = score_with(_FakeRemote(0.5), raster, doc, "words")
    assert score.scorer_id == "remote:fake"


def test_remote_scorer_unreachable():
    scorer = RemoteScorer("http://127.0.0.1:1/score", timeout=0.2)
    doc, raster = _doc_and_raster("<p>x</p>")
    with pytest.raises(ScorerUnavailable):
        score_with(scorer, raster, doc, "words")


def test_make_scorer_selectors():
    assert isinstance(make_scorer("lexical"), LexicalScorer)
    remote = make_scorer("remote:http://h/score")
    assert isinstance(remote, RemoteScorer)
    assert remote.endpoint == "http://h/score"
    with pytest.raises(ValueError):
        make_scorer("quantum")

"""Image-text alignment scoring and corpus filtering.

The default scorer is lexical and deterministic: it measures what fraction
of the description's unique tokens appear in the document text. A remote
neural scorer can be plugged in over HTTP; its scores must already be in
[0, 1]. Filtering keeps records whose score is >= the threshold (a score
exactly at the threshold is kept).
"""

from __future__ import annotations

import base64
import math
import re
from dataclasses import dataclass
from typing import Protocol, Sequence, TypeVar

from .errors import EmptyDescription, ProtocolViolation, ScorerUnavailable
from .markup import AnnotatedDocument, extract_text
from .raster import RasterImage

DEFAULT_THRESHOLD = 0.3

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokens(text: str) -> frozenset[str]:
    return frozenset(_TOKEN_RE.findall(text.lower()))


@dataclass(frozen=True, slots=True)
class AlignmentScore:
    value: float
    scorer_id: str

    def __post_init__(self):
        if math.isnan(self.value) or not 0.0 <= self.value <= 1.0:
            raise ProtocolViolation(
                f"alignment score {self.value!r} outside [0, 1]")


@dataclass(slots=True)
class FilterStats:
    input_count: int
    kept_count: int
    dropped_count: int
    drop_fraction: float
    threshold: float

    def to_json_dict(self) -> dict:
        return {
            "input_count": self.input_count,
            "kept_count": self.kept_count,
            "dropped_count": self.dropped_count,
            "drop_fraction": self.drop_fraction,
            "threshold": self.threshold,
        }


def lexical_score(doc_text: str, description: str) -> AlignmentScore:
    """Fraction of the description's unique tokens found in the doc text."""
    desc_tokens = tokens(description)
    if not desc_tokens:
        raise EmptyDescription("description has no tokens to score against")
    covered = desc_tokens & tokens(doc_text)
    return AlignmentScore(len(covered) / len(desc_tokens), "lexical")


T = TypeVar("T")


def filter_corpus(items: Sequence[tuple[T, float]],
                  threshold: float) -> tuple[list[T], list[T], FilterStats]:
    """Partition scored items: kept (score >= threshold) and dropped.

    Order is preserved within each partition.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold {threshold} outside [0, 1]")
    kept: list[T] = []
    dropped: list[T] = []
    for item, score in items:
        (kept if score >= threshold else dropped).append(item)
    n = len(items)
    stats = FilterStats(
        input_count=n,
        kept_count=len(kept),
        dropped_count=len(dropped),
        drop_fraction=(len(dropped) / n) if n else 0.0,
        threshold=threshold,
    )
    return kept, dropped, stats


class Scorer(Protocol):
    scorer_id: str

    def score(self, raster: RasterImage, doc: AnnotatedDocument,
              description: str) -> float: ...


class LexicalScorer:
    """Default offline scorer: ignores pixels, scores the document text."""

    scorer_id = "lexical"

    def score(self, raster: RasterImage, doc: AnnotatedDocument,
              description: str) -> float:
        return lexical_score(extract_text(doc), description).value


class RemoteScorer:
    """HTTP scorer: POST {image: base64 PNG, text} -> {score: float}."""

    def __init__(self, endpoint: str, timeout: float = 30.0):
        self.endpoint = endpoint
        self.timeout = timeout
        self.scorer_id = f"remote:{endpoint}"

    def score(self, raster: RasterImage, doc: AnnotatedDocument,
              description: str) -> float:
        import requests

        payload = {
            "image": base64.b64encode(raster.to_png_bytes()).decode("ascii"),
            "text": description,
        }
        try:
            resp = requests.post(self.endpoint, json=payload, timeout=self.timeout)
            resp.raise_for_status()
            body = resp.json()
        except Exception as exc:
            raise ScorerUnavailable(
                f"scorer endpoint {self.endpoint} unreachable: {exc}") from exc
        if not isinstance(body, dict) or "score" not in body:
            raise ProtocolViolation(f"scorer returned malformed payload: {body!r}")
        score = body["score"]
        if not isinstance(score, (int, float)):
            raise ProtocolViolation(f"scorer returned non-numeric score {score!r}")
        return float(score)


def score_with(scorer: Scorer, raster: RasterImage, doc: AnnotatedDocument,
               description: str) -> AlignmentScore:
    """Delegate to the configured scorer and stamp its id for provenance.

    Scores outside [0, 1] (including NaN) are rejected as protocol
    violations rather than clamped.
    """
    if not description or not tokens(description):
        raise EmptyDescription("description has no tokens to score against")
    value = scorer.score(raster, doc, description)
    return AlignmentScore(value, scorer.scorer_id)


def make_scorer(selector: str) -> Scorer:
    """Build a scorer from a CLI selector: 'lexical' or 'remote:URL'."""
    if selector == "lexical":
        return LexicalScorer()
    if selector.startswith("remote:"):
        return RemoteScorer(selector[len("remote:"):])
    raise ValueError(f"unknown scorer {selector!r} (use lexical or remote:URL)")

"""Ideation and markup generation through a pluggable text client, plus the
end-to-end pipeline driver.

Prompts are assembled from versioned template files and are a pure function
of (description, config, taxonomy); the bundled stub client is a map from
prompt digest to canned text, so offline runs are fully deterministic.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Protocol

from . import dataset as dataset_mod
from .align import FilterStats, Scorer, filter_corpus, score_with, tokens
from .assets import AssetResolver, ProviderSet
from .errors import ClientFailure, ConfigError, FatalParse, ScorerUnavailable
from .layout import Viewport, compute_layout, element_boxes, viewport_for
from .markup import parse_document
from .quality import has_errors, lint, repair
from .render import rasterize
from .schema import (
    ELEMENT_ATTR,
    SCREEN_META,
    Domain,
    ScreenClass,
    canonicalize_screen,
    element_taxonomy,
    screen_taxonomy,
)

log = logging.getLogger(__name__)

LLM_KEY_ENV = "STRUCTSYNTH_LLM_KEY"
PROMPT_VERSION = "v1"


def _load_template(name: str) -> str:
    ref = resources.files("structsynth").joinpath("prompts", f"{name}_{PROMPT_VERSION}.txt")
    return ref.read_text(encoding="utf-8")


def default_principles() -> str:
    return _load_template("principles").strip()


def prompt_digest(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


@dataclass(frozen=True, slots=True)
class DescriptionRecord:
    id: str
    domain: Domain
    target_screen_class: ScreenClass
    text: str
    prompt_digest: str


@dataclass(slots=True)
class GenerationConfig:
    temperature: float = 0.3
    ideation_temperature: float = 0.7
    batch_size: int = 8
    seed: int = 0
    principles_text: str = field(default_factory=default_principles)
    screen_weights: dict[str, float] | None = None  # canonical name -> weight
    dedup_jaccard: float = 0.9
    retry_budget: int = 3

    def validate(self) -> None:
        if not 0.0 <= self.temperature <= 2.0:
            raise ConfigError(f"temperature {self.temperature} outside [0, 2]")
        if not 0.0 <= self.ideation_temperature <= 2.0:
            raise ConfigError(
                f"ideation_temperature {self.ideation_temperature} outside [0, 2]")
        if self.screen_weights is not None:
            total = sum(self.screen_weights.values())
            if abs(total - 1.0) > 1e-6:
                raise ConfigError(f"screen weights sum to {total}, expected 1")


class TextGenClient(Protocol):
    def complete(self, prompt: str, temperature: float,
                 seed: int | None = None) -> str: ...


class StubTextGenClient:
    """Deterministic client backed by a prompt-digest -> text map."""

    def __init__(self, responses: dict[str, str]):
        self.responses = dict(responses)

    @classmethod
    def from_file(cls, path: str | Path) -> "StubTextGenClient":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ConfigError(f"stub fixture {path} is not a digest->text map")
        return cls(data)

    def complete(self, prompt: str, temperature: float,
                 seed: int | None = None) -> str:
        digest = prompt_digest(prompt)
        try:
            return self.responses[digest]
        except KeyError:
            raise ClientFailure(
                f"stub has no response for prompt digest {digest[:16]}… "
                f"(prompt starts: {prompt[:60]!r})") from None


class HttpTextGenClient:
    """POST {prompt, temperature, seed?} -> {text}, with bounded retries."""

    def __init__(self, endpoint: str, api_key: str | None = None,
                 timeout: float = 120.0, max_attempts: int = 3):
        self.endpoint = endpoint
        self.api_key = api_key if api_key is not None else os.environ.get(LLM_KEY_ENV)
        self.timeout = timeout
        self.max_attempts = max_attempts

    def complete(self, prompt: str, temperature: float,
                 seed: int | None = None) -> str:
        import requests

        payload: dict = {"prompt": prompt, "temperature": temperature}
        if seed is not None:
            payload["seed"] = seed
        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        last: Exception | None = None
        for attempt in range(self.max_attempts):
            try:
                resp = requests.post(self.endpoint, json=payload,
                                     headers=headers, timeout=self.timeout)
                resp.raise_for_status()
                body = resp.json()
                if not isinstance(body, dict) or "text" not in body:
                    raise ValueError(f"malformed completion payload: {body!r}")
                return str(body["text"])
            except Exception as exc:
                last = exc
                log.warning("completion attempt %d/%d failed: %s",
                            attempt + 1, self.max_attempts, exc)
                time.sleep(min(2.0 ** attempt * 0.25, 2.0))
        raise ClientFailure(f"client failed after {self.max_attempts} attempts: {last}")


# -- prompt assembly -------------------------------------------------------------

_DOMAIN_LABEL = {Domain.SLIDE: "presentation slide", Domain.UI: "mobile UI screen"}
_ARTIFACT = {Domain.SLIDE: "slide", Domain.UI: "app screen"}


def taxonomy_block(domain: Domain) -> str:
    return ", ".join(c.name for c in element_taxonomy(domain))


def screens_block(domain: Domain) -> str:
    return ", ".join(c.name for c in screen_taxonomy(domain))


def ideation_prompt(domain: Domain, screen_class: ScreenClass, index: int,
                    attempt: int, config: GenerationConfig) -> str:
    return _load_template("ideate").format(
        domain_label=_DOMAIN_LABEL[domain],
        screen_label=screen_class.name,
        artifact=_ARTIFACT[domain],
        principles=config.principles_text,
        index=index,
        attempt=attempt,
    )


def markup_prompt(description_text: str, domain: Domain,
                  config: GenerationConfig,
                  viewport: Viewport | None = None) -> str:
    vp = viewport or viewport_for(domain)
    return _load_template("markup").format(
        domain_label=_DOMAIN_LABEL[domain],
        viewport_w=vp.width,
        viewport_h=vp.height,
        description=description_text,
        element_attr=ELEMENT_ATTR,
        taxonomy=taxonomy_block(domain),
        screen_meta=SCREEN_META,
        screens=screens_block(domain),
        principles=config.principles_text,
    )


# -- ideation ---------------------------------------------------------------------


def _schedule(domain: Domain, count: int,
              weights: dict[str, float] | None) -> list[ScreenClass]:
    """Deterministic per-index target classes: largest-remainder allocation,
    then round-interleaved in taxonomy order."""
    classes = list(screen_taxonomy(domain))
    if weights is None:
        w = {c.name: 1.0 / len(classes) for c in classes}
    else:
        w = {c.name: weights.get(c.name, 0.0) for c in classes}
    exact = {name: w[name] * count for name in w}
    alloc = {name: int(exact[name]) for name in exact}
    remainder = count - sum(alloc.values())
    by_frac = sorted(classes, key=lambda c: (-(exact[c.name] - alloc[c.name]),
                                             classes.index(c)))
    for c in by_frac[:remainder]:
        alloc[c.name] += 1
    out: list[ScreenClass] = []
    while len(out) < count:
        for c in classes:
            if alloc[c.name] > 0:
                out.append(c)
                alloc[c.name] -= 1
    return out[:count]


def _jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a and not b:
        return 1.0
    union = a | b
    return len(a & b) / len(union) if union else 0.0


def ideate(domain: Domain, count: int, config: GenerationConfig,
           client: TextGenClient) -> list[DescriptionRecord]:
    """Generate design-concept descriptions covering the screen taxonomy.

    Near-duplicates (token-set Jaccard >= the configured bound) are
    regenerated up to the retry budget, then kept with a warning. Failed
    requests are logged and skipped; raises ClientFailure only when every
    request failed.
    """
    if count <= 0:
        raise ConfigError("ideation count must be positive")
    config.validate()
    schedule = _schedule(domain, count, config.screen_weights)
    records: list[DescriptionRecord] = []
    accepted_tokens: list[frozenset[str]] = []
    failures = 0
    for index, screen_class in enumerate(schedule):
        text: str | None = None
        digest = ""
        for attempt in range(config.retry_budget + 1):
            prompt = ideation_prompt(domain, screen_class, index, attempt, config)
            digest = prompt_digest(prompt)
            try:
                candidate = client.complete(
                    prompt, config.ideation_temperature, seed=config.seed).strip()
            except ClientFailure as exc:
                if attempt == 0:
                    log.warning("ideation %s[%d] failed: %s", domain.value,
                                index, exc)
                    text = None
                    break
                # regeneration budget exhausted against this client: keep the
                # duplicate we already have
                break
            if not candidate:
                log.warning("ideation %s[%d] returned empty text", domain.value,
                            index)
                text = None
                break
            toks = tokens(candidate)
            dup = any(_jaccard(toks, seen) >= config.dedup_jaccard
                      for seen in accepted_tokens)
            text = candidate
            if not dup:
                break
            if attempt == config.retry_budget:
                log.warning("ideation %s[%d] still near-duplicate after %d "
                            "retries; keeping it", domain.value, index,
                            config.retry_budget)
        if text is None:
            failures += 1
            continue
        records.append(DescriptionRecord(
            id=f"{domain.value}-{index:04d}",
            domain=domain,
            target_screen_class=screen_class,
            text=text,
            prompt_digest=digest,
        ))
        accepted_tokens.append(tokens(text))
    if not records:
        raise ClientFailure(f"all {count} ideation requests failed")
    if failures:
        log.warning("ideation completed with %d/%d failures", failures, count)
    return records


def generate_markup(desc: DescriptionRecord, config: GenerationConfig,
                    client: TextGenClient,
                    viewport: Viewport | None = None) -> str:
    """One markup candidate for a description; raw client text, unmodified."""
    prompt = markup_prompt(desc.text, desc.domain, config, viewport)
    return client.complete(prompt, config.temperature, seed=config.seed)


# -- stub fixtures ----------------------------------------------------------------


def load_fixture_descriptions(fixture_dir: str | Path,
                              domain: Domain | None = None) -> list[dict]:
    path = Path(fixture_dir) / "descriptions.jsonl"
    out = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        if domain is None or rec["domain"] == domain.value:
            out.append(rec)
    return out


def build_stub_client(fixture_dir: str | Path, domain: Domain,
                      config: GenerationConfig,
                      viewport: Viewport | None = None) -> StubTextGenClient:
    """Compile a fixture directory into a digest-keyed stub client.

    The directory holds human-editable sources: ``descriptions.jsonl``
    (one {id, domain, screen_class, text} per line, in schedule order) and
    ``markup/<id>.html``. Prompts are assembled exactly as ideate/
    generate_markup assemble them, so the digests line up.
    """
    fixture_dir = Path(fixture_dir)
    rows = load_fixture_descriptions(fixture_dir, domain)
    responses: dict[str, str] = {}
    for index, row in enumerate(rows):
        screen_class = canonicalize_screen(row["screen_class"], domain)
        for attempt in range(config.retry_budget + 1):
            prompt = ideation_prompt(domain, screen_class, index, attempt, config)
            responses.setdefault(prompt_digest(prompt), row["text"])
        markup_path = fixture_dir / "markup" / f"{row['id']}.html"
        gen_prompt = markup_prompt(row["text"], domain, config, viewport)
        responses[prompt_digest(gen_prompt)] = markup_path.read_text(
            encoding="utf-8")
    return StubTextGenClient(responses)


def bundled_fixture_dir() -> Path:
    """Location of the 40-document fixture corpus shipped with the package."""
    return Path(str(resources.files("structsynth").joinpath("fixtures")))


# -- pipeline ---------------------------------------------------------------------


@dataclass(slots=True)
class PipelineConfig:
    domain: Domain
    count: int
    gen: GenerationConfig = field(default_factory=GenerationConfig)
    viewport: Viewport | None = None
    threshold: float = 0.3
    jobs: int = 1

    def resolved_viewport(self) -> Viewport:
        return self.viewport or viewport_for(self.domain)


@dataclass(slots=True)
class PipelineResult:
    descriptions: list[DescriptionRecord]
    records: list
    dropped: list
    stats: FilterStats
    failures: list[dict]
    manifest: dict
    markups: dict[str, str] = field(default_factory=dict)  # id -> raw client text


@dataclass(slots=True)
class _Outcome:
    desc: DescriptionRecord
    status: str  # ok | parse_failed | lint_rejected
    markup_text: str = ""
    record: object | None = None
    score: float = 0.0
    detail: str = ""
    lint_errors: list[dict] = field(default_factory=list)


def _derive_seed(base: int, desc_id: str) -> int:
    digest = hashlib.sha256(f"{base}:{desc_id}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _process_one(desc: DescriptionRecord, config: PipelineConfig,
                 client: TextGenClient, resolver: AssetResolver,
                 scorer: Scorer) -> _Outcome:
    viewport = config.resolved_viewport()
    markup_text = generate_markup(desc, config.gen, client, config.viewport)
    try:
        doc, diagnostics = parse_document(markup_text, config.domain)
    except FatalParse as exc:
        return _Outcome(desc, "parse_failed", markup_text, detail=str(exc))
    try:
        doc, repair_report = repair(doc)
        layout = compute_layout(doc, viewport)
        findings = lint(doc, layout, config.domain)
        if has_errors(findings):
            return _Outcome(
                desc, "lint_rejected", markup_text,
                detail="; ".join(f.message for f in findings
                                 if f.severity == "error"),
                lint_errors=[f.to_json_dict() for f in findings])
        boxes = element_boxes(layout, doc, viewport)
        assets = resolver.resolve_all(doc.placeholders)
        doc_seed = _derive_seed(config.gen.seed, desc.id)
        raster = rasterize(layout, doc, assets, doc_seed)
        alignment = score_with(scorer, raster, doc, desc.text)
        record = dataset_mod.DatasetRecord(
            id=desc.id,
            domain=config.domain,
            description=desc.text,
            raster=raster,
            image_file=f"images/{desc.id}.png",
            width=viewport.width,
            height=viewport.height,
            boxes=boxes,
            screen_class=doc.screen_label,
            score=alignment,
            repair_summary=repair_report.to_json_list(),
            lint_summary=[f.to_json_dict() for f in findings],
            provenance={
                "prompt_digest": desc.prompt_digest,
                "seed": config.gen.seed,
                "doc_seed": doc_seed,
                "scorer_id": alignment.scorer_id,
                "source_hash": doc.source_hash,
                "asset_kinds": sorted(s.kind for s in doc.placeholders),
                "diagnostics": len(diagnostics),
            },
        )
        return _Outcome(desc, "ok", markup_text, record=record,
                        score=alignment.value)
    except (ClientFailure, ScorerUnavailable, KeyboardInterrupt):
        raise
    except Exception as exc:  # per-document failure: record and skip
        log.warning("document %s failed mid-pipeline: %s", desc.id, exc)
        return _Outcome(desc, "parse_failed", markup_text,
                        detail=f"{type(exc).__name__}: {exc}")


def run_pipeline(config: PipelineConfig, client: TextGenClient,
                 providers: ProviderSet | None = None,
                 scorer: Scorer | None = None) -> PipelineResult:
    """Ideate, generate, repair, lint, render, score, and filter.

    Per-document failures are recorded and skipped; the run aborts only on
    ideation client exhaustion or an unreachable external scorer. The
    accounting identity kept + dropped + lint_rejected + parse_failed ==
    len(descriptions) always holds.
    """
    from .align import LexicalScorer

    config.gen.validate()
    scorer = scorer or LexicalScorer()
    resolver = AssetResolver(providers, seed=config.gen.seed)

    descriptions = ideate(config.domain, config.count, config.gen, client)

    jobs = max(1, config.jobs)
    if jobs == 1:
        outcomes = [_process_one(d, config, client, resolver, scorer)
                    for d in descriptions]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(
                lambda d: _process_one(d, config, client, resolver, scorer),
                descriptions))

    failures = [
        {"id": o.desc.id, "status": o.status, "detail": o.detail,
         "lint": o.lint_errors}
        for o in outcomes if o.status != "ok"
    ]
    parse_failed = sum(1 for o in outcomes if o.status == "parse_failed")
    lint_rejected = sum(1 for o in outcomes if o.status == "lint_rejected")

    scored = [(o.record, o.score) for o in outcomes if o.status == "ok"]
    kept, dropped, stats = filter_corpus(scored, config.threshold)

    manifest = {
        "tool": "structsynth",
        "prompt_version": PROMPT_VERSION,
        "domain": config.domain.value,
        "config": {
            "count": config.count,
            "temperature": config.gen.temperature,
            "ideation_temperature": config.gen.ideation_temperature,
            "threshold": config.threshold,
            "viewport": [config.resolved_viewport().width,
                         config.resolved_viewport().height],
            "dedup_jaccard": config.gen.dedup_jaccard,
        },
        "seed": config.gen.seed,
        "scorer_id": scorer.scorer_id,
        "counts": {
            "input": len(descriptions),
            "parse_failed": parse_failed,
            "lint_rejected": lint_rejected,
            "scored": len(scored),
            "kept": len(kept),
            "dropped": len(dropped),
        },
        "filter": stats.to_json_dict(),
        "failures": failures,
        "records": [r.id for r in kept],
    }
    markups = {o.desc.id: o.markup_text for o in outcomes}
    return PipelineResult(descriptions, kept, dropped, stats, failures,
                          manifest, markups)

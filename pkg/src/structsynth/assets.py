"""Placeholder resolution: provider-backed asset fetch with a deterministic
offline fallback generator.

Placeholders carry alt text and declared dims. Resolution routes simple
kinds (image/icon/background) to an image-search provider and complex
kinds (chart/diagram) to a text-to-image provider; any provider absence
or failure falls back to a synthetic raster so the pipeline never stalls.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

from .raster import Color, RasterImage

log = logging.getLogger(__name__)

NodePath = tuple[int, ...]

KINDS = ("image", "icon", "chart", "diagram", "background")

DEFAULT_ASSET_W = 200
DEFAULT_ASSET_H = 150

SEARCH_KEY_ENV = "STRUCTSYNTH_SEARCH_KEY"
T2I_KEY_ENV = "STRUCTSYNTH_T2I_KEY"


@dataclass(frozen=True, slots=True)
class PlaceholderSpec:
    path: NodePath
    alt: str
    declared_w: int | None = None
    declared_h: int | None = None
    kind: str = "image"

    @property
    def id(self) -> str:
        return "n" + ".".join(str(i) for i in self.path)

    @property
    def dims(self) -> tuple[int, int]:
        return (self.declared_w or DEFAULT_ASSET_W, self.declared_h or DEFAULT_ASSET_H)


@dataclass(slots=True)
class ResolvedAsset:
    placeholder_id: str
    source: str  # "search" | "generative" | "fallback"
    image: RasterImage
    provenance: str  # query string or seed, enough to re-fetch/re-generate


class AssetProvider(Protocol):
    """Wire-level provider: returns encoded image bytes for a placeholder."""

    name: str

    def fetch(self, spec: PlaceholderSpec) -> bytes: ...


# -- deterministic fallback ------------------------------------------------

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & _MASK64
    return h


class SplitMix64:
    """splitmix64 stream; trivial to re-implement as a test oracle."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        return self.next() % bound


def _hsl_to_rgb(h_deg: float, s: float, lum: float) -> Color:
    c = (1 - abs(2 * lum - 1)) * s
    hp = (h_deg % 360.0) / 60.0
    x = c * (1 - abs(hp % 2 - 1))
    if hp < 1:
        r, g, b = c, x, 0.0
    elif hp < 2:
        r, g, b = x, c, 0.0
    elif hp < 3:
        r, g, b = 0.0, c, x
    elif hp < 4:
        r, g, b = 0.0, x, c
    elif hp < 5:
        r, g, b = x, 0.0, c
    else:
        r, g, b = c, 0.0, x
    m = lum - c / 2
    return (round((r + m) * 255), round((g + m) * 255), round((b + m) * 255))


def alt_hue(alt: str) -> float:
    return float(fnv1a64(alt.encode("utf-8")) % 360)


def keyed_rng(alt: str, seed: int) -> SplitMix64:
    """PRNG keyed by (alt || seed): splitmix64 seeded with FNV-1a."""
    key = alt.encode("utf-8") + seed.to_bytes(8, "big")
    return SplitMix64(fnv1a64(key))


def synth_fallback(spec: PlaceholderSpec, seed: int) -> RasterImage:
    """Deterministic stand-in raster for a placeholder.

    Background color is the alt-text hue at S=0.5, L=0.7. Image/icon draw a
    centered contrasting rectangle, charts draw 5 bars with seeded heights,
    diagrams draw 3 connected boxes.
    """
    w, h = spec.dims
    hue = alt_hue(spec.alt)
    bg = _hsl_to_rgb(hue, 0.5, 0.7)
    fg = _hsl_to_rgb(hue, 0.5, 0.3)
    img = RasterImage.filled(w, h, bg)
    if spec.kind in ("image", "icon", "background"):
        rw, rh = max(1, w // 2), max(1, h // 2)
        img.fill_rect((w - rw) // 2, (h - rh) // 2, rw, rh, fg)
    elif spec.kind == "chart":
        rng = keyed_rng(spec.alt, seed)
        n = 5
        slot = max(1, w // n)
        bar_w = max(1, (slot * 3) // 4)
        for i in range(n):
            bar_h = 1 + rng.next_below(max(1, h - 1))
            img.fill_rect(i * slot + (slot - bar_w) // 2, h - bar_h, bar_w, bar_h, fg)
    elif spec.kind == "diagram":
        bw, bh = max(1, w // 4), max(1, h // 4)
        y = (h - bh) // 2
        xs = [0, (w - bw) // 2, w - bw]
        link_y = y + bh // 2
        img.fill_rect(0, link_y, w, max(1, h // 40), fg)
        for x in xs:
            img.fill_rect(x, y, bw, bh, fg)
    else:
        raise ValueError(f"unknown placeholder kind {spec.kind!r}")
    return img


# -- HTTP providers ----------------------------------------------------------


class ImageSearchProvider:
    """GET endpoint returning a JSON list of image URLs; first hit is fetched."""

    name = "search"

    def __init__(self, endpoint: str, api_key: str | None = None,
                 prefer_transparent: bool = True, timeout: float = 10.0):
        self.endpoint = endpoint
        self.api_key = api_key if api_key is not None else os.environ.get(SEARCH_KEY_ENV)
        self.prefer_transparent = prefer_transparent
        self.timeout = timeout

    def fetch(self, spec: PlaceholderSpec) -> bytes:
        import requests

        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        params = {"q": spec.alt}
        if self.prefer_transparent:
            params["transparent"] = "true"
        resp = requests.get(self.endpoint, params=params, headers=headers,
                            timeout=self.timeout)
        resp.raise_for_status()
        urls = resp.json()
        if not isinstance(urls, list) or not urls:
            raise ValueError("search provider returned no results")
        image = requests.get(str(urls[0]), timeout=self.timeout)
        image.raise_for_status()
        return image.content


class TextToImageProvider:
    """POST endpoint taking a prompt and returning raw image bytes."""

    name = "generative"

    def __init__(self, endpoint: str, api_key: str | None = None, timeout: float = 30.0):
        self.endpoint = endpoint
        self.api_key = api_key if api_key is not None else os.environ.get(T2I_KEY_ENV)
        self.timeout = timeout

    def fetch(self, spec: PlaceholderSpec) -> bytes:
        import requests

        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        resp = requests.post(self.endpoint, json={"prompt": spec.alt},
                             headers=headers, timeout=self.timeout)
        resp.raise_for_status()
        return resp.content


@dataclass
class ProviderSet:
    search: AssetProvider | None = None
    text_to_image: AssetProvider | None = None

    def for_kind(self, kind: str) -> AssetProvider | None:
        if kind in ("chart", "diagram"):
            return self.text_to_image
        return self.search


class AssetResolver:
    """Resolves placeholders with caching and bounded provider concurrency.

    The in-memory cache is keyed by (alt, kind, dims) with first-write-wins
    semantics under concurrent insert; the optional disk cache stores raw
    provider bytes content-addressed by digest.
    """

    def __init__(self, providers: ProviderSet | None = None, seed: int = 0,
                 cache_dir: str | Path | None = None, max_inflight: int = 4):
        self.providers = providers or ProviderSet()
        self.seed = seed
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._cache: dict[tuple, ResolvedAsset] = {}
        self._lock = threading.Lock()
        self._inflight = threading.Semaphore(max_inflight)

    def resolve(self, spec: PlaceholderSpec) -> ResolvedAsset:
        key = (spec.alt, spec.kind, spec.dims)
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return ResolvedAsset(spec.id, hit.source, hit.image, hit.provenance)
        asset = self._resolve_uncached(spec)
        with self._lock:
            kept = self._cache.setdefault(key, asset)
        return ResolvedAsset(spec.id, kept.source, kept.image, kept.provenance)

    def resolve_all(self, specs) -> dict[NodePath, ResolvedAsset]:
        return {spec.path: self.resolve(spec) for spec in specs}

    def _resolve_uncached(self, spec: PlaceholderSpec) -> ResolvedAsset:
        provider = self.providers.for_kind(spec.kind)
        if provider is not None:
            cached = self._disk_get(spec)
            if cached is not None:
                return cached
            try:
                with self._inflight:
                    data = provider.fetch(spec)
                image = RasterImage.from_png_bytes(data)
                self._disk_put(spec, data)
                return ResolvedAsset(spec.id, provider.name, image,
                                     provenance=f"query={spec.alt}")
            except Exception as exc:
                log.warning("provider %s failed for %r (%s); using fallback",
                            provider.name, spec.alt, exc)
        image = synth_fallback(spec, self.seed)
        return ResolvedAsset(spec.id, "fallback", image, provenance=f"seed={self.seed}")

    # -- disk cache ---------------------------------------------------------

    def _query_key(self, spec: PlaceholderSpec) -> str:
        w, h = spec.dims
        return f"{spec.kind}|{spec.alt}|{w}x{h}"

    def _index_path(self) -> Path:
        return self.cache_dir / "index.json"  # type: ignore[operator]

    def _disk_get(self, spec: PlaceholderSpec) -> ResolvedAsset | None:
        if self.cache_dir is None:
            return None
        try:
            index = json.loads(self._index_path().read_text(encoding="utf-8"))
            digest = index.get(self._query_key(spec))
            if not digest:
                return None
            data = (self.cache_dir / f"{digest}.bin").read_bytes()
            image = RasterImage.from_png_bytes(data)
            provider = self.providers.for_kind(spec.kind)
            source = provider.name if provider else "search"
            return ResolvedAsset(spec.id, source, image, provenance=f"cache={digest}")
        except (OSError, ValueError, json.JSONDecodeError):
            return None

    def _disk_put(self, spec: PlaceholderSpec, data: bytes) -> None:
        if self.cache_dir is None:
            return
        try:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            digest = hashlib.sha256(data).hexdigest()
            (self.cache_dir / f"{digest}.bin").write_bytes(data)
            with self._lock:
                try:
                    index = json.loads(self._index_path().read_text(encoding="utf-8"))
                except (OSError, json.JSONDecodeError):
                    index = {}
                index[self._query_key(spec)] = digest
                self._index_path().write_text(
                    json.dumps(index, indent=2, sort_keys=True), encoding="utf-8")
        except OSError as exc:
            log.warning("disk cache write failed: %s", exc)

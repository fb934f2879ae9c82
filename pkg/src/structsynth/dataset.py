"""Dataset materialization and corpus statistics.

Kept records are written as a COCO detection set (images + annotations +
categories), a captions JSONL, and a classification JSONL. All exports are
canonical: sorted JSON keys, LF line endings, integer pixel boxes; writing
the same records twice yields byte-identical files. Statistics mirror the
corpus-level summary counts: per-class distributions (max-normalized
log10(1+n)), average elements per sample, description word and
named-entity averages.
"""

from __future__ import annotations

import json
import math
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .align import AlignmentScore
from .errors import EmptyCorpus, MissingScreenClass, MixedDomain
from .layout import LabeledBox
from .raster import RasterImage
from .schema import Domain, ScreenClass, element_by_name, element_taxonomy

DETECTION_FILE = "coco.json"
CAPTIONS_FILE = "captions.jsonl"
CLASSIFICATION_FILE = "classification.jsonl"
IMAGES_DIR = "images"


@dataclass(slots=True)
class DatasetRecord:
    id: str
    domain: Domain
    description: str
    raster: RasterImage | None
    image_file: str
    width: int
    height: int
    boxes: list[LabeledBox]
    screen_class: ScreenClass | None
    score: AlignmentScore | None
    repair_summary: list[dict] = field(default_factory=list)
    lint_summary: list[dict] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "domain": self.domain.value,
            "description": self.description,
            "image": self.image_file,
            "width": self.width,
            "height": self.height,
            "boxes": [
                {"class": b.element_class.name, "x": b.x, "y": b.y,
                 "w": b.w, "h": b.h}
                for b in self.boxes
            ],
            "screen_class": self.screen_class.name if self.screen_class else None,
            "score": self.score.value if self.score else None,
            "scorer_id": self.score.scorer_id if self.score else None,
            "repair": self.repair_summary,
            "lint": self.lint_summary,
            "provenance": self.provenance,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DatasetRecord":
        domain = Domain.parse(data["domain"])
        boxes = [
            LabeledBox(element_by_name(domain, b["class"]),
                       b["x"], b["y"], b["w"], b["h"], path=())
            for b in data["boxes"]
        ]
        screen = (ScreenClass(domain, data["screen_class"])
                  if data.get("screen_class") else None)
        score = (AlignmentScore(data["score"], data.get("scorer_id", "lexical"))
                 if data.get("score") is not None else None)
        return cls(
            id=data["id"], domain=domain, description=data["description"],
            raster=None, image_file=data["image"], width=data["width"],
            height=data["height"], boxes=boxes, screen_class=screen,
            score=score, repair_summary=data.get("repair", []),
            lint_summary=data.get("lint", []),
            provenance=data.get("provenance", {}),
        )


def _canon_json(value) -> str:
    return json.dumps(value, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_records(records: Sequence[DatasetRecord], out_dir: str | Path) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "records.jsonl"
    lines = [json.dumps(r.to_json_dict(), sort_keys=True, ensure_ascii=False)
             for r in records]
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    return path


def load_records(path: str | Path) -> list[DatasetRecord]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            out.append(DatasetRecord.from_json_dict(json.loads(line)))
    return out


def _write_images(records: Sequence[DatasetRecord], out_dir: Path) -> None:
    images = out_dir / IMAGES_DIR
    images.mkdir(parents=True, exist_ok=True)
    for rec in records:
        target = out_dir / rec.image_file
        target.parent.mkdir(parents=True, exist_ok=True)
        if rec.raster is not None:
            target.write_bytes(rec.raster.to_png_bytes())
        elif not target.exists():
            raise FileNotFoundError(
                f"record {rec.id} has no in-memory raster and {target} is missing")


def export_detection(records: Sequence[DatasetRecord],
                     out_dir: str | Path,
                     file_name: str = DETECTION_FILE) -> Path:
    """COCO detection export: writes images/ plus a canonical JSON file."""
    if not records:
        raise EmptyCorpus("detection export needs at least one record")
    domains = {r.domain for r in records}
    if len(domains) != 1:
        raise MixedDomain(f"records span domains {sorted(d.value for d in domains)}")
    domain = records[0].domain
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_images(records, out)

    images = []
    annotations = []
    ann_id = 1
    for image_id, rec in enumerate(records, start=1):
        images.append({
            "id": image_id,
            "file_name": rec.image_file,
            "width": rec.width,
            "height": rec.height,
        })
        for box in rec.boxes:
            annotations.append({
                "id": ann_id,
                "image_id": image_id,
                "category_id": box.element_class.id,
                "bbox": [box.x, box.y, box.w, box.h],
                "area": box.w * box.h,
                "iscrowd": 0,
            })
            ann_id += 1
    categories = [
        {"id": c.id, "name": c.name, "supercategory": domain.value}
        for c in element_taxonomy(domain)
    ]
    payload = {"images": images, "annotations": annotations,
               "categories": categories}
    path = out / file_name
    path.write_text(_canon_json(payload), encoding="utf-8")
    return path


def export_captions(records: Sequence[DatasetRecord],
                    out_path: str | Path) -> Path:
    """Caption export: one {image_id, caption} JSON line per record."""
    if not records:
        raise EmptyCorpus("caption export needs at least one record")
    ordered = sorted(records, key=lambda r: r.id)
    lines = [
        json.dumps({"image_id": r.id, "caption": r.description},
                   sort_keys=True, ensure_ascii=False)
        for r in ordered
    ]
    path = Path(out_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def export_classification(records: Sequence[DatasetRecord],
                          out_path: str | Path) -> Path:
    """Classification export: one {image_id, label} line, canonical lowercase."""
    if not records:
        raise EmptyCorpus("classification export needs at least one record")
    ordered = sorted(records, key=lambda r: r.id)
    lines = []
    for rec in ordered:
        if rec.screen_class is None:
            raise MissingScreenClass(rec.id)
        lines.append(json.dumps({"image_id": rec.id,
                                 "label": rec.screen_class.name},
                                sort_keys=True, ensure_ascii=False))
    path = Path(out_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def split_records(records: Sequence[DatasetRecord], fractions: Sequence[float],
                  seed: int) -> dict[str, list[DatasetRecord]]:
    """Seeded disjoint train/val/test split covering every record."""
    if len(fractions) != 3:
        raise ValueError("expected three split fractions")
    total = sum(fractions)
    if total <= 0:
        raise ValueError("split fractions must sum to a positive value")
    norm = [f / total for f in fractions]
    indices = list(range(len(records)))
    random.Random(seed).shuffle(indices)
    n = len(records)
    n_train = math.floor(norm[0] * n)
    n_val = math.floor(norm[1] * n)
    picks = {
        "train": indices[:n_train],
        "val": indices[n_train:n_train + n_val],
        "test": indices[n_train + n_val:],
    }
    return {name: [records[i] for i in sorted(idx)]
            for name, idx in picks.items()}


# -- statistics -------------------------------------------------------------------


@dataclass(slots=True)
class CorpusStats:
    n_descriptions: int
    n_kept: int
    n_images_and_icons: int
    n_charts: int
    avg_elements: float
    per_class_counts: dict[str, int]
    normalized_log_distribution: dict[str, float]
    desc_avg_words: float
    desc_avg_entities: float
    images_per_sample: float
    charts_per_sample: float
    diagrams_per_sample: float
    elements_per_sample: float

    def to_json_dict(self) -> dict:
        return {
            "n_descriptions": self.n_descriptions,
            "n_kept": self.n_kept,
            "n_images_and_icons": self.n_images_and_icons,
            "n_charts": self.n_charts,
            "avg_elements": self.avg_elements,
            "per_class_counts": self.per_class_counts,
            "normalized_log_distribution": self.normalized_log_distribution,
            "desc_avg_words": self.desc_avg_words,
            "desc_avg_entities": self.desc_avg_entities,
            "per_sample": {
                "images": self.images_per_sample,
                "charts": self.charts_per_sample,
                "diagrams": self.diagrams_per_sample,
                "elements": self.elements_per_sample,
            },
        }


_SENTENCE_END = re.compile(r"[.!?]$")


def count_words(text: str) -> int:
    return len(text.split())


def count_entities(text: str) -> int:
    """Maximal runs of capitalized tokens, excluding sentence-initial ones.

    A deterministic stand-in for NER: a token counts as capitalized when its
    first alphabetic character is uppercase; the token that opens the text
    or follows sentence-ending punctuation never starts (or joins) a run.
    """
    tokens = text.split()
    runs = 0
    in_run = False
    sentence_initial = True
    for token in tokens:
        stripped = token.strip("\"'()[]{},;:")
        first_alpha = next((ch for ch in stripped if ch.isalpha()), "")
        capitalized = bool(first_alpha) and first_alpha.isupper()
        if capitalized and not sentence_initial:
            if not in_run:
                runs += 1
                in_run = True
        else:
            in_run = False
        sentence_initial = bool(_SENTENCE_END.search(stripped))
    return runs


def normalized_log_distribution(counts: dict[str, int]) -> dict[str, float]:
    """Per class: log10(1 + n) divided by the max over classes (max maps to 1)."""
    logs = {name: math.log10(1 + n) for name, n in counts.items()}
    peak = max(logs.values(), default=0.0)
    if peak == 0.0:
        return {name: 0.0 for name in counts}
    return {name: value / peak for name, value in logs.items()}


def compute_stats(records: Sequence[DatasetRecord],
                  descriptions: Sequence[str]) -> CorpusStats:
    """Aggregate corpus statistics; empty inputs yield all-zero stats."""
    n_kept = len(records)
    per_class: dict[str, int] = {}
    if records:
        for cls in element_taxonomy(records[0].domain):
            per_class[cls.name] = 0
    total_boxes = 0
    images = charts = diagrams = 0
    n_assets_imgish = n_assets_chart = 0
    for rec in records:
        total_boxes += len(rec.boxes)
        for box in rec.boxes:
            name = box.element_class.name
            per_class[name] = per_class.get(name, 0) + 1
            if name in ("image", "background image"):
                images += 1
            elif name == "chart":
                charts += 1
            elif name in ("diagram", "schematic diagram"):
                diagrams += 1
        for kind in rec.provenance.get("asset_kinds", []):
            if kind in ("image", "icon", "background"):
                n_assets_imgish += 1
            elif kind == "chart":
                n_assets_chart += 1

    word_counts = [count_words(d) for d in descriptions]
    entity_counts = [count_entities(d) for d in descriptions]
    n_desc = len(descriptions)

    def per_sample(total: int) -> float:
        return total / n_kept if n_kept else 0.0

    return CorpusStats(
        n_descriptions=n_desc,
        n_kept=n_kept,
        n_images_and_icons=n_assets_imgish,
        n_charts=n_assets_chart,
        avg_elements=per_sample(total_boxes),
        per_class_counts=per_class,
        normalized_log_distribution=normalized_log_distribution(per_class),
        desc_avg_words=sum(word_counts) / n_desc if n_desc else 0.0,
        desc_avg_entities=sum(entity_counts) / n_desc if n_desc else 0.0,
        images_per_sample=per_sample(images),
        charts_per_sample=per_sample(charts),
        diagrams_per_sample=per_sample(diagrams),
        elements_per_sample=per_sample(total_boxes),
    )


# -- reporting --------------------------------------------------------------------


def format_percent(part: int, whole: int) -> str:
    """Percentage at 1-2 decimals: exact values that terminate within two
    decimals print exactly (3.36%); everything else rounds to one (2.1%)."""
    if whole <= 0:
        return "0.0%"
    if (part * 100 * 100) % whole == 0:
        text = f"{part * 100 / whole:.2f}"
        if text.endswith("0"):
            text = text[:-1]
        return f"{text}%"
    return f"{part * 100 / whole:.1f}%"


def stats_report(stats: CorpusStats, filter_stats=None,
                 reference: dict | None = None) -> str:
    """Human-readable corpus report, with optional reference deltas."""
    lines = [
        "corpus statistics",
        f"  descriptions: {stats.n_descriptions}",
        f"  kept samples: {stats.n_kept}",
        f"  images and icons resolved: {stats.n_images_and_icons}",
        f"  charts resolved: {stats.n_charts}",
        f"  avg elements per sample: {stats.avg_elements:.2f}",
        f"  avg description words: {stats.desc_avg_words:.2f}",
        f"  avg description entities: {stats.desc_avg_entities:.2f}",
    ]
    if filter_stats is not None:
        pct = format_percent(filter_stats.dropped_count, filter_stats.input_count)
        lines.append(
            f"  filtered out {filter_stats.dropped_count} ({pct}) of "
            f"{filter_stats.input_count} at threshold {filter_stats.threshold}")
    lines.append("  per-class counts (normalized log distribution):")
    for name, count in stats.per_class_counts.items():
        norm = stats.normalized_log_distribution.get(name, 0.0)
        ref = ""
        if reference and name in reference:
            ref = f"  [ref {reference[name]}, delta {count - reference[name]:+d}]"
        lines.append(f"    {name}: {count} ({norm:.3f}){ref}")
    return "\n".join(lines)

"""Heuristic repair and principle-based linting.

Repair applies four total, idempotent rewrites to common generation
defects: H1 removes background fills that sit under a background image,
H2 gives every img concrete or auto-fit dimensions (and a synthetic alt
when missing), H3 un-hides sliding menus and pulls their origin back into
the viewport, H4 strips `data-type` wherever it appears as a CSS property
inside a <style> block. Lint reports quantitative design-rule violations
(tap-target and slide font minimums), annotation defects, overflow, and
heavy occlusion between labeled boxes.
"""

from __future__ import annotations

import copy
import re
from dataclasses import dataclass

from . import schema
from .assets import NodePath
from .errors import UnknownLabel
from .layout import (
    LabeledBox,
    LayoutTree,
    clip_box,
    element_boxes,
    viewport_for,
)
from .markup import (
    TEXT_TAG,
    AnnotatedDocument,
    Length,
    Node,
    StyleDecl,
    Url,
    refresh_annotations,
    render_style,
)
from .schema import Domain

MIN_TAP_TARGET_PX = 44
MIN_SLIDE_TEXT_PX = 32.0  # 24pt at 4/3 px per pt
OCCLUSION_THRESHOLD = 0.9

H1 = "H1-bgfill"
H2 = "H2-imgdims"
H3 = "H3-menu-open"
H4 = "H4-css-metadata"


@dataclass(frozen=True, slots=True)
class RepairAction:
    rule: str
    path: NodePath
    before: str
    after: str


@dataclass(slots=True)
class RepairReport:
    applied: list[RepairAction]

    def to_json_list(self) -> list[dict]:
        return [
            {"rule": a.rule, "path": list(a.path),
             "before": a.before, "after": a.after}
            for a in self.applied
        ]


@dataclass(frozen=True, slots=True)
class LintFinding:
    rule: str
    severity: str  # "error" | "warning"
    path: NodePath | None
    message: str
    measured: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "rule": self.rule,
            "severity": self.severity,
            "path": list(self.path) if self.path is not None else None,
            "message": self.message,
            "measured": self.measured,
        }


# -- repair --------------------------------------------------------------------

_CSS_DATA_TYPE_RE = re.compile(r"data-type\s*:\s*[^;{}]*;?")


def _walk(node: Node, path: NodePath = ()):
    yield path, node
    for i, child in enumerate(node.children):
        yield from _walk(child, path + (i,))


def _img_has_dim(node: Node, attr: str) -> bool:
    raw = node.attrs.get(attr)
    if raw is not None:
        if raw == "auto-fit":
            return True
        try:
            return float(raw) > 0
        except ValueError:
            pass
    decl = node.find_style(attr)
    return (decl is not None and isinstance(decl.value, Length)
            and decl.value.unit != "%" and decl.value.value > 0)


def _img_dim(node: Node, attr: str) -> float | None:
    raw = node.attrs.get(attr)
    if raw is not None and raw != "auto-fit":
        try:
            v = float(raw)
            if v > 0:
                return v
        except ValueError:
            pass
    decl = node.find_style(attr)
    if decl is not None and isinstance(decl.value, Length) and decl.value.unit != "%":
        px = decl.value.to_px()
        if px and px > 0:
            return px
    return None


def repair(doc: AnnotatedDocument) -> tuple[AnnotatedDocument, RepairReport]:
    """Apply H1-H4; returns a new document (input untouched) and the report.

    Total and idempotent: repairing an already-clean document returns it
    unchanged with an empty report.
    """
    root = copy.deepcopy(doc.root)
    actions: list[RepairAction] = []
    kind_by_path = {spec.path: spec.kind for spec in doc.placeholders}
    label_by_path = dict(doc.element_labels)
    vp = viewport_for(doc.domain)

    for path, node in _walk(root):
        if node.tag == "style" and node.text:
            new_text, count = _CSS_DATA_TYPE_RE.subn("", node.text)
            if count:
                actions.append(RepairAction(
                    H4, path, node.text,
                    f"stripped {count} data-type declaration(s)"))
                node.text = new_text

        bg_color = node.find_style("background-color")
        bg_image = node.find_style("background-image")
        if bg_color is not None and bg_image is not None \
                and isinstance(bg_image.value, Url):
            before = render_style(node.style)
            node.drop_style("background-color")
            actions.append(RepairAction(H1, path, before, render_style(node.style)))

        if node.tag == "img":
            has_w = _img_has_dim(node, "width")
            has_h = _img_has_dim(node, "height")
            if not (has_w and has_h):
                before = f'width={node.attrs.get("width")!r} height={node.attrs.get("height")!r}'
                if not has_w and not has_h:
                    node.attrs["width"] = "auto-fit"
                    node.attrs["height"] = "auto-fit"
                elif has_w:
                    w = _img_dim(node, "width")
                    node.attrs["height"] = str(int(round(w * 3 / 4)))  # type: ignore[operator]
                else:
                    h = _img_dim(node, "height")
                    node.attrs["width"] = str(int(round(h * 4 / 3)))  # type: ignore[operator]
                after = f'width={node.attrs.get("width")!r} height={node.attrs.get("height")!r}'
                actions.append(RepairAction(H2, path, before, after))
            if path in kind_by_path and not node.attrs.get("alt", "").strip():
                node.attrs["alt"] = f"untitled {kind_by_path[path]}"
                actions.append(RepairAction(H2, path, "alt=''",
                                            f'alt={node.attrs["alt"]!r}'))

        cls = label_by_path.get(path)
        if cls is not None and cls.name == "sliding menu":
            display = node.find_style("display")
            if display is not None and display.value == "none":
                before = render_style(node.style)
                node.set_style("display", "block")
                actions.append(RepairAction(H3, path, before,
                                            render_style(node.style)))
            position = node.find_style("position")
            if position is not None and position.value == "absolute":
                changed = False
                before = render_style(node.style)
                for prop, bound in (("left", vp.width - 1), ("top", vp.height - 1)):
                    decl = node.find_style(prop)
                    if decl is not None and isinstance(decl.value, Length):
                        px = decl.value.to_px(
                            vp.width if prop == "left" else vp.height)
                        if px is not None and (px < 0 or px > bound):
                            node.set_style(prop, Length(
                                float(min(max(px, 0), bound)), "px"))
                            changed = True
                for prop in ("right", "bottom"):
                    decl = node.find_style(prop)
                    if decl is not None and isinstance(decl.value, Length):
                        px = decl.value.to_px(
                            vp.width if prop == "right" else vp.height)
                        if px is not None and px < 0:
                            node.set_style(prop, Length(0.0, "px"))
                            changed = True
                if changed:
                    actions.append(RepairAction(H3, path, before,
                                                render_style(node.style)))

    if not actions:
        return doc, RepairReport([])
    repaired = AnnotatedDocument(
        root=root, domain=doc.domain, element_labels=doc.element_labels,
        screen_label=doc.screen_label, placeholders=doc.placeholders,
        source_hash=doc.source_hash)
    return refresh_annotations(repaired), RepairReport(actions)


# -- lint ----------------------------------------------------------------------


def _is_ancestor(a: NodePath, b: NodePath) -> bool:
    return len(a) < len(b) and b[: len(a)] == a


def _iomin(a: LabeledBox, b: LabeledBox) -> float:
    ix = max(0, min(a.x + a.w, b.x + b.w) - max(a.x, b.x))
    iy = max(0, min(a.y + a.h, b.y + b.h) - max(a.y, b.y))
    smaller = min(a.w * a.h, b.w * b.h)
    if smaller <= 0:
        return 0.0
    return (ix * iy) / smaller


def occlusion_score(layout: LayoutTree, labels: list[LabeledBox]) -> float:
    """Max pairwise intersection-over-minimum among non-ancestor labeled
    boxes; 0.0 with fewer than two boxes."""
    best = 0.0
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            a, b = labels[i], labels[j]
            if _is_ancestor(a.path, b.path) or _is_ancestor(b.path, a.path):
                continue
            best = max(best, _iomin(a, b))
    return best


def lint(doc: AnnotatedDocument, layout: LayoutTree,
         domain: Domain) -> list[LintFinding]:
    """Pure, order-stable lint over a parsed and laid-out document."""
    findings: list[LintFinding] = []
    vp = layout.viewport

    if domain is Domain.UI:
        for path, cls in doc.element_labels:
            if cls.name not in ("text button", "icon"):
                continue
            box = layout.boxes.get(path)
            if box is None:
                continue
            clipped = clip_box(box, vp)
            if clipped is None:
                continue
            _, _, w, h = clipped
            if w < MIN_TAP_TARGET_PX or h < MIN_TAP_TARGET_PX:
                findings.append(LintFinding(
                    "P1-tap-target", "warning", path,
                    f"{cls.name} is {w}x{h}px; minimum tap target is "
                    f"{MIN_TAP_TARGET_PX}x{MIN_TAP_TARGET_PX}",
                    measured=float(min(w, h))))
    else:
        for path, cls in doc.element_labels:
            if cls.name != "text box":
                continue
            paint = layout.paints.get(path)
            if paint is None:
                continue
            if paint.font_size < MIN_SLIDE_TEXT_PX - 1e-9:
                findings.append(LintFinding(
                    "P1-slide-font", "warning", path,
                    f"text box font is {paint.font_size:.4g}px; slides need "
                    f">= {MIN_SLIDE_TEXT_PX:.4g}px (24pt)",
                    measured=paint.font_size))

    for path, node in _walk(doc.root):
        raw = node.attrs.get(schema.ELEMENT_ATTR)
        if raw is None or node.tag == TEXT_TAG:
            continue
        try:
            schema.canonicalize_label(raw, domain)
        except UnknownLabel:
            findings.append(LintFinding(
                "P3-unknown-label", "error", path,
                f"data-type {raw!r} has no canonical class", measured=None))

    if doc.screen_label is None:
        findings.append(LintFinding(
            "P3-missing-screen-label", "error", None,
            "document has no screentype meta label"))

    for path in sorted(layout.overflow_flags):
        findings.append(LintFinding(
            "OV-overflow", "warning", path,
            "box extends outside the viewport before clipping"))

    labels = element_boxes(layout, doc, vp)
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            a, b = labels[i], labels[j]
            if _is_ancestor(a.path, b.path) or _is_ancestor(b.path, a.path):
                continue
            score = _iomin(a, b)
            if score > OCCLUSION_THRESHOLD:
                findings.append(LintFinding(
                    "OC-occlusion", "warning", b.path,
                    f"{a.element_class.name} and {b.element_class.name} overlap "
                    f"with IoMin {score:.3f}", measured=score))
    return findings


def has_errors(findings: list[LintFinding]) -> bool:
    return any(f.severity == "error" for f in findings)

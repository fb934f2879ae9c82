"""Deterministic box layout engine for the markup dialect.

Rules, in brief: block boxes fill the container content width and stack
vertically; span/inline-block (and button, img, input) shrink-wrap; flex
containers lay children on one axis with gap/justify-content/align-items
(single line, no wrap); position:absolute resolves offsets against the
nearest positioned ancestor, else the viewport; percentages resolve
against the container content box; text uses fixed metrics (glyph advance
0.6em, line height 1.2em, greedy word wrap). There are no user-agent
default margins, no margin collapsing, and declared width/height size the
content box. Everything is a pure function of (document, viewport).
"""

from __future__ import annotations

import logging
import math
from contextlib import contextmanager
from dataclasses import dataclass, field

from .assets import NodePath
from .markup import (
    TEXT_TAG,
    AnnotatedDocument,
    Diagnostic,
    Length,
    Node,
    Url,
)
from .raster import BLACK, Color
from .schema import Domain, ElementClass

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Viewport:
    width: int
    height: int


SLIDE_VIEWPORT = Viewport(1280, 720)
UI_VIEWPORT = Viewport(628, 1118)


def viewport_for(domain: Domain) -> Viewport:
    return SLIDE_VIEWPORT if domain is Domain.SLIDE else UI_VIEWPORT


@dataclass(slots=True)
class Box:
    x: float
    y: float
    w: float
    h: float
    path: NodePath


@dataclass(frozen=True, slots=True)
class TextLine:
    x: float
    y: float  # line top
    width: float


@dataclass(slots=True)
class TextBlock:
    lines: list[TextLine]
    line_height: float
    font_size: float
    color: Color


@dataclass(slots=True)
class NodePaint:
    """Computed paint-relevant style for one element node."""

    font_size: float
    color: Color
    background_color: Color | None  # None means nothing to paint
    background_image: str | None


@dataclass(slots=True)
class LayoutTree:
    viewport: Viewport
    boxes: dict[NodePath, Box] = field(default_factory=dict)
    overflow_flags: set[NodePath] = field(default_factory=set)
    text_blocks: dict[NodePath, TextBlock] = field(default_factory=dict)
    paints: dict[NodePath, NodePaint] = field(default_factory=dict)
    warnings: list[Diagnostic] = field(default_factory=list)


@dataclass(frozen=True, slots=True)
class LabeledBox:
    element_class: ElementClass
    x: int
    y: int
    w: int
    h: int
    path: NodePath


# -- style computation ---------------------------------------------------------

DEFAULT_FONT_SIZE = 16.0
TAG_FONT_SIZE = {"h1": 32.0, "h2": 24.0, "h3": 20.0}
_SHRINK_TAGS = frozenset({"span", "img", "button", "input"})
INPUT_DEFAULT_W = 160.0
INPUT_DEFAULT_H = 24.0
AUTO_FIT_MAX_W = 200.0
AUTO_FIT_RATIO = 3.0 / 4.0  # height = width * 3/4 (4:3 aspect)


@dataclass(slots=True)
class _Inherited:
    font_size: float = DEFAULT_FONT_SIZE
    color: Color = BLACK


@dataclass(slots=True)
class _Style:
    display: str
    position: str
    font_size: float
    color: Color
    background_color: Color | None
    background_image: str | None


def _style_len(node: Node, prop: str) -> Length | None:
    decl = node.find_style(prop)
    if decl is not None and isinstance(decl.value, Length):
        return decl.value
    return None


def _style_kw(node: Node, prop: str, default: str) -> str:
    decl = node.find_style(prop)
    if decl is not None and isinstance(decl.value, str):
        return decl.value
    return default


def _compute_style(node: Node, inh: _Inherited) -> _Style:
    display = _style_kw(node, "display", "inline-block"
                        if node.tag in _SHRINK_TAGS else "block")
    if display == "inline":
        display = "inline-block"
    fs_decl = _style_len(node, "font-size")
    if fs_decl is not None:
        # font-size percentages resolve against the inherited size
        font_size = fs_decl.to_px(inh.font_size) or inh.font_size
    else:
        font_size = TAG_FONT_SIZE.get(node.tag, inh.font_size)
    color_decl = node.find_style("color")
    color = color_decl.value if color_decl is not None and isinstance(
        color_decl.value, tuple) else inh.color
    bg_decl = node.find_style("background-color")
    background = bg_decl.value if bg_decl is not None and isinstance(
        bg_decl.value, tuple) else None
    img_decl = node.find_style("background-image")
    background_image = img_decl.value.url if img_decl is not None and isinstance(
        img_decl.value, Url) else None
    return _Style(
        display=display,
        position=_style_kw(node, "position", "static"),
        font_size=font_size,
        color=color,  # type: ignore[arg-type]
        background_color=background,  # type: ignore[arg-type]
        background_image=background_image,
    )


def _resolve(length: Length | None, reference: float | None) -> float | None:
    if length is None:
        return None
    return length.to_px(reference)


def _nonneg(value: float | None) -> float:
    if value is None:
        return 0.0
    return max(0.0, value)


@dataclass(frozen=True, slots=True)
class _Rect:
    x: float
    y: float
    w: float
    h: float


@dataclass(slots=True)
class _Edges:
    ml: float
    mr: float
    mt: float
    mb: float
    pl: float
    pr: float
    pt: float
    pb: float


def _edges(node: Node, cb_w: float) -> _Edges:
    # CSS convention: percentage margins and paddings resolve against the
    # containing block width on every side.
    return _Edges(
        ml=_nonneg(_resolve(_style_len(node, "margin-left"), cb_w)),
        mr=_nonneg(_resolve(_style_len(node, "margin-right"), cb_w)),
        mt=_nonneg(_resolve(_style_len(node, "margin-top"), cb_w)),
        mb=_nonneg(_resolve(_style_len(node, "margin-bottom"), cb_w)),
        pl=_nonneg(_resolve(_style_len(node, "padding-left"), cb_w)),
        pr=_nonneg(_resolve(_style_len(node, "padding-right"), cb_w)),
        pt=_nonneg(_resolve(_style_len(node, "padding-top"), cb_w)),
        pb=_nonneg(_resolve(_style_len(node, "padding-bottom"), cb_w)),
    )


@dataclass(slots=True)
class _Placed:
    box: Box
    ml: float
    mr: float
    mt: float
    mb: float

    @property
    def outer_w(self) -> float:
        return self.ml + self.box.w + self.mr


class _Engine:
    def __init__(self, doc: AnnotatedDocument, viewport: Viewport):
        self.doc = doc
        self.vp = viewport
        self.tree = LayoutTree(viewport)

    @contextmanager
    def _probe(self):
        """Measure into a scratch tree, then restore (used by flex sizing)."""
        saved = self.tree
        self.tree = LayoutTree(self.vp)
        try:
            yield
        finally:
            self.tree = saved

    def run(self) -> LayoutTree:
        body = self.doc.body
        vp_rect = _Rect(0.0, 0.0, float(self.vp.width), float(self.vp.height))
        self.layout_element(
            body, (1,), x=0.0, y=0.0, cb_w=vp_rect.w, cb_h=vp_rect.h,
            inh=_Inherited(), pos_rect=vp_rect, shrink_ctx=False,
        )
        self._flag_overflow()
        return self.tree

    # -- element layout ------------------------------------------------------

    def layout_element(self, node: Node, path: NodePath, x: float, y: float,
                       cb_w: float, cb_h: float | None, inh: _Inherited,
                       pos_rect: _Rect, shrink_ctx: bool,
                       forced_border_w: float | None = None,
                       forced_border_h: float | None = None) -> _Placed | None:
        if node.tag in ("meta", "style", "head") or node.tag == TEXT_TAG:
            return None
        st = _compute_style(node, inh)
        if st.display == "none":
            return None

        e = _edges(node, cb_w)
        width_decl = _resolve(_style_len(node, "width"), cb_w)
        height_decl = self._resolve_height(node, path, cb_h)
        child_inh = _Inherited(st.font_size, st.color)

        if node.tag == "img":
            content_w, content_h = self._img_dims(
                node, cb_w - e.ml - e.mr - e.pl - e.pr)
        elif node.tag == "input":
            content_w = width_decl if width_decl is not None else INPUT_DEFAULT_W
            content_h = height_decl if height_decl is not None else INPUT_DEFAULT_H
        else:
            if forced_border_w is not None:
                content_w = max(0.0, forced_border_w - e.pl - e.pr)
            elif width_decl is not None:
                content_w = max(0.0, width_decl)
            elif st.display == "inline-block" or shrink_ctx:
                content_w = None  # shrink-wrap: determined by children
            else:
                content_w = max(0.0, cb_w - e.ml - e.mr - e.pl - e.pr)

            avail = content_w if content_w is not None else max(
                0.0, cb_w - e.ml - e.mr - e.pl - e.pr)
            cx = x + e.ml + e.pl
            cy = y + e.mt + e.pt
            if st.position != "static":
                child_pos = _Rect(
                    x + e.ml, y + e.mt,
                    (content_w if content_w is not None else avail) + e.pl + e.pr,
                    (height_decl + e.pt + e.pb) if height_decl is not None else 0.0)
            else:
                child_pos = pos_rect

            if st.display == "flex":
                if content_w is None:
                    content_w = avail  # flex containers fill their container
                flow_h = self._layout_flex(
                    node, path, cx, cy, content_w, height_decl, child_inh,
                    child_pos)
            else:
                flow_h, max_ext = self._flow(
                    node.children, path, cx, cy, avail, height_decl, child_inh,
                    child_pos, shrink_children=content_w is None)
                if content_w is None:
                    content_w = max_ext
            content_h = height_decl if height_decl is not None else flow_h

        if forced_border_h is not None:
            content_h = max(0.0, forced_border_h - e.pt - e.pb)

        box = Box(x + e.ml, y + e.mt,
                  content_w + e.pl + e.pr, content_h + e.pt + e.pb, path)

        # relative positioning shifts the whole subtree after normal layout
        if st.position == "relative":
            dx, dy = self._relative_shift(node, cb_w, cb_h)
            if dx or dy:
                box.x += dx
                box.y += dy
                self._translate_subtree(path, dx, dy)

        self.tree.boxes[path] = box
        self.tree.paints[path] = NodePaint(
            st.font_size, st.color, st.background_color, st.background_image)
        return _Placed(box, e.ml, e.mr, e.mt, e.mb)

    def _resolve_height(self, node: Node, path: NodePath,
                        cb_h: float | None) -> float | None:
        decl = _style_len(node, "height")
        if decl is None:
            return None
        if decl.unit == "%" and cb_h is None:
            self.tree.warnings.append(Diagnostic(
                "warning", "percent-height",
                "percent height against auto-height container resolves to 0",
                node.line, node.col, path))
            return 0.0
        return max(0.0, decl.to_px(cb_h))  # type: ignore[arg-type]

    def _img_dims(self, node: Node, avail_w: float) -> tuple[float, float]:
        w = self._dim_from(node, "width")
        h = self._dim_from(node, "height")
        if node.attrs.get("width") == "auto-fit" or node.attrs.get("height") == "auto-fit" \
                or (w is None and h is None):
            fit_w = min(AUTO_FIT_MAX_W, max(1.0, avail_w))
            return fit_w, fit_w * AUTO_FIT_RATIO
        if w is None:
            w = h / AUTO_FIT_RATIO  # type: ignore[operator]
        if h is None:
            h = w * AUTO_FIT_RATIO
        return max(0.0, w), max(0.0, h)

    def _dim_from(self, node: Node, attr: str) -> float | None:
        raw = node.attrs.get(attr)
        if raw is not None and raw != "auto-fit":
            try:
                v = float(raw)
                if v >= 0:
                    return v
            except ValueError:
                pass
        decl = _style_len(node, attr)
        if decl is not None and decl.unit != "%":
            return max(0.0, decl.to_px())  # type: ignore[arg-type]
        return None

    def _relative_shift(self, node: Node, cb_w: float,
                        cb_h: float | None) -> tuple[float, float]:
        left = _resolve(_style_len(node, "left"), cb_w)
        right = _resolve(_style_len(node, "right"), cb_w)
        top = _resolve(_style_len(node, "top"), cb_h if cb_h is not None else 0.0)
        bottom = _resolve(_style_len(node, "bottom"),
                          cb_h if cb_h is not None else 0.0)
        dx = left if left is not None else (-right if right is not None else 0.0)
        dy = top if top is not None else (-bottom if bottom is not None else 0.0)
        return dx, dy

    def _translate_subtree(self, prefix: NodePath, dx: float, dy: float) -> None:
        n = len(prefix)
        for p, box in self.tree.boxes.items():
            if p != prefix and p[:n] == prefix:
                box.x += dx
                box.y += dy
        for p, tb in self.tree.text_blocks.items():
            if p[:n] == prefix:
                tb.lines = [TextLine(l.x + dx, l.y + dy, l.width) for l in tb.lines]

    # -- normal flow -----------------------------------------------------------

    def _flow(self, children: list[Node], base_path: NodePath, cx: float,
              cy: float, avail_w: float, cb_h: float | None, inh: _Inherited,
              pos_rect: _Rect, shrink_children: bool) -> tuple[float, float]:
        """Stack children vertically; returns (flow height, max outer extent)."""
        cursor = cy
        max_ext = 0.0
        for idx, child in enumerate(children):
            path = base_path + (idx,)
            if child.tag == TEXT_TAG:
                tb_h, tb_w = self._layout_text(child, path, cx, cursor, avail_w, inh)
                cursor += tb_h
                max_ext = max(max_ext, tb_w)
                continue
            if child.tag in ("meta", "style", "head"):
                continue
            st = _compute_style(child, inh)
            if st.display == "none":
                continue
            if st.position == "absolute":
                self._layout_absolute(child, path, pos_rect, (cx, cursor), inh)
                continue
            placed = self.layout_element(
                child, path, x=cx, y=cursor, cb_w=avail_w, cb_h=cb_h, inh=inh,
                pos_rect=pos_rect, shrink_ctx=shrink_children)
            if placed is None:
                continue
            cursor = placed.box.y + placed.box.h + placed.mb
            max_ext = max(max_ext, placed.outer_w)
        return cursor - cy, max_ext

    def _layout_text(self, node: Node, path: NodePath, x: float, y: float,
                     avail_w: float, inh: _Inherited) -> tuple[float, float]:
        fs = inh.font_size
        advance = 0.6 * fs
        line_height = 1.2 * fs
        words = (node.text or "").split()
        lines: list[TextLine] = []
        if words and advance > 0:
            cur_chars = 0
            cur_count = 0
            for word in words:
                chars_if_added = cur_chars + (1 if cur_count else 0) + len(word)
                if cur_count and chars_if_added * advance > avail_w + 1e-9:
                    lines.append(TextLine(x, y + len(lines) * line_height,
                                          cur_chars * advance))
                    cur_chars = len(word)
                    cur_count = 1
                else:
                    cur_chars = chars_if_added
                    cur_count += 1
            lines.append(TextLine(x, y + len(lines) * line_height,
                                  cur_chars * advance))
        height = len(lines) * line_height
        width = max((line.width for line in lines), default=0.0)
        self.tree.text_blocks[path] = TextBlock(lines, line_height, fs, inh.color)
        self.tree.boxes[path] = Box(x, y, width, height, path)
        return height, width

    # -- flex ------------------------------------------------------------------

    def _layout_flex(self, node: Node, path: NodePath, cx: float, cy: float,
                     content_w: float, height_decl: float | None,
                     inh: _Inherited, pos_rect: _Rect) -> float:
        direction = _style_kw(node, "flex-direction", "row")
        justify = _style_kw(node, "justify-content", "flex-start")
        align = _style_kw(node, "align-items", "stretch")
        main_ref = content_w if direction == "row" else (height_decl or 0.0)
        gap = _nonneg(_resolve(_style_len(node, "gap"), main_ref))

        items: list[tuple[int, Node]] = []
        absolutes: list[tuple[int, Node]] = []
        for idx, child in enumerate(node.children):
            if child.tag in ("meta", "style", "head"):
                continue
            if child.tag != TEXT_TAG:
                st = _compute_style(child, inh)
                if st.display == "none":
                    continue
                if st.position == "absolute":
                    absolutes.append((idx, child))
                    continue
            items.append((idx, child))

        # measure pass: hypothetical sizes with shrink-wrap main sizes
        measured: list[tuple[float, float, float, float, float, float]] = []
        for idx, child in items:
            with self._probe():
                if child.tag == TEXT_TAG:
                    h, w = self._layout_text(child, path + (idx,), 0.0, 0.0,
                                             content_w, inh)
                    measured.append((w, h, 0.0, 0.0, 0.0, 0.0))
                else:
                    placed = self.layout_element(
                        child, path + (idx,), 0.0, 0.0, cb_w=content_w,
                        cb_h=height_decl, inh=inh,
                        pos_rect=_Rect(0.0, 0.0, content_w, height_decl or 0.0),
                        shrink_ctx=True)
                    assert placed is not None
                    measured.append((placed.box.w, placed.box.h, placed.ml,
                                     placed.mr, placed.mt, placed.mb))

        if direction == "row":
            mains = [w + l + r for (w, h, l, r, t, b) in measured]
            crosses = [h + t + b for (w, h, l, r, t, b) in measured]
            main_size = content_w
        else:
            mains = [h + t + b for (w, h, l, r, t, b) in measured]
            crosses = [w + l + r for (w, h, l, r, t, b) in measured]
            main_size = height_decl if height_decl is not None else (
                sum(mains) + gap * max(0, len(mains) - 1))

        total = sum(mains) + gap * max(0, len(mains) - 1)
        free = main_size - total
        lead, spacing = 0.0, gap
        if free > 0:
            if justify == "center":
                lead = free / 2.0
            elif justify in ("flex-end", "end"):
                lead = free
            elif justify == "space-between" and len(items) > 1:
                spacing = gap + free / (len(items) - 1)

        if direction == "row":
            line_cross = height_decl if height_decl is not None else max(
                crosses, default=0.0)
        else:
            line_cross = content_w

        # place pass
        offset = lead
        for (idx, child), main, cross in zip(items, mains, crosses):
            if align == "center":
                cross_off = (line_cross - cross) / 2.0
            elif align in ("flex-end", "end"):
                cross_off = line_cross - cross
            else:
                cross_off = 0.0
            if child.tag == TEXT_TAG:
                if direction == "row":
                    self._layout_text(child, path + (idx,), cx + offset,
                                      cy + cross_off, content_w, inh)
                else:
                    self._layout_text(child, path + (idx,), cx + cross_off,
                                      cy + offset, line_cross, inh)
            else:
                ml, mr, mt, mb = self._item_margins(child, content_w)
                forced_w = forced_h = None
                replaced = child.tag in ("img", "input")
                if direction == "row":
                    x0, y0 = cx + offset, cy + cross_off
                    if (align == "stretch" and not replaced
                            and _style_len(child, "height") is None):
                        forced_h = max(0.0, line_cross - mt - mb)
                else:
                    x0, y0 = cx + cross_off, cy + offset
                    if (align == "stretch" and not replaced
                            and _style_len(child, "width") is None):
                        forced_w = max(0.0, line_cross - ml - mr)
                self.layout_element(
                    child, path + (idx,), x0, y0, cb_w=content_w,
                    cb_h=height_decl, inh=inh, pos_rect=pos_rect,
                    shrink_ctx=True, forced_border_w=forced_w,
                    forced_border_h=forced_h)
            offset += main + spacing

        for idx, child in absolutes:
            self._layout_absolute(child, path + (idx,), pos_rect, (cx, cy), inh)

        if direction == "row":
            return line_cross
        return max(total, 0.0)

    def _item_margins(self, node: Node, cb_w: float) -> tuple[float, float, float, float]:
        e = _edges(node, cb_w)
        return e.ml, e.mr, e.mt, e.mb

    # -- absolute positioning -----------------------------------------------

    def _layout_absolute(self, node: Node, path: NodePath, pos_rect: _Rect,
                         static_origin: tuple[float, float],
                         inh: _Inherited) -> None:
        st = _compute_style(node, inh)
        child_inh = _Inherited(st.font_size, st.color)
        e = _edges(node, pos_rect.w)
        left = _resolve(_style_len(node, "left"), pos_rect.w)
        right = _resolve(_style_len(node, "right"), pos_rect.w)
        top = _resolve(_style_len(node, "top"), pos_rect.h)
        bottom = _resolve(_style_len(node, "bottom"), pos_rect.h)

        width_decl = _resolve(_style_len(node, "width"), pos_rect.w)
        height_decl = self._resolve_height(node, path, pos_rect.h)

        if node.tag == "img":
            content_w, content_h = self._img_dims(
                node, pos_rect.w - e.pl - e.pr)
        elif node.tag == "input":
            content_w = width_decl if width_decl is not None else INPUT_DEFAULT_W
            content_h = height_decl if height_decl is not None else INPUT_DEFAULT_H
        else:
            if width_decl is not None:
                content_w = max(0.0, width_decl)
            elif left is not None and right is not None:
                content_w = max(0.0, pos_rect.w - left - right
                                - e.ml - e.mr - e.pl - e.pr)
            else:
                content_w = None  # shrink-wrap
            avail = content_w if content_w is not None else max(
                0.0, pos_rect.w - (left or 0.0) - (right or 0.0)
                - e.ml - e.mr - e.pl - e.pr)
            # children are laid out at a zero-based origin, then shifted
            provisional = _Rect(
                0.0, 0.0,
                (content_w if content_w is not None else avail) + e.pl + e.pr,
                (height_decl + e.pt + e.pb) if height_decl is not None else 0.0)
            if st.display == "flex":
                if content_w is None:
                    content_w = avail
                flow_h = self._layout_flex(
                    node, path, e.pl, e.pt, content_w, height_decl, child_inh,
                    provisional)
            else:
                flow_h, max_ext = self._flow(
                    node.children, path, e.pl, e.pt, avail, height_decl,
                    child_inh, provisional, shrink_children=content_w is None)
                if content_w is None:
                    content_w = max_ext
            if height_decl is not None:
                content_h = height_decl
            elif top is not None and bottom is not None:
                content_h = max(0.0, pos_rect.h - top - bottom
                                - e.mt - e.mb - e.pt - e.pb)
            else:
                content_h = flow_h

        bw = content_w + e.pl + e.pr
        bh = content_h + e.pt + e.pb
        if left is not None:
            bx = pos_rect.x + left + e.ml
        elif right is not None:
            bx = pos_rect.x + pos_rect.w - right - bw - e.mr
        else:
            bx = static_origin[0] + e.ml
        if top is not None:
            by = pos_rect.y + top + e.mt
        elif bottom is not None:
            by = pos_rect.y + pos_rect.h - bottom - bh - e.mb
        else:
            by = static_origin[1] + e.mt

        # children were laid out at a zero-based origin; shift into place
        self._translate_subtree(path, bx, by)
        self.tree.boxes[path] = Box(bx, by, bw, bh, path)
        self.tree.paints[path] = NodePaint(
            st.font_size, st.color, st.background_color, st.background_image)

    # -- finishing -------------------------------------------------------------

    def _flag_overflow(self) -> None:
        vw, vh = float(self.vp.width), float(self.vp.height)
        for path, box in self.tree.boxes.items():
            node = self.doc.node_at(path)
            if node.tag == TEXT_TAG:
                continue
            if box.x < 0 or box.y < 0 or box.x + box.w > vw or box.y + box.h > vh:
                self.tree.overflow_flags.add(path)


def compute_layout(doc: AnnotatedDocument, viewport: Viewport) -> LayoutTree:
    """Compute border boxes for every element under the given viewport."""
    return _Engine(doc, viewport).run()


def round_half_away(v: float) -> int:
    if v >= 0:
        return math.floor(v + 0.5)
    return math.ceil(v - 0.5)


def clip_box(box: Box, viewport: Viewport) -> tuple[int, int, int, int] | None:
    """Clip to the viewport and round edges to integers (ties away from zero).

    Returns (x, y, w, h) or None when the post-clip area is below 1 px².
    """
    x1 = max(0.0, box.x)
    y1 = max(0.0, box.y)
    x2 = min(float(viewport.width), box.x + box.w)
    y2 = min(float(viewport.height), box.y + box.h)
    if x2 <= x1 or y2 <= y1:
        return None
    rx1, ry1 = round_half_away(x1), round_half_away(y1)
    rx2, ry2 = round_half_away(x2), round_half_away(y2)
    if rx2 - rx1 < 1 or ry2 - ry1 < 1:
        return None
    return rx1, ry1, rx2 - rx1, ry2 - ry1


def element_boxes(layout: LayoutTree, doc: AnnotatedDocument,
                  viewport: Viewport) -> list[LabeledBox]:
    """One labeled box per element label, clipped to the viewport.

    Labels whose nodes have no box (display:none subtrees) or whose clipped
    area is under 1 px² are dropped and logged.
    """
    out: list[LabeledBox] = []
    for path, cls in doc.element_labels:
        box = layout.boxes.get(path)
        if box is None:
            log.info("dropping label %s at %s: no box (hidden subtree)",
                     cls.name, path)
            continue
        clipped = clip_box(box, viewport)
        if clipped is None:
            log.info("dropping label %s at %s: sub-pixel area after clipping",
                     cls.name, path)
            continue
        x, y, w, h = clipped
        out.append(LabeledBox(cls, x, y, w, h, path))
    return out

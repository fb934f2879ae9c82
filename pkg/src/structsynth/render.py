"""Rasterization of a laid-out document into an RGBA image.

Paint order is tree order (parents before children). Backgrounds fill the
border box, a background color on <body> propagates to the whole canvas,
image assets are blitted with nearest-neighbor scaling, and text is
greeked: one filled bar per line, 0.55x the line height, in the computed
text color. Output is byte-deterministic for a given (document, assets,
seed) triple.
"""

from __future__ import annotations

from .assets import NodePath, PlaceholderSpec, ResolvedAsset, synth_fallback
from .errors import MissingAsset
from .layout import Box, LayoutTree, round_half_away
from .markup import TEXT_TAG, AnnotatedDocument, Node, is_placeholder_src
from .raster import WHITE, RasterImage

GREEK_BAR_FRACTION = 0.55


def _int_rect(x: float, y: float, w: float, h: float) -> tuple[int, int, int, int]:
    x1, y1 = round_half_away(x), round_half_away(y)
    x2, y2 = round_half_away(x + w), round_half_away(y + h)
    return x1, y1, x2 - x1, y2 - y1


def _source_asset(url: str, box: Box, seed: int) -> RasterImage:
    """Deterministic stand-in raster for a URL the offline renderer cannot
    fetch (non-placeholder img sources and div background images)."""
    w = max(1, round_half_away(box.w))
    h = max(1, round_half_away(box.h))
    spec = PlaceholderSpec(path=(), alt=url, declared_w=w, declared_h=h,
                           kind="background")
    return synth_fallback(spec, seed)


def rasterize(layout: LayoutTree, doc: AnnotatedDocument,
              assets: dict[NodePath, ResolvedAsset], seed: int) -> RasterImage:
    """Render the layout to an RGBA raster at the viewport size.

    Raises MissingAsset when any placeholder lacks a resolved asset.
    """
    for spec in doc.placeholders:
        if spec.path not in assets:
            raise MissingAsset(spec.id)

    vp = layout.viewport
    canvas = RasterImage.filled(vp.width, vp.height, WHITE)

    def paint(node: Node, path: NodePath) -> None:
        if node.tag == TEXT_TAG:
            _paint_text(canvas, layout, path)
            return
        box = layout.boxes.get(path)
        info = layout.paints.get(path)
        if box is not None and info is not None:
            x, y, w, h = _int_rect(box.x, box.y, box.w, box.h)
            if info.background_color is not None:
                if node.tag == "body":
                    canvas.fill_rect(0, 0, vp.width, vp.height,
                                     info.background_color)
                else:
                    canvas.fill_rect(x, y, w, h, info.background_color)
            if info.background_image is not None:
                tile = _source_asset(info.background_image, box, seed)
                canvas.blit_nearest(tile, x, y, w, h)
            if node.tag == "img":
                asset = assets.get(path)
                if asset is not None:
                    canvas.blit_nearest(asset.image, x, y, w, h)
                elif not is_placeholder_src(node.attrs.get("src")):
                    tile = _source_asset(node.attrs.get("src", ""), box, seed)
                    canvas.blit_nearest(tile, x, y, w, h)
        for i, child in enumerate(node.children):
            paint(child, path + (i,))

    paint(doc.body, (1,))
    return canvas


def _paint_text(canvas: RasterImage, layout: LayoutTree, path: NodePath) -> None:
    tb = layout.text_blocks.get(path)
    if tb is None:
        return
    bar_h = GREEK_BAR_FRACTION * tb.line_height
    inset = (tb.line_height - bar_h) / 2.0
    for line in tb.lines:
        if line.width <= 0:
            continue
        x, y, w, h = _int_rect(line.x, line.y + inset, line.width, bar_h)
        canvas.fill_rect(x, y, w, h, tb.color)

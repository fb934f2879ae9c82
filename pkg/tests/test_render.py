import numpy as np
import pytest

from structsynth.assets import AssetResolver, PlaceholderSpec
from structsynth.errors import MissingAsset
from structsynth.layout import Viewport, compute_layout
from structsynth.markup import parse_document
from structsynth.raster import RasterImage
from structsynth.render import rasterize
from structsynth.schema import Domain

VP = Viewport(64, 48)


def render(source, viewport=VP, seed=7):
    doc, _ = parse_document(source, Domain.UI)
    tree = compute_layout(doc, viewport)
    assets = AssetResolver(seed=seed).resolve_all(doc.placeholders)
    return rasterize(tree, doc, assets, seed)


def test_two_runs_byte_identical():
    a = render('<div style="background-color:#336699;width:20px;height:10px">x</div>')
    b = render('<div style="background-color:#336699;width:20px;height:10px">x</div>')
    assert a.digest() == b.digest()
    assert a.to_png_bytes() == b.to_png_bytes()


def test_body_background_fills_every_pixel():
    img = render('<body style="background-color:#112233"></body>')
    assert (img.pixels[..., 0] == 0x11).all()
    assert (img.pixels[..., 1] == 0x22).all()
    assert (img.pixels[..., 2] == 0x33).all()
    assert (img.pixels[..., 3] == 255).all()


def test_nearest_neighbor_corners_from_2x2():
    src = RasterImage.filled(2, 2, (0, 0, 0))
    src.pixels[0, 0, :3] = (255, 0, 0)
    src.pixels[0, 1, :3] = (0, 255, 0)
    src.pixels[1, 0, :3] = (0, 0, 255)
    src.pixels[1, 1, :3] = (255, 255, 0)
    dst = RasterImage.filled(300, 200, (9, 9, 9))
    dst.blit_nearest(src, 0, 0, 200, 150)
    assert tuple(dst.pixels[0, 0, :3]) == (255, 0, 0)
    assert tuple(dst.pixels[0, 199, :3]) == (0, 255, 0)
    assert tuple(dst.pixels[149, 0, :3]) == (0, 0, 255)
    assert tuple(dst.pixels[149, 199, :3]) == (255, 255, 0)
    # outside the blit box untouched
    assert tuple(dst.pixels[150, 0, :3]) == (9, 9, 9)


def test_img_asset_blitted_into_box():
    doc, _ = parse_document(
        '<img src="placeholder" alt="photo of a cat" width="20" height="10">',
        Domain.UI)
    tree = compute_layout(doc, VP)
    flat = RasterImage.filled(2, 2, (10, 200, 30))
    assets = AssetResolver(seed=1).resolve_all(doc.placeholders)
    assets[doc.placeholders[0].path].image = flat
    img = rasterize(tree, doc, assets, 1)
    assert tuple(img.pixels[0, 0, :3]) == (10, 200, 30)
    assert tuple(img.pixels[9, 19, :3]) == (10, 200, 30)
    assert tuple(img.pixels[10, 0, :3]) == (255, 255, 255)


def test_missing_asset_raises():
    doc, _ = parse_document('<img src="placeholder" alt="x">', Domain.UI)
    tree = compute_layout(doc, VP)
    with pytest.raises(MissingAsset):
        rasterize(tree, doc, {}, 0)


def test_greeking_bar_geometry():
    # one line of 16px text: line height 19.2, bar 10.56 high, inset 4.32
    img = render('<div style="color:#000000">hello</div>',
                 viewport=Viewport(100, 40))
    col = img.pixels[:, 2, :3]  # x=2 is inside the 48px-wide bar
    dark_rows = np.nonzero((col == 0).all(axis=1))[0]
    assert dark_rows.min() == 4   # round(4.32)
    assert dark_rows.max() == 14  # round(14.88) - 1
    # bar width: 5 chars * 9.6 = 48px
    row = img.pixels[8, :, :3]
    dark_cols = np.nonzero((row == 0).all(axis=1))[0]
    assert dark_cols.min() == 0
    assert dark_cols.max() == 47


def test_background_image_paints_over_box():
    img = render(
        '<div style="background-image:url(bg.png);width:30px;height:20px"></div>')
    white = np.array([255, 255, 255])
    assert not (img.pixels[5, 5, :3] == white).all()
    assert (img.pixels[30, 40, :3] == white).all()


def test_children_paint_over_parents():
    img = render(
        '<div style="background-color:#ff0000;width:40px;height:30px">'
        '<div style="background-color:#00ff00;width:10px;height:10px"></div></div>')
    assert tuple(img.pixels[5, 5, :3]) == (0, 255, 0)
    assert tuple(img.pixels[5, 20, :3]) == (255, 0, 0)

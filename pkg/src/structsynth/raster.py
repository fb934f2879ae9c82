"""Raster image buffer and the deterministic 2D paint primitives.

Pixels are an RGBA uint8 array with a top-left origin. Every operation is
integer/float-deterministic so repeated runs produce byte-identical
images; PNG encode/decode goes through Pillow.
"""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass

import numpy as np
from PIL import Image

Color = tuple[int, int, int]

WHITE: Color = (255, 255, 255)
BLACK: Color = (0, 0, 0)


@dataclass
class RasterImage:
    width: int
    height: int
    pixels: np.ndarray  # shape (height, width, 4), dtype uint8

    @classmethod
    def filled(cls, width: int, height: int, color: Color = WHITE) -> "RasterImage":
        if width <= 0 or height <= 0:
            raise ValueError(f"raster dims must be positive, got {width}x{height}")
        px = np.empty((height, width, 4), dtype=np.uint8)
        px[..., 0] = color[0]
        px[..., 1] = color[1]
        px[..., 2] = color[2]
        px[..., 3] = 255
        return cls(width, height, px)

    @classmethod
    def from_array(cls, pixels: np.ndarray) -> "RasterImage":
        if pixels.ndim != 3 or pixels.shape[2] != 4 or pixels.dtype != np.uint8:
            raise ValueError("expected (h, w, 4) uint8 array")
        h, w = pixels.shape[:2]
        return cls(w, h, pixels)

    @classmethod
    def from_png_bytes(cls, data: bytes) -> "RasterImage":
        with Image.open(io.BytesIO(data)) as im:
            rgba = im.convert("RGBA")
            return cls.from_array(np.asarray(rgba, dtype=np.uint8).copy())

    def to_png_bytes(self) -> bytes:
        buf = io.BytesIO()
        Image.fromarray(self.pixels, mode="RGBA").save(buf, format="PNG")
        return buf.getvalue()

    def save_png(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_png_bytes())

    def digest(self) -> str:
        """sha256 over the raw pixel buffer (independent of PNG encoder)."""
        return hashlib.sha256(self.pixels.tobytes()).hexdigest()

    def clone(self) -> "RasterImage":
        return RasterImage(self.width, self.height, self.pixels.copy())

    # -- paint primitives -------------------------------------------------

    def fill_rect(self, x: int, y: int, w: int, h: int, color: Color) -> None:
        """Opaque fill of the rect clipped to the canvas."""
        x0, y0 = max(0, x), max(0, y)
        x1, y1 = min(self.width, x + w), min(self.height, y + h)
        if x1 <= x0 or y1 <= y0:
            return
        self.pixels[y0:y1, x0:x1, 0] = color[0]
        self.pixels[y0:y1, x0:x1, 1] = color[1]
        self.pixels[y0:y1, x0:x1, 2] = color[2]
        self.pixels[y0:y1, x0:x1, 3] = 255

    def blit_nearest(self, src: "RasterImage", x: int, y: int, w: int, h: int) -> None:
        """Blit src scaled to (w, h) at (x, y), nearest-neighbor, alpha-over.

        Destination pixel (i, j) samples source (floor(i*sw/w), floor(j*sh/h)),
        so corners map to corners. The result stays fully opaque.
        """
        if w <= 0 or h <= 0:
            return
        # Sample index grids for the full destination rect.
        cols = (np.arange(w, dtype=np.int64) * src.width) // w
        rows = (np.arange(h, dtype=np.int64) * src.height) // h
        x0, y0 = max(0, x), max(0, y)
        x1, y1 = min(self.width, x + w), min(self.height, y + h)
        if x1 <= x0 or y1 <= y0:
            return
        sub_cols = cols[x0 - x : x1 - x]
        sub_rows = rows[y0 - y : y1 - y]
        sample = src.pixels[np.ix_(sub_rows, sub_cols)]
        alpha = sample[..., 3:4].astype(np.uint16)
        dest = self.pixels[y0:y1, x0:x1, :3].astype(np.uint16)
        srgb = sample[..., :3].astype(np.uint16)
        blended = (srgb * alpha + dest * (255 - alpha) + 127) // 255
        self.pixels[y0:y1, x0:x1, :3] = blended.astype(np.uint8)
        self.pixels[y0:y1, x0:x1, 3] = 255


def parse_hex_color(text: str) -> Color | None:
    """#rgb or #rrggbb to an RGB tuple, or None when malformed."""
    t = text.strip().lstrip("#")
    if len(t) == 3 and all(c in "0123456789abcdefABCDEF" for c in t):
        return tuple(int(c * 2, 16) for c in t)  # type: ignore[return-value]
    if len(t) == 6 and all(c in "0123456789abcdefABCDEF" for c in t):
        return (int(t[0:2], 16), int(t[2:4], 16), int(t[4:6], 16))
    return None

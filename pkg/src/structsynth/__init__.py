"""structsynth: synthesize labeled structured visuals (slides, mobile UIs).

The pipeline generates annotated markup through a pluggable text-generation
client, repairs and lints it against design rules, resolves graphical
placeholders, computes labeled bounding boxes with a deterministic layout
engine, renders rasters, filters by image-text alignment, and exports
detection/captioning/classification datasets.
"""

__version__ = "0.1.0"

from .schema import Domain  # noqa: F401

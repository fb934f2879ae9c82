"""Domains, label taxonomies, and the annotation vocabulary.

Everything downstream validates against this module: element classes
(with stable contiguous ids), screen classes, the attribute names used to
embed labels in markup, and the alias tables that fold noisy generated
labels onto their canonical classes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .errors import UnknownLabel, UnknownScreenClass

# Attribute vocabulary embedded in generated markup.
ELEMENT_ATTR = "data-type"
SCREEN_META = "screentype"


class Domain(Enum):
    SLIDE = "slide"
    UI = "ui"

    @classmethod
    def parse(cls, raw: str) -> "Domain":
        key = raw.strip().lower()
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown domain {raw!r} (expected 'slide' or 'ui')")


@dataclass(frozen=True, slots=True)
class ElementClass:
    domain: Domain
    name: str
    id: int


@dataclass(frozen=True, slots=True)
class ScreenClass:
    domain: Domain
    name: str


_SLIDE_ELEMENT_NAMES = (
    "title",
    "text box",
    "image",
    "chart",
    "diagram",
    "table",
    "schematic diagram",
    "header",
    "footer",
    "instructor",
)

_UI_ELEMENT_NAMES = (
    "text",
    "image",
    "text button",
    "icon",
    "input field",
    "switch",
    "checked view",
    "background image",
    "sliding menu",
    "upper taskbar",
    "page indicator",
    "popup window",
)

_SLIDE_SCREEN_NAMES = (
    "psychology",
    "communication",
    "law",
    "public health",
    "computer science",
    "language learning",
)

_UI_SCREEN_NAMES = (
    "list",
    "login",
    "settings",
    "menu",
    "media player",
    "form",
    "profile",
    "tutorial",
    "gallery",
)

_ELEMENTS: dict[Domain, tuple[ElementClass, ...]] = {
    Domain.SLIDE: tuple(
        ElementClass(Domain.SLIDE, name, i + 1)
        for i, name in enumerate(_SLIDE_ELEMENT_NAMES)
    ),
    Domain.UI: tuple(
        ElementClass(Domain.UI, name, i + 1)
        for i, name in enumerate(_UI_ELEMENT_NAMES)
    ),
}

_SCREENS: dict[Domain, tuple[ScreenClass, ...]] = {
    Domain.SLIDE: tuple(ScreenClass(Domain.SLIDE, n) for n in _SLIDE_SCREEN_NAMES),
    Domain.UI: tuple(ScreenClass(Domain.UI, n) for n in _UI_SCREEN_NAMES),
}

# Extra aliases beyond mechanical variants. Values are canonical names.
_EXTRA_ALIASES: dict[Domain, dict[str, str]] = {
    Domain.SLIDE: {
        "figure": "image",
        "figures": "image",
        "picture": "image",
        "pictures": "image",
        "handwritten": "text box",
        "img": "image",
        "heading": "title",
        "textblock": "text box",
        "paragraph": "text box",
    },
    Domain.UI: {
        "button": "text button",
        "buttons": "text button",
        "textfield": "input field",
        "input": "input field",
        "inputs": "input field",
        "toggle": "switch",
        "toggles": "switch",
        "checkbox": "checked view",
        "checkboxes": "checked view",
        "taskbar": "upper taskbar",
        "statusbar": "upper taskbar",
        "img": "image",
        "popup": "popup window",
        "modal": "popup window",
        "drawer": "sliding menu",
        "label": "text",
    },
}

_SCREEN_ALIASES: dict[Domain, dict[str, str]] = {
    Domain.SLIDE: {},
    Domain.UI: {"news": "gallery"},
}


def _compact(raw: str) -> str:
    """Fold case, whitespace, hyphens, and underscores into a lookup key."""
    folded = " ".join(raw.lower().split())
    return folded.replace(" ", "").replace("-", "").replace("_", "")


def _plural(compact_name: str) -> str:
    if compact_name.endswith(("s", "x", "ch", "sh")):
        return compact_name + "es"
    return compact_name + "s"


def _build_element_index(domain: Domain) -> dict[str, ElementClass]:
    index: dict[str, ElementClass] = {}
    by_name = {c.name: c for c in _ELEMENTS[domain]}
    for cls in _ELEMENTS[domain]:
        key = _compact(cls.name)
        index[key] = cls
        index[_plural(key)] = cls
    for raw, canonical in _EXTRA_ALIASES[domain].items():
        index[_compact(raw)] = by_name[canonical]
    return index


def _build_screen_index(domain: Domain) -> dict[str, ScreenClass]:
    index = {" ".join(c.name.split()): c for c in _SCREENS[domain]}
    by_name = {c.name: c for c in _SCREENS[domain]}
    for raw, canonical in _SCREEN_ALIASES[domain].items():
        index[raw] = by_name[canonical]
    return index


_ELEMENT_INDEX = {d: _build_element_index(d) for d in Domain}
_SCREEN_INDEX = {d: _build_screen_index(d) for d in Domain}


def element_taxonomy(domain: Domain) -> tuple[ElementClass, ...]:
    """The fixed, ordered element classes of a domain (ids 1..N)."""
    return _ELEMENTS[domain]


def screen_taxonomy(domain: Domain) -> tuple[ScreenClass, ...]:
    """The fixed screen/topic classes of a domain."""
    return _SCREENS[domain]


def element_by_id(domain: Domain, class_id: int) -> ElementClass:
    classes = _ELEMENTS[domain]
    if not 1 <= class_id <= len(classes):
        raise KeyError(class_id)
    return classes[class_id - 1]


def element_by_name(domain: Domain, name: str) -> ElementClass:
    for cls in _ELEMENTS[domain]:
        if cls.name == name:
            return cls
    raise KeyError(name)


def canonicalize_label(raw: str, domain: Domain) -> ElementClass:
    """Map a raw data-type value onto its canonical element class.

    Folds case, whitespace, hyphens, and underscores, then consults the
    per-domain alias table. Raises UnknownLabel when nothing matches;
    callers record that as a lint finding rather than dropping it.
    """
    if not raw or not raw.strip():
        raise UnknownLabel(raw, domain.value)
    cls = _ELEMENT_INDEX[domain].get(_compact(raw))
    if cls is None:
        raise UnknownLabel(raw, domain.value)
    return cls


def canonicalize_screen(raw: str, domain: Domain) -> ScreenClass:
    """Map a raw screentype value onto its canonical screen class."""
    if not raw or not raw.strip():
        raise UnknownScreenClass(raw, domain.value)
    key = " ".join(raw.lower().split())
    cls = _SCREEN_INDEX[domain].get(key)
    if cls is None:
        raise UnknownScreenClass(raw, domain.value)
    return cls


def describe() -> dict:
    """Machine-readable taxonomy descriptor for downstream validators."""
    out: dict = {
        "annotation": {"element_attr": ELEMENT_ATTR, "screen_meta": SCREEN_META},
        "domains": {},
    }
    for domain in Domain:
        out["domains"][domain.value] = {
            "elements": [{"id": c.id, "name": c.name} for c in _ELEMENTS[domain]],
            "screens": [c.name for c in _SCREENS[domain]],
            "element_aliases": dict(sorted(_EXTRA_ALIASES[domain].items())),
            "screen_aliases": dict(sorted(_SCREEN_ALIASES[domain].items())),
        }
    return out


def describe_json() -> str:
    return json.dumps(describe(), indent=2, sort_keys=True)

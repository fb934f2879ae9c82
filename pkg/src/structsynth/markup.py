"""Tolerant parser and canonical serializer for the annotated markup dialect.

The dialect is a constrained HTML/CSS subset: a fixed tag set, inline
styles only (``<style>`` blocks are retained verbatim but never applied),
``data-type`` attributes for element labels, and a ``screentype`` meta for
the screen-level label. Parsing is best effort: unclosed tags are closed
at the parent boundary, unknown tags degrade to ``div`` with a warning,
and unknown style properties are dropped with a warning. The parser never
raises on arbitrary input except for documents with no content at all.
"""

from __future__ import annotations

import hashlib
import html as _htmlmod
import re
from dataclasses import dataclass, field

from . import schema
from .assets import NodePath, PlaceholderSpec
from .errors import FatalParse, UnknownLabel, UnknownScreenClass
from .raster import Color, parse_hex_color
from .schema import Domain

KNOWN_TAGS = frozenset({
    "html", "head", "body", "meta", "style", "div", "span", "p",
    "h1", "h2", "h3", "ul", "li", "img", "button", "input",
})
VOID_TAGS = frozenset({"meta", "img", "input"})
HEAD_TAGS = frozenset({"meta", "style"})

PT_TO_PX = 4.0 / 3.0


# -- style values -------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Length:
    value: float
    unit: str  # "px" | "pt" | "%"

    def to_px(self, reference: float | None = None) -> float | None:
        """Resolve to pixels; percentages need a reference and give None without one."""
        if self.unit == "px":
            return self.value
        if self.unit == "pt":
            return self.value * PT_TO_PX
        if reference is None:
            return None
        return reference * self.value / 100.0

    def render(self) -> str:
        v = self.value
        text = str(int(v)) if float(v).is_integer() else repr(v)
        return f"{text}{self.unit}"


@dataclass(frozen=True, slots=True)
class Url:
    url: str

    def render(self) -> str:
        return f"url({self.url})"


@dataclass(frozen=True, slots=True)
class StyleDecl:
    prop: str
    value: Length | Url | Color | str | None  # None encodes 'transparent'/'none'


_NAMED_COLORS: dict[str, Color] = {
    "black": (0, 0, 0), "white": (255, 255, 255), "red": (255, 0, 0),
    "green": (0, 128, 0), "blue": (0, 0, 255), "yellow": (255, 255, 0),
    "orange": (255, 165, 0), "purple": (128, 0, 128), "gray": (128, 128, 128),
    "grey": (128, 128, 128), "silver": (192, 192, 192), "navy": (0, 0, 128),
    "teal": (0, 128, 128), "maroon": (128, 0, 0), "olive": (128, 128, 0),
    "lime": (0, 255, 0), "aqua": (0, 255, 255), "cyan": (0, 255, 255),
    "fuchsia": (255, 0, 255), "magenta": (255, 0, 255),
    "lightgray": (211, 211, 211), "lightgrey": (211, 211, 211),
    "darkgray": (169, 169, 169), "darkgrey": (169, 169, 169),
    "whitesmoke": (245, 245, 245), "gainsboro": (220, 220, 220),
}

_LENGTH_PROPS = frozenset({
    "left", "top", "right", "bottom", "width", "height",
    "margin-left", "margin-right", "margin-top", "margin-bottom",
    "padding-left", "padding-right", "padding-top", "padding-bottom",
    "font-size", "gap",
})
# Offsets may be negative; every other length must be >= 0.
_SIGNED_PROPS = frozenset({"left", "top", "right", "bottom"})

_KEYWORD_PROPS: dict[str, frozenset[str]] = {
    "display": frozenset({"block", "inline-block", "inline", "flex", "none"}),
    "flex-direction": frozenset({"row", "column"}),
    "position": frozenset({"static", "relative", "absolute"}),
    "justify-content": frozenset({
        "flex-start", "center", "flex-end", "space-between", "start", "end",
    }),
    "align-items": frozenset({"flex-start", "center", "flex-end", "stretch",
                              "start", "end"}),
}
_COLOR_PROPS = frozenset({"background-color", "color"})
_URL_PROPS = frozenset({"background-image"})
_SHORTHANDS = frozenset({"margin", "padding"})

SUPPORTED_PROPS = (_LENGTH_PROPS | _COLOR_PROPS | _URL_PROPS
                   | frozenset(_KEYWORD_PROPS))

_LENGTH_RE = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+))(px|pt|%)?$")
_URL_RE = re.compile(r"""^url\(\s*['"]?(.*?)['"]?\s*\)$""", re.IGNORECASE)
_RGB_RE = re.compile(r"^rgba?\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)", re.IGNORECASE)


def parse_length(text: str) -> Length | None:
    m = _LENGTH_RE.match(text.strip())
    if not m:
        return None
    value = float(m.group(1))
    unit = m.group(2) or "px"  # bare numbers are treated as px
    return Length(value, unit)


def parse_color(text: str) -> Color | None | str:
    """Returns an RGB tuple, None for 'transparent', or '' when malformed."""
    t = text.strip().lower()
    if t == "transparent":
        return None
    if t.startswith("#"):
        c = parse_hex_color(t)
        return c if c is not None else ""
    m = _RGB_RE.match(t)
    if m:
        r, g, b = (min(255, int(m.group(i))) for i in (1, 2, 3))
        return (r, g, b)
    if t in _NAMED_COLORS:
        return _NAMED_COLORS[t]
    return ""


def render_color(color: Color | None) -> str:
    if color is None:
        return "transparent"
    return "#{:02x}{:02x}{:02x}".format(*color)


def _split_declarations(style_text: str) -> list[tuple[str, str]]:
    out = []
    for chunk in style_text.split(";"):
        if ":" not in chunk:
            continue
        prop, _, value = chunk.partition(":")
        out.append((prop.strip().lower(), value.strip()))
    return out


def parse_inline_style(style_text: str) -> tuple[list[StyleDecl], list[str]]:
    """Parse a style attribute into typed declarations.

    Returns (declarations, problems); problems are human-readable notes for
    each dropped declaration (unknown property, bad value, bad sign).
    Duplicate properties keep the last occurrence, CSS-style.
    """
    decls: dict[str, StyleDecl] = {}
    problems: list[str] = []
    for prop, value in _split_declarations(style_text):
        if prop in _SHORTHANDS:
            sides = [parse_length(v) for v in value.split()]
            if not sides or any(s is None for s in sides):
                problems.append(f"bad {prop} shorthand {value!r}")
                continue
            top, right, bottom, left = _expand_sides(sides)  # type: ignore[arg-type]
            for side, length in (("top", top), ("right", right),
                                 ("bottom", bottom), ("left", left)):
                if length.value < 0:
                    problems.append(f"negative {prop}-{side} dropped")
                    continue
                decls[f"{prop}-{side}"] = StyleDecl(f"{prop}-{side}", length)
            continue
        if prop not in SUPPORTED_PROPS:
            problems.append(f"unsupported property {prop!r}")
            continue
        if prop in _LENGTH_PROPS:
            if value.lower() == "auto":
                decls.pop(prop, None)
                continue
            length = parse_length(value)
            if length is None:
                problems.append(f"bad length {value!r} for {prop}")
                continue
            if length.value < 0 and prop not in _SIGNED_PROPS:
                problems.append(f"negative length {value!r} for {prop} dropped")
                continue
            decls[prop] = StyleDecl(prop, length)
        elif prop in _KEYWORD_PROPS:
            kw = value.lower()
            if kw not in _KEYWORD_PROPS[prop]:
                problems.append(f"bad keyword {value!r} for {prop}")
                continue
            decls[prop] = StyleDecl(prop, kw)
        elif prop in _COLOR_PROPS:
            color = parse_color(value)
            if color == "":
                problems.append(f"bad color {value!r} for {prop}")
                continue
            decls[prop] = StyleDecl(prop, color)
        elif prop in _URL_PROPS:
            if value.lower() == "none":
                decls[prop] = StyleDecl(prop, None)
                continue
            m = _URL_RE.match(value)
            decls[prop] = StyleDecl(prop, Url(m.group(1) if m else value))
    return list(decls.values()), problems


def _expand_sides(sides: list[Length]) -> tuple[Length, Length, Length, Length]:
    if len(sides) == 1:
        return sides[0], sides[0], sides[0], sides[0]
    if len(sides) == 2:
        return sides[0], sides[1], sides[0], sides[1]
    if len(sides) == 3:
        return sides[0], sides[1], sides[2], sides[1]
    return sides[0], sides[1], sides[2], sides[3]


def render_style(decls: list[StyleDecl]) -> str:
    parts = []
    for d in decls:
        if isinstance(d.value, Length) or isinstance(d.value, Url):
            parts.append(f"{d.prop}:{d.value.render()}")
        elif d.prop in _COLOR_PROPS:
            parts.append(f"{d.prop}:{render_color(d.value)}")  # type: ignore[arg-type]
        elif d.value is None:
            parts.append(f"{d.prop}:none")
        else:
            parts.append(f"{d.prop}:{d.value}")
    return ";".join(parts)


# -- document tree -------------------------------------------------------------

TEXT_TAG = "#text"


@dataclass(eq=False, slots=True)
class Node:
    tag: str
    attrs: dict[str, str] = field(default_factory=dict)
    style: list[StyleDecl] = field(default_factory=list)
    children: list["Node"] = field(default_factory=list)
    text: str | None = None  # text runs and raw <style> payloads
    line: int = 0
    col: int = 0

    def find_style(self, prop: str) -> StyleDecl | None:
        for d in self.style:
            if d.prop == prop:
                return d
        return None

    def set_style(self, prop: str, value) -> None:
        for i, d in enumerate(self.style):
            if d.prop == prop:
                self.style[i] = StyleDecl(prop, value)
                return
        self.style.append(StyleDecl(prop, value))

    def drop_style(self, prop: str) -> None:
        self.style = [d for d in self.style if d.prop != prop]


@dataclass(frozen=True, slots=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    code: str
    message: str
    line: int = 0
    col: int = 0
    path: NodePath | None = None

    def to_json_dict(self) -> dict:
        return {
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
            "line": self.line,
            "col": self.col,
            "path": list(self.path) if self.path is not None else None,
        }


@dataclass(slots=True)
class AnnotatedDocument:
    root: Node
    domain: Domain
    element_labels: list[tuple[NodePath, schema.ElementClass]]
    screen_label: schema.ScreenClass | None
    placeholders: list[PlaceholderSpec]
    source_hash: str

    @property
    def head(self) -> Node:
        return self.root.children[0]

    @property
    def body(self) -> Node:
        return self.root.children[1]

    def node_at(self, path: NodePath) -> Node:
        node = self.root
        for idx in path:
            node = node.children[idx]
        return node


# -- tokenizer ------------------------------------------------------------------


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self, n: int) -> str:
        chunk = self.text[self.pos : self.pos + n]
        for ch in chunk:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return chunk

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def startswith(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def skip_until(self, marker: str) -> str:
        """Consume up to (and including) marker; returns text before it."""
        idx = self.text.find(marker, self.pos)
        if idx == -1:
            return self._advance(len(self.text) - self.pos)
        out = self._advance(idx - self.pos)
        self._advance(len(marker))
        return out

    def read_tag(self) -> str:
        """Consume '<...>' respecting quotes; returns inner text without <>."""
        i = self.pos + 1
        n = len(self.text)
        quote = None
        while i < n:
            ch = self.text[i]
            if quote:
                if ch == quote:
                    quote = None
            elif ch in "\"'":
                quote = ch
            elif ch == ">":
                break
            i += 1
        inner = self.text[self.pos + 1 : i]
        self._advance(min(i + 1, n) - self.pos)
        return inner

    def read_text(self) -> str:
        start = self.pos
        idx = self.text.find("<", self.pos)
        if idx == -1:
            idx = len(self.text)
        return self._advance(idx - start)


_ATTR_RE = re.compile(
    r"""([a-zA-Z_][-a-zA-Z0-9_:.]*)\s*(?:=\s*("[^"]*"|'[^']*'|[^\s>]+))?"""
)
_TAG_NAME_RE = re.compile(r"^\s*(/?)\s*([a-zA-Z][a-zA-Z0-9]*)")


def _parse_tag_inner(inner: str) -> tuple[bool, str, dict[str, str]] | None:
    m = _TAG_NAME_RE.match(inner)
    if not m:
        return None
    closing = m.group(1) == "/"
    name = m.group(2).lower()
    attrs: dict[str, str] = {}
    if not closing:
        rest = inner[m.end():]
        if rest.endswith("/"):
            rest = rest[:-1]
        for am in _ATTR_RE.finditer(rest):
            key = am.group(1).lower()
            raw = am.group(2)
            if raw is None:
                value = ""
            elif raw[:1] in "\"'":
                value = raw[1:-1]
            else:
                value = raw
            attrs[key] = _htmlmod.unescape(value)
    return closing, name, attrs


# -- tree construction ------------------------------------------------------


class _TreeBuilder:
    def __init__(self):
        self.head = Node("head")
        self.body = Node("body")
        self.root = Node("html", children=[self.head, self.body])
        self.stack: list[Node] = [self.root]
        self.body_started = False
        self.diagnostics: list[Diagnostic] = []

    def warn(self, code: str, message: str, line: int, col: int) -> None:
        self.diagnostics.append(Diagnostic("warning", code, message, line, col))

    def _flow_parent(self) -> Node:
        """Insertion point for body content; escapes html/head level."""
        top = self.stack[-1]
        if top is self.head:
            self.stack.pop()
            top = self.stack[-1]
        if top is self.root:
            self.body_started = True
            return self.body
        return top

    def add_text(self, text: str, line: int, col: int) -> None:
        collapsed = " ".join(_htmlmod.unescape(text).split())
        if not collapsed:
            return
        parent = self._flow_parent()
        self.body_started = True
        if parent.children and parent.children[-1].tag == TEXT_TAG:
            last = parent.children[-1]
            last.text = (last.text or "") + " " + collapsed
            return
        parent.children.append(Node(TEXT_TAG, text=collapsed, line=line, col=col))

    def add_node(self, name: str, attrs: dict[str, str], line: int, col: int) -> Node:
        if name not in KNOWN_TAGS:
            self.warn("unknown-tag", f"unknown tag <{name}> treated as div", line, col)
            name = "div"
        if name == "html":
            self.root.attrs.update(attrs)
            return self.root
        if name == "head":
            if not self.body_started and self.stack[-1] is self.root:
                self.stack.append(self.head)
            return self.head
        if name == "body":
            self.body.attrs.update(attrs)
            self.body_started = True
            # pop anything hanging below html (e.g. an unclosed head)
            del self.stack[1:]
            return self.body
        node = Node(name, attrs=attrs, line=line, col=col)
        if name in HEAD_TAGS and not self.body_started and self.stack[-1] in (
            self.root, self.head,
        ):
            self.head.children.append(node)
        else:
            parent = self._flow_parent()
            self.body_started = True
            parent.children.append(node)
        if name not in VOID_TAGS and name != "style":
            self.stack.append(node)
        return node

    def close(self, name: str, line: int, col: int) -> None:
        if name not in KNOWN_TAGS:
            name = "div"  # unknown opens degraded to div; close symmetrically
        if name in VOID_TAGS:
            return
        if name in ("html", "body"):
            del self.stack[1:]
            return
        if name == "head":
            if self.stack[-1] is self.head:
                self.stack.pop()
            return
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == name:
                if i != len(self.stack) - 1:
                    self.warn("auto-close",
                              f"</{name}> auto-closed {len(self.stack) - 1 - i} open tag(s)",
                              line, col)
                del self.stack[i:]
                return
        self.warn("stray-close", f"ignoring </{name}> with no open tag", line, col)


def _build_tree(text: str) -> tuple[Node, list[Diagnostic]]:
    scanner = _Scanner(text)
    builder = _TreeBuilder()
    while not scanner.eof():
        line, col = scanner.line, scanner.col
        if scanner.startswith("<!--"):
            scanner.skip_until("-->")
            continue
        if scanner.startswith("<!") or scanner.startswith("<?"):
            scanner.read_tag()
            continue
        if scanner.startswith("<"):
            nxt = scanner.text[scanner.pos + 1 : scanner.pos + 2]
            if not (nxt.isalpha() or nxt == "/"):
                # stray '<' is content, not a tag
                scanner._advance(1)
                builder.add_text("<", line, col)
                continue
            inner = scanner.read_tag()
            parsed = _parse_tag_inner(inner)
            if parsed is None:
                builder.warn("bad-tag", f"unparseable tag <{inner[:40]}>", line, col)
                continue
            closing, name, attrs = parsed
            if closing:
                builder.close(name, line, col)
                continue
            lowered = name.lower()
            if lowered == "script":
                scanner.skip_until("</script")
                scanner.skip_until(">")
                builder.warn("script-dropped", "script element dropped", line, col)
                continue
            node = builder.add_node(lowered, attrs, line, col)
            if node.tag == "style":
                raw = scanner.skip_until("</style")
                scanner.skip_until(">")
                node.text = raw.strip()
        else:
            builder.add_text(scanner.read_text(), line, col)
    return builder.root, builder.diagnostics


# -- annotation extraction -----------------------------------------------------

_PLACEHOLDER_NAME_RE = re.compile(r"^placeholder(\.[a-z0-9]+)?$", re.IGNORECASE)
_SCHEME_RE = re.compile(r"^[a-zA-Z][a-zA-Z0-9+.-]*:")


def is_placeholder_src(src: str | None) -> bool:
    """Placeholder pattern: a literal ``placeholder[.ext]`` name, a missing
    or empty src, or any path without a URL scheme (unresolvable here)."""
    if src is None or not src.strip():
        return True
    s = src.strip()
    if _PLACEHOLDER_NAME_RE.match(s.rsplit("/", 1)[-1]):
        return True
    return not _SCHEME_RE.match(s)


_KIND_BY_CLASS = {
    "icon": "icon",
    "chart": "chart",
    "diagram": "diagram",
    "schematic diagram": "diagram",
    "background image": "background",
}


def _parse_dim(node: Node, attr: str) -> int | None:
    raw = node.attrs.get(attr)
    if raw is not None and raw != "auto-fit":
        try:
            v = int(float(raw))
            if v > 0:
                return v
        except ValueError:
            pass
    decl = node.find_style(attr)
    if decl is not None and isinstance(decl.value, Length) and decl.value.unit != "%":
        px = decl.value.to_px()
        if px and px > 0:
            return int(px)
    return None


def _walk(node: Node, path: NodePath = ()):
    yield path, node
    for i, child in enumerate(node.children):
        yield from _walk(child, path + (i,))


def parse_document(text: str | bytes, domain: Domain) -> tuple[AnnotatedDocument, list[Diagnostic]]:
    """Parse markup into an annotated document plus diagnostics.

    Raises FatalParse only when the input has no content at all; every
    other defect degrades to a warning diagnostic.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    if not text or not text.strip():
        raise FatalParse("empty input")
    source_hash = hashlib.sha256(text.encode("utf-8", errors="replace")).hexdigest()
    root, diagnostics = _build_tree(text)

    labels: list[tuple[NodePath, schema.ElementClass]] = []
    label_by_path: dict[NodePath, schema.ElementClass] = {}
    screen_label: schema.ScreenClass | None = None

    for path, node in _walk(root):
        style_text = node.attrs.pop("style", None)
        if style_text is not None:
            node.style, problems = parse_inline_style(style_text)
            for problem in problems:
                diagnostics.append(Diagnostic(
                    "warning", "style-dropped", problem, node.line, node.col, path))
        raw_label = node.attrs.get(schema.ELEMENT_ATTR)
        if raw_label is not None and node.tag != TEXT_TAG:
            try:
                cls = schema.canonicalize_label(raw_label, domain)
                node.attrs[schema.ELEMENT_ATTR] = cls.name
                labels.append((path, cls))
                label_by_path[path] = cls
            except UnknownLabel:
                diagnostics.append(Diagnostic(
                    "warning", "unknown-label",
                    f"data-type {raw_label!r} has no canonical class",
                    node.line, node.col, path))
        if node.tag == "meta" and node.attrs.get("name", "").lower() == schema.SCREEN_META:
            raw_screen = node.attrs.get("content", "")
            try:
                cls = schema.canonicalize_screen(raw_screen, domain)
                if screen_label is None:
                    screen_label = cls
                    node.attrs["content"] = cls.name
                else:
                    diagnostics.append(Diagnostic(
                        "warning", "duplicate-screen-label",
                        f"extra screentype {raw_screen!r} ignored",
                        node.line, node.col, path))
            except UnknownScreenClass:
                diagnostics.append(Diagnostic(
                    "warning", "unknown-screen-label",
                    f"screentype {raw_screen!r} has no canonical class",
                    node.line, node.col, path))

    placeholders: list[PlaceholderSpec] = []
    for path, node in _walk(root):
        if node.tag != "img" or not is_placeholder_src(node.attrs.get("src")):
            continue
        kind = "image"
        for depth in range(len(path), -1, -1):
            cls = label_by_path.get(path[:depth])
            if cls is not None:
                kind = _KIND_BY_CLASS.get(cls.name, "image")
                break
        placeholders.append(PlaceholderSpec(
            path=path,
            alt=" ".join(node.attrs.get("alt", "").split()),
            declared_w=_parse_dim(node, "width"),
            declared_h=_parse_dim(node, "height"),
            kind=kind,
        ))

    doc = AnnotatedDocument(
        root=root,
        domain=domain,
        element_labels=labels,
        screen_label=screen_label,
        placeholders=placeholders,
        source_hash=source_hash,
    )
    return doc, diagnostics


def refresh_annotations(doc: AnnotatedDocument) -> AnnotatedDocument:
    """Re-derive labels/placeholders after a tree mutation (used by repair).

    Keeps the original source hash so provenance still names the pre-repair
    input.
    """
    new_doc, _ = parse_document(serialize_document(doc), doc.domain)
    new_doc.source_hash = doc.source_hash
    return new_doc


# -- serialization -----------------------------------------------------------


def _escape_text(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(text: str) -> str:
    return (text.replace("&", "&amp;").replace('"', "&quot;")
            .replace("<", "&lt;").replace(">", "&gt;").replace("\n", "&#10;"))


def _serialize_node(node: Node, out: list[str], indent: int) -> None:
    pad = "  " * indent
    if node.tag == TEXT_TAG:
        out.append(pad + _escape_text(node.text or ""))
        return
    attrs = dict(node.attrs)
    if node.style:
        attrs["style"] = render_style(node.style)
    attr_text = "".join(
        f' {k}="{_escape_attr(v)}"' for k, v in sorted(attrs.items())
    )
    if node.tag in VOID_TAGS:
        out.append(f"{pad}<{node.tag}{attr_text}>")
        return
    if node.tag == "style":
        out.append(f"{pad}<{node.tag}{attr_text}>")
        if node.text:
            out.append(node.text.strip("\n"))
        out.append(f"{pad}</{node.tag}>")
        return
    out.append(f"{pad}<{node.tag}{attr_text}>")
    for child in node.children:
        _serialize_node(child, out, indent + 1)
    out.append(f"{pad}</{node.tag}>")


def serialize_document(doc: AnnotatedDocument) -> str:
    """Canonical serialization: sorted attributes, normalized styles,
    two-space indentation. Re-parsing yields a structurally equal document."""
    out: list[str] = []
    _serialize_node(doc.root, out, 0)
    return "\n".join(out) + "\n"


def structurally_equal(a: Node, b: Node) -> bool:
    if a.tag != b.tag or a.attrs != b.attrs or a.text != b.text:
        return False
    if a.style != b.style:
        return False
    if len(a.children) != len(b.children):
        return False
    return all(structurally_equal(x, y) for x, y in zip(a.children, b.children))


def documents_equal(a: AnnotatedDocument, b: AnnotatedDocument) -> bool:
    return (
        structurally_equal(a.root, b.root)
        and a.element_labels == b.element_labels
        and a.screen_label == b.screen_label
        and a.placeholders == b.placeholders
    )


# -- text extraction ----------------------------------------------------------


def extract_text(doc: AnnotatedDocument) -> str:
    """All text runs and alt texts in document order, then the screen label,
    single-space separated. Feeds the lexical alignment scorer."""
    parts: list[str] = []

    def visit(node: Node) -> None:
        if node.tag == TEXT_TAG and node.text:
            parts.append(node.text)
        if node.tag == "img":
            alt = " ".join(node.attrs.get("alt", "").split())
            if alt:
                parts.append(alt)
        for child in node.children:
            visit(child)

    visit(doc.body)
    if doc.screen_label is not None:
        parts.append(doc.screen_label.name)
    return " ".join(parts)

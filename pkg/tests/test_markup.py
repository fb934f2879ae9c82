import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from structsynth import markup
from structsynth.errors import FatalParse
from structsynth.markup import (
    Length,
    Url,
    extract_text,
    parse_document,
    parse_inline_style,
    serialize_document,
    structurally_equal,
)
from structsynth.schema import Domain

LOGIN_DOC = """
<html>
<head>
  <meta content="login" name="screentype">
  <style>.menu { color: red; }</style>
</head>
<body>
  <h1 data-type="text">Sign In</h1>
  <img src="placeholder.jpg" alt="Fresh salad bowl" width="200" height="150" data-type="image">
  <button data-type="text button" style="width:120px;height:48px">Log in</button>
</body>
</html>
"""


def test_screentype_meta_extracted():
    doc, diags = parse_document(LOGIN_DOC, Domain.UI)
    assert doc.screen_label is not None
    assert doc.screen_label.name == "login"
    assert not [d for d in diags if d.severity == "error"]


def test_placeholder_spec_from_img():
    doc, _ = parse_document(LOGIN_DOC, Domain.UI)
    assert len(doc.placeholders) == 1
    spec = doc.placeholders[0]
    assert spec.alt == "Fresh salad bowl"
    assert (spec.declared_w, spec.declared_h) == (200, 150)
    assert spec.kind == "image"


def test_empty_input_is_fatal():
    with pytest.raises(FatalParse):
        parse_document("", Domain.UI)
    with pytest.raises(FatalParse):
        parse_document("   \n\t ", Domain.UI)


def test_alias_label_canonicalized_without_diagnostic():
    doc, diags = parse_document('<div data-type="figures">x</div>', Domain.SLIDE)
    assert [cls.name for _, cls in doc.element_labels] == ["image"]
    assert not [d for d in diags if d.code == "unknown-label"]
    # attribute rewritten to the canonical name
    path = doc.element_labels[0][0]
    assert doc.node_at(path).attrs["data-type"] == "image"


def test_unknown_label_is_diagnosed_not_dropped():
    doc, diags = parse_document('<div data-type="blob">x</div>', Domain.UI)
    assert doc.element_labels == []
    codes = [d.code for d in diags]
    assert "unknown-label" in codes
    # raw attribute survives so lint can re-detect it
    assert doc.body.children[0].attrs["data-type"] == "blob"


def test_unknown_tag_becomes_div_with_warning():
    doc, diags = parse_document("<section><p>hey</p></section>", Domain.UI)
    assert doc.body.children[0].tag == "div"
    assert any(d.code == "unknown-tag" for d in diags)


def test_unclosed_tags_autoclosed():
    doc, _ = parse_document("<div><p>one<p>two</div>after", Domain.UI)
    div = doc.body.children[0]
    assert div.tag == "div"
    # both paragraphs end up inside the div; trailing text lands in body
    tags = [c.tag for c in div.children]
    assert tags.count("p") >= 1
    assert doc.body.children[-1].tag == "#text"


def test_unknown_style_property_dropped_with_warning():
    doc, diags = parse_document(
        '<div style="width:100px;data-type:text;color:black">x</div>', Domain.UI)
    node = doc.body.children[0]
    assert node.find_style("width") == markup.StyleDecl("width", Length(100, "px"))
    assert node.find_style("color") is not None
    assert all(d.prop != "data-type" for d in node.style)
    assert any(d.code == "style-dropped" for d in diags)


def test_serialized_output_lacks_dropped_properties():
    doc, _ = parse_document('<div style="bogus-prop:3;width:50px">x</div>', Domain.UI)
    text = serialize_document(doc)
    assert "bogus-prop" not in text
    assert "width:50px" in text


def test_extract_text_document_order():
    doc, _ = parse_document(
        '<html><head><meta content="login" name="screentype"></head>'
        '<body><p>Sign In</p><img src="placeholder" alt="company logo"></body></html>',
        Domain.UI)
    assert extract_text(doc) == "Sign In company logo login"


def test_extract_text_empty_body():
    doc, _ = parse_document("<body></body>", Domain.UI)
    assert extract_text(doc) == ""


def test_roundtrip_fixture():
    doc, _ = parse_document(LOGIN_DOC, Domain.UI)
    text = serialize_document(doc)
    doc2, _ = parse_document(text, Domain.UI)
    assert markup.documents_equal(doc, doc2)
    assert serialize_document(doc2) == text


def test_attribute_order_normalized():
    doc, _ = parse_document('<img width="10" alt="a" src="placeholder" height="4">',
                            Domain.UI)
    line = [ln for ln in serialize_document(doc).splitlines() if "<img" in ln][0]
    assert line.index('alt="a"') < line.index('height="4"')
    assert line.index('height="4"') < line.index('src="placeholder"')
    assert line.index('src="placeholder"') < line.index('width="10"')


def test_placeholder_count_matches_pattern():
    doc, _ = parse_document(
        '<body>'
        '<img src="placeholder.png" alt="a">'
        '<img src="https://example.com/x.png" alt="b">'
        '<img src="images/photo.jpg" alt="c">'
        '<img alt="d">'
        '</body>', Domain.UI)
    # https URL is resolvable; the other three match the placeholder pattern
    assert len(doc.placeholders) == 3


def test_placeholder_kind_from_ancestor_label():
    doc, _ = parse_document(
        '<div data-type="chart"><img src="placeholder" alt="sales by month"></div>',
        Domain.SLIDE)
    assert doc.placeholders[0].kind == "chart"


def test_meta_in_body_still_sets_screen_label():
    doc, _ = parse_document(
        '<body><p>x</p><meta content="settings" name="screentype"></body>',
        Domain.UI)
    assert doc.screen_label is not None and doc.screen_label.name == "settings"


def test_style_block_retained_verbatim():
    doc, _ = parse_document(
        "<style>.a { color: red; data-type: text; }</style><p>x</p>", Domain.UI)
    style_nodes = [n for _, n in markup._walk(doc.root) if n.tag == "style"]
    assert len(style_nodes) == 1
    assert "data-type: text" in style_nodes[0].text


def test_margin_shorthand_expansion():
    decls, problems = parse_inline_style("margin: 4px 8px")
    assert not problems
    by_prop = {d.prop: d.value for d in decls}
    assert by_prop["margin-top"] == Length(4, "px")
    assert by_prop["margin-right"] == Length(8, "px")
    assert by_prop["margin-bottom"] == Length(4, "px")
    assert by_prop["margin-left"] == Length(8, "px")


def test_negative_length_rejected_except_offsets():
    decls, problems = parse_inline_style("width:-3px;left:-3px")
    by_prop = {d.prop: d.value for d in decls}
    assert "width" not in by_prop
    assert by_prop["left"] == Length(-3, "px")
    assert problems


def test_background_image_url_value():
    decls, _ = parse_inline_style('background-image:url("img/bg.png")')
    assert decls[0].value == Url("img/bg.png")


def test_pt_conversion():
    assert Length(24, "pt").to_px() == pytest.approx(32.0)
    assert Length(50, "%").to_px(200) == pytest.approx(100.0)
    assert Length(50, "%").to_px(None) is None


# -- fuzz / property tests ----------------------------------------------------


@given(st.binary(max_size=400))
@settings(max_examples=200, deadline=None)
def test_parse_total_over_random_bytes(data):
    try:
        doc, _ = parse_document(data, Domain.UI)
    except FatalParse:
        return
    assert doc.body is not None


_TAGS = ["div", "p", "span", "h1", "ul", "li", "button"]
_WORDS = ["alpha", "beta", "gamma", "delta", "Sign", "In", "menu"]


@st.composite
def _random_dialect_doc(draw, depth=0):
    pieces = []
    for _ in range(draw(st.integers(0, 3))):
        kind = draw(st.integers(0, 2 if depth < 2 else 1))
        if kind == 0:
            pieces.append(" ".join(draw(
                st.lists(st.sampled_from(_WORDS), min_size=1, max_size=4))))
        elif kind == 1:
            tag = draw(st.sampled_from(["img", "input"]))
            attrs = ' src="placeholder" alt="thing" width="20" height="10"' if tag == "img" else ""
            pieces.append(f"<{tag}{attrs}>")
        else:
            tag = draw(st.sampled_from(_TAGS))
            style = draw(st.sampled_from(
                ["", ' style="width:50%"', ' style="padding:4px"',
                 ' style="display:flex;gap:6px"', ' style="font-size:12pt"']))
            label = draw(st.sampled_from(["", ' data-type="text"', ' data-type="image"']))
            inner = draw(_random_dialect_doc(depth=depth + 1))
            pieces.append(f"<{tag}{style}{label}>{inner}</{tag}>")
    return "".join(pieces)


@given(_random_dialect_doc())
@settings(max_examples=120, deadline=None)
def test_roundtrip_property(body):
    source = f"<body>{body}</body>"
    try:
        doc, _ = parse_document(source, Domain.UI)
    except FatalParse:
        return
    text = serialize_document(doc)
    doc2, _ = parse_document(text, Domain.UI)
    assert markup.documents_equal(doc, doc2)
    assert serialize_document(doc2) == text


@given(_random_dialect_doc())
@settings(max_examples=60, deadline=None)
def test_labels_resolve_and_canonicalize(body):
    try:
        doc, _ = parse_document(f"<body>{body}</body>", Domain.UI)
    except FatalParse:
        return
    from structsynth.schema import canonicalize_label
    for path, cls in doc.element_labels:
        node = doc.node_at(path)
        assert canonicalize_label(node.attrs["data-type"], Domain.UI) == cls

import pytest
from hypothesis import given
from hypothesis import strategies as st

from structsynth import schema
from structsynth.errors import UnknownLabel, UnknownScreenClass
from structsynth.schema import Domain


def test_slide_taxonomy_exact():
    names = [c.name for c in schema.element_taxonomy(Domain.SLIDE)]
    assert names == [
        "title", "text box", "image", "chart", "diagram", "table",
        "schematic diagram", "header", "footer", "instructor",
    ]


def test_ui_taxonomy_exact():
    names = [c.name for c in schema.element_taxonomy(Domain.UI)]
    assert names == [
        "text", "image", "text button", "icon", "input field", "switch",
        "checked view", "background image", "sliding menu", "upper taskbar",
        "page indicator", "popup window",
    ]


@pytest.mark.parametrize("domain,count", [(Domain.SLIDE, 10), (Domain.UI, 12)])
def test_taxonomy_cardinality(domain, count):
    assert len(schema.element_taxonomy(domain)) == count


def test_ids_contiguous_and_roundtrip():
    for domain in Domain:
        classes = schema.element_taxonomy(domain)
        assert [c.id for c in classes] == list(range(1, len(classes) + 1))
        for c in classes:
            assert schema.element_by_id(domain, c.id) is c
            assert schema.element_by_name(domain, c.name) is c


def test_screen_taxonomies():
    slide = [c.name for c in schema.screen_taxonomy(Domain.SLIDE)]
    assert slide == ["psychology", "communication", "law", "public health",
                     "computer science", "language learning"]
    ui = [c.name for c in schema.screen_taxonomy(Domain.UI)]
    assert ui == ["list", "login", "settings", "menu", "media player",
                  "form", "profile", "tutorial", "gallery"]
    assert len(ui) == 9


@pytest.mark.parametrize("raw,domain,expected", [
    ("pageindicator", Domain.UI, "page indicator"),
    ("figures", Domain.SLIDE, "image"),
    ("pictures", Domain.SLIDE, "image"),
    ("handwritten", Domain.SLIDE, "text box"),
    ("Text  Box", Domain.SLIDE, "text box"),
    ("text-box", Domain.SLIDE, "text box"),
    ("text_button", Domain.UI, "text button"),
    ("images", Domain.UI, "image"),
    ("switches", Domain.UI, "switch"),
    ("TITLE", Domain.SLIDE, "title"),
])
def test_canonicalize_label(raw, domain, expected):
    assert schema.canonicalize_label(raw, domain).name == expected


def test_canonicalize_label_unknown():
    with pytest.raises(UnknownLabel):
        schema.canonicalize_label("blob", Domain.UI)
    with pytest.raises(UnknownLabel):
        schema.canonicalize_label("   ", Domain.UI)


@pytest.mark.parametrize("raw,domain,expected", [
    ("login", Domain.UI, "login"),
    ("News", Domain.UI, "gallery"),
    ("Media  Player", Domain.UI, "media player"),
    ("Public Health", Domain.SLIDE, "public health"),
])
def test_canonicalize_screen(raw, domain, expected):
    assert schema.canonicalize_screen(raw, domain).name == expected


def test_canonicalize_screen_unknown():
    with pytest.raises(UnknownScreenClass):
        schema.canonicalize_screen("astrology", Domain.SLIDE)


@given(st.sampled_from(sorted(schema._ELEMENT_INDEX[Domain.UI])))
def test_canonicalize_idempotent_ui(key):
    first = schema.canonicalize_label(key, Domain.UI)
    again = schema.canonicalize_label(first.name, Domain.UI)
    assert again == first


@given(st.sampled_from(sorted(schema._ELEMENT_INDEX[Domain.SLIDE])))
def test_canonicalize_idempotent_slide(key):
    first = schema.canonicalize_label(key, Domain.SLIDE)
    again = schema.canonicalize_label(first.name, Domain.SLIDE)
    assert again == first


@given(st.text(min_size=1, max_size=30))
def test_canonicalize_never_crosses_domains(raw):
    for domain in Domain:
        try:
            cls = schema.canonicalize_label(raw, domain)
        except UnknownLabel:
            continue
        assert cls.domain is domain
        assert cls in schema.element_taxonomy(domain)


def test_describe_shape():
    desc = schema.describe()
    assert desc["annotation"] == {"element_attr": "data-type",
                                  "screen_meta": "screentype"}
    assert len(desc["domains"]["slide"]["elements"]) == 10
    assert len(desc["domains"]["ui"]["elements"]) == 12
    assert desc["domains"]["ui"]["screen_aliases"] == {"news": "gallery"}


def test_domain_parse():
    assert Domain.parse("UI") is Domain.UI
    assert Domain.parse(" slide ") is Domain.SLIDE
    with pytest.raises(ValueError):
        Domain.parse("poster")

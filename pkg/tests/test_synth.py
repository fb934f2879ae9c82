import logging

import pytest

from structsynth.align import LexicalScorer
from structsynth.errors import ClientFailure, ConfigError
from structsynth.schema import Domain, screen_taxonomy
from structsynth.synth import (
    DescriptionRecord,
    GenerationConfig,
    PipelineConfig,
    StubTextGenClient,
    _schedule,
    generate_markup,
    ideate,
    ideation_prompt,
    markup_prompt,
    prompt_digest,
    run_pipeline,
    taxonomy_block,
)

UI = Domain.UI
SLIDE = Domain.SLIDE


def make_stub(domain, texts, markups=None, config=None):
    """Build a stub client for `texts` descriptions in schedule order."""
    config = config or GenerationConfig()
    schedule = _schedule(domain, len(texts), config.screen_weights)
    responses = {}
    for i, text in enumerate(texts):
        for attempt in range(config.retry_budget + 1):
            prompt = ideation_prompt(domain, schedule[i], i, attempt, config)
            responses.setdefault(prompt_digest(prompt), text)
        if markups:
            responses[prompt_digest(markup_prompt(text, domain, config))] = markups[i]
    return StubTextGenClient(responses), schedule


LOGIN_MARKUP = """<html><head><meta content="login" name="screentype"></head>
<body>
<h1 data-type="text">Sign In</h1>
<img src="placeholder" alt="shop logo" width="80" height="60" data-type="image">
<button data-type="text button" style="width:200px;height:48px">Sign In</button>
</body></html>"""


def test_schedule_uniform_covers_all_classes():
    classes = _schedule(UI, 9, None)
    assert [c.name for c in classes] == [c.name for c in screen_taxonomy(UI)]


def test_schedule_cycles_for_larger_counts():
    classes = _schedule(UI, 20, None)
    names = [c.name for c in classes]
    taxonomy = [c.name for c in screen_taxonomy(UI)]
    assert names[:18] == taxonomy * 2
    assert names[18:] == taxonomy[:2]


def test_schedule_respects_weights():
    weights = {c.name: 0.0 for c in screen_taxonomy(UI)}
    weights["login"] = 0.5
    weights["form"] = 0.5
    classes = _schedule(UI, 4, weights)
    assert sorted(c.name for c in classes) == ["form", "form", "login", "login"]


def test_ideate_stub_returns_fixture_descriptions():
    texts = ["a list of saved podcasts", "a login page with email entry",
             "a settings panel with toggles"]
    client, schedule = make_stub(UI, texts)
    records = ideate(UI, 3, GenerationConfig(), client)
    assert [r.text for r in records] == texts
    assert [r.target_screen_class for r in records] == schedule
    assert [r.id for r in records] == ["ui-0000", "ui-0001", "ui-0002"]


def test_ideate_duplicate_kept_with_warning(caplog):
    texts = ["identical words in this concept", "identical words in this concept"]
    client, _ = make_stub(UI, texts)
    with caplog.at_level(logging.WARNING):
        records = ideate(UI, 2, GenerationConfig(), client)
    assert len(records) == 2
    assert any("near-duplicate" in m for m in caplog.messages)


def test_ideate_distinct_texts_no_warning(caplog):
    texts = ["saved podcasts with episode art",
             "secure login with password reset link"]
    client, _ = make_stub(UI, texts)
    with caplog.at_level(logging.WARNING):
        records = ideate(UI, 2, GenerationConfig(), client)
    assert len(records) == 2
    assert not any("near-duplicate" in m for m in caplog.messages)


def test_ideate_partial_failures_logged_not_fatal(caplog):
    texts = ["first concept about a gallery of photos"]
    client, _ = make_stub(UI, texts)
    with caplog.at_level(logging.WARNING):
        records = ideate(UI, 3, GenerationConfig(), client)
    assert len(records) == 1


def test_ideate_total_failure_raises():
    with pytest.raises(ClientFailure):
        ideate(UI, 2, GenerationConfig(), StubTextGenClient({}))


def test_ideate_rejects_bad_count():
    with pytest.raises(ConfigError):
        ideate(UI, 0, GenerationConfig(), StubTextGenClient({}))


def test_prompt_digest_stable():
    config = GenerationConfig()
    cls = screen_taxonomy(UI)[1]
    a = ideation_prompt(UI, cls, 4, 0, config)
    b = ideation_prompt(UI, cls, 4, 0, config)
    assert a == b and prompt_digest(a) == prompt_digest(b)
    assert prompt_digest(a) != prompt_digest(ideation_prompt(UI, cls, 4, 1, config))


def test_markup_prompt_embeds_exact_taxonomy_and_conventions():
    config = GenerationConfig()
    prompt = markup_prompt("a login screen", UI, config)
    assert taxonomy_block(UI) in prompt
    assert taxonomy_block(UI) == ("text, image, text button, icon, input field, "
                                  "switch, checked view, background image, "
                                  "sliding menu, upper taskbar, page indicator, "
                                  "popup window")
    assert 'name="screentype"' in prompt
    assert "data-type" in prompt
    assert 'src="placeholder"' in prompt
    assert "628x1118" in prompt
    assert config.principles_text in prompt


def test_generate_markup_returns_raw_text():
    desc = DescriptionRecord("ui-0000", UI, screen_taxonomy(UI)[1],
                             "a login page", "d")
    config = GenerationConfig()
    raw = "  <html>...unbalanced..."
    client = StubTextGenClient(
        {prompt_digest(markup_prompt(desc.text, UI, config)): raw})
    assert generate_markup(desc, config, client) == raw


def test_config_validation():
    with pytest.raises(ConfigError):
        GenerationConfig(temperature=3.0).validate()
    with pytest.raises(ConfigError):
        GenerationConfig(screen_weights={"login": 0.4}).validate()


# -- pipeline ---------------------------------------------------------------------


def _pipeline_fixture():
    texts = [
        "a login screen titled Sign In with a shop logo image and a wide "
        "Sign In button under the heading",
        "completely unrelated prose about deep sea trenches and bioluminescent "
        "squid migrations across the abyssal plain",
        "a login screen missing its label",
    ]
    markups = [
        LOGIN_MARKUP,
        LOGIN_MARKUP,  # shares no tokens with description 1 -> low score
        """<html><head></head><body><p data-type="text">orphan</p></body></html>""",
    ]
    config = GenerationConfig(seed=11)
    client, _ = make_stub(UI, texts, markups, config)
    return PipelineConfig(domain=UI, count=3, gen=config, threshold=0.3), client


def test_run_pipeline_statuses_and_accounting():
    config, client = _pipeline_fixture()
    result = run_pipeline(config, client, scorer=LexicalScorer())
    counts = result.manifest["counts"]
    assert counts["input"] == 3
    assert counts["lint_rejected"] == 1  # missing screentype meta
    assert counts["kept"] == 1
    assert counts["dropped"] == 1
    assert counts["kept"] + counts["dropped"] + counts["lint_rejected"] + \
        counts["parse_failed"] == counts["input"]
    record = result.records[0]
    assert record.id == "ui-0000"
    assert record.score.value >= 0.3
    assert record.screen_class.name == "login"
    assert len(record.boxes) >= 1


def test_run_pipeline_deterministic_manifest():
    import json

    config, client = _pipeline_fixture()
    a = run_pipeline(config, client, scorer=LexicalScorer())
    config2, client2 = _pipeline_fixture()
    b = run_pipeline(config2, client2, scorer=LexicalScorer())
    assert json.dumps(a.manifest, sort_keys=True) == \
        json.dumps(b.manifest, sort_keys=True)
    assert [r.raster.digest() for r in a.records] == \
        [r.raster.digest() for r in b.records]


def test_run_pipeline_parallel_matches_serial():
    config, client = _pipeline_fixture()
    serial = run_pipeline(config, client, scorer=LexicalScorer())
    config2, client2 = _pipeline_fixture()
    config2.jobs = 4
    parallel = run_pipeline(config2, client2, scorer=LexicalScorer())
    assert [r.id for r in serial.records] == [r.id for r in parallel.records]
    assert serial.manifest["counts"] == parallel.manifest["counts"]


def test_run_pipeline_parse_failure_counted():
    texts = ["a plain concept"]
    config = GenerationConfig()
    client, schedule = make_stub(UI, texts)
    client.responses[prompt_digest(markup_prompt(texts[0], UI, config))] = "   "
    result = run_pipeline(PipelineConfig(domain=UI, count=1, gen=config),
                          client, scorer=LexicalScorer())
    assert result.manifest["counts"]["parse_failed"] == 1
    assert result.failures[0]["status"] == "parse_failed"

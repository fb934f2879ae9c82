"""Command-line entry point.

Subcommands mirror the pipeline phases: ideate (descriptions), synth (raw
markup), produce (repair/resolve/render/score), validate (parse+repair+lint
existing markup), export (datasets), stats, and run (everything, with one
manifest). Configuration comes from flags over an optional JSON config file
over defaults; credentials come from environment variables only.

Exit codes: 0 success, 1 usage/config error, 2 stage failure, 3 validation
errors present.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import dataset as dataset_mod
from . import schema
from .align import make_scorer
from .assets import (
    AssetResolver,
    ImageSearchProvider,
    ProviderSet,
    TextToImageProvider,
)
from .errors import FatalParse, StructSynthError
from .layout import Viewport, compute_layout, viewport_for
from .markup import parse_document, serialize_document
from .quality import has_errors, lint, repair
from .schema import Domain
from .synth import (
    DescriptionRecord,
    GenerationConfig,
    HttpTextGenClient,
    PipelineConfig,
    StubTextGenClient,
    build_stub_client,
    generate_markup,
    ideate,
    load_fixture_descriptions,
    run_pipeline,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_STAGE = 2
EXIT_VALIDATION = 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    domain: str | None = None
    count: int | None = None
    viewport: str | None = None  # "WIDTHxHEIGHT" override
    temperature: float = 0.3
    ideation_temperature: float = 0.7
    threshold: float = 0.3
    scorer: str = "lexical"
    llm_url: str | None = None
    search_url: str | None = None
    t2i_url: str | None = None
    seed: int = 0
    out: str | None = None
    stub: str | None = None
    jobs: int = 0  # 0 means one worker per logical core
    split: str | None = None
    cache_dir: str | None = None
    json_output: bool = False

    @classmethod
    def field_names(cls) -> set[str]:
        return {f.name for f in dataclasses.fields(cls)}

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise UsageError(f"config {path} must be a JSON object")
        unknown = set(raw) - cls.field_names()
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        return cls(**raw)

    def apply_flags(self, args: argparse.Namespace) -> "RunConfig":
        merged = dataclasses.replace(self)
        for name in self.field_names():
            value = getattr(args, name, None)
            if value is not None:
                setattr(merged, name, value)
        return merged

    def resolve_domain(self) -> Domain:
        if not self.domain:
            raise UsageError("--domain is required (slide or ui)")
        try:
            return Domain.parse(self.domain)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc

    def resolve_viewport(self, domain: Domain) -> Viewport:
        if not self.viewport:
            return viewport_for(domain)
        try:
            w, _, h = self.viewport.lower().partition("x")
            vp = Viewport(int(w), int(h))
            if vp.width <= 0 or vp.height <= 0:
                raise ValueError
            return vp
        except ValueError:
            raise UsageError(
                f"--viewport must be WIDTHxHEIGHT, got {self.viewport!r}") from None

    def generation_config(self) -> GenerationConfig:
        return GenerationConfig(
            temperature=self.temperature,
            ideation_temperature=self.ideation_temperature,
            seed=self.seed,
        )

    def make_client(self, domain: Domain):
        if self.stub:
            stub_path = Path(self.stub)
            if stub_path.is_file():
                return StubTextGenClient.from_file(stub_path)
            if not stub_path.is_dir():
                raise UsageError(f"stub path {self.stub} does not exist")
            viewport = self.resolve_viewport(domain) if self.viewport else None
            return build_stub_client(stub_path, domain,
                                     self.generation_config(), viewport)
        if self.llm_url:
            return HttpTextGenClient(self.llm_url)
        raise UsageError("no text client configured; pass --stub DIR or --llm-url URL")

    def make_providers(self) -> ProviderSet:
        return ProviderSet(
            search=ImageSearchProvider(self.search_url) if self.search_url else None,
            text_to_image=(TextToImageProvider(self.t2i_url)
                           if self.t2i_url else None),
        )

    def resolve_jobs(self) -> int:
        return self.jobs if self.jobs > 0 else (os.cpu_count() or 1)

    def split_fractions(self) -> tuple[float, float, float] | None:
        if not self.split:
            return None
        try:
            parts = [float(p) for p in self.split.split(",")]
        except ValueError:
            raise UsageError(f"--split must be three numbers, got {self.split!r}") \
                from None
        if len(parts) != 3:
            raise UsageError("--split takes exactly three comma-separated numbers")
        return parts[0], parts[1], parts[2]


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        raise UsageError(message)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file (flags override it)")
    parser.add_argument("--json", dest="json_output", action="store_const",
                        const=True, help="emit diagnostics as JSON lines on stderr")
    parser.add_argument("--seed", type=int, help="master seed (default 0)")


def _add_generation(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--domain", help="slide or ui")
    parser.add_argument("--stub", help="stub fixture directory or digest-map JSON")
    parser.add_argument("--llm-url", dest="llm_url",
                        help="text-generation endpoint (POST {prompt,...} -> {text})")
    parser.add_argument("--temperature", type=float,
                        help="markup generation temperature (default 0.3)")
    parser.add_argument("--ideation-temperature", dest="ideation_temperature",
                        type=float, help="ideation temperature (default 0.7)")


def build_parser() -> _Parser:
    parser = _Parser(prog="structsynth",
                     description="Synthesize labeled slides and mobile UIs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_schema = sub.add_parser("schema", help="taxonomy utilities")
    schema_sub = p_schema.add_subparsers(dest="schema_command", required=True)
    p_describe = schema_sub.add_parser(
        "describe", help="print the machine-readable taxonomy descriptor")
    p_describe.add_argument("--domain", help="limit to one domain")

    p_ideate = sub.add_parser("ideate", help="generate design-concept descriptions")
    _add_common(p_ideate)
    _add_generation(p_ideate)
    p_ideate.add_argument("--count", type=int, help="number of descriptions")
    p_ideate.add_argument("--out", help="output descriptions.jsonl path")

    p_synth = sub.add_parser("synth", help="generate raw markup per description")
    _add_common(p_synth)
    _add_generation(p_synth)
    p_synth.add_argument("--descriptions", required=True,
                         help="descriptions.jsonl from ideate")
    p_synth.add_argument("--out", help="output directory (markup/ is created)")

    p_produce = sub.add_parser(
        "produce", help="repair, resolve assets, render, score, and filter")
    _add_common(p_produce)
    p_produce.add_argument("--domain", help="slide or ui")
    p_produce.add_argument("--markup", required=True, help="directory of .html files")
    p_produce.add_argument("--descriptions", required=True,
                           help="descriptions.jsonl (for alignment scoring)")
    p_produce.add_argument("--out", help="output directory")
    p_produce.add_argument("--threshold", type=float,
                           help="alignment threshold (default 0.3)")
    p_produce.add_argument("--scorer", help="lexical or remote:URL")
    p_produce.add_argument("--viewport", help="WIDTHxHEIGHT override")
    p_produce.add_argument("--search-url", dest="search_url",
                           help="image search provider endpoint")
    p_produce.add_argument("--t2i-url", dest="t2i_url",
                           help="text-to-image provider endpoint")
    p_produce.add_argument("--cache-dir", dest="cache_dir",
                           help="asset cache directory")

    p_validate = sub.add_parser(
        "validate", help="parse + repair + lint markup files, print findings")
    _add_common(p_validate)
    p_validate.add_argument("--domain", help="slide or ui (default ui)")
    p_validate.add_argument("files", nargs="+", help="markup files to validate")

    p_export = sub.add_parser("export", help="materialize datasets from records")
    _add_common(p_export)
    p_export.add_argument("--records", required=True, help="records.jsonl path")
    p_export.add_argument("--out", help="output directory")
    p_export.add_argument("--split", help="train,val,test percentages (e.g. 70,15,15)")

    p_stats = sub.add_parser("stats", help="print corpus statistics")
    _add_common(p_stats)
    p_stats.add_argument("--records", required=True, help="records.jsonl path")
    p_stats.add_argument("--descriptions", help="descriptions.jsonl path")

    p_run = sub.add_parser("run", help="full pipeline with one manifest")
    _add_common(p_run)
    _add_generation(p_run)
    p_run.add_argument("--count", type=int,
                       help="descriptions to generate (stub default: all fixtures)")
    p_run.add_argument("--out", help="output directory")
    p_run.add_argument("--threshold", type=float, help="alignment threshold")
    p_run.add_argument("--scorer", help="lexical or remote:URL")
    p_run.add_argument("--viewport", help="WIDTHxHEIGHT override")
    p_run.add_argument("--jobs", type=int, help="worker pool width")
    p_run.add_argument("--search-url", dest="search_url")
    p_run.add_argument("--t2i-url", dest="t2i_url")
    p_run.add_argument("--cache-dir", dest="cache_dir")
    p_run.add_argument("--split", help="also split exports (e.g. 70,15,15)")
    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    base = RunConfig.from_file(args.config) if getattr(args, "config", None) \
        else RunConfig()
    return base.apply_flags(args)


def _require_out(config: RunConfig) -> Path:
    if not config.out:
        raise UsageError("--out is required")
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _emit_diagnostics(diags, json_mode: bool) -> None:
    for d in diags:
        if json_mode:
            print(json.dumps(d.to_json_dict(), sort_keys=True), file=sys.stderr)
        else:
            loc = f"{d.line}:{d.col}" if d.line else "-"
            print(f"  [{d.severity}] {d.code} @ {loc}: {d.message}",
                  file=sys.stderr)


def _write_descriptions(records: list[DescriptionRecord], path: Path) -> None:
    lines = [
        json.dumps({
            "id": r.id,
            "domain": r.domain.value,
            "screen_class": r.target_screen_class.name,
            "text": r.text,
            "prompt_digest": r.prompt_digest,
        }, sort_keys=True, ensure_ascii=False)
        for r in records
    ]
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def _read_descriptions(path: str, domain: Domain) -> list[DescriptionRecord]:
    records = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        row = json.loads(line)
        records.append(DescriptionRecord(
            id=row["id"],
            domain=Domain.parse(row.get("domain", domain.value)),
            target_screen_class=schema.canonicalize_screen(
                row["screen_class"], domain),
            text=row["text"],
            prompt_digest=row.get("prompt_digest", ""),
        ))
    return records


def _file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


# -- command implementations --------------------------------------------------------


def cmd_schema_describe(args) -> int:
    desc = schema.describe()
    if getattr(args, "domain", None):
        domain = Domain.parse(args.domain)
        desc = {"annotation": desc["annotation"],
                "domains": {domain.value: desc["domains"][domain.value]}}
    print(json.dumps(desc, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_ideate(args) -> int:
    config = _config_from(args)
    domain = config.resolve_domain()
    count = config.count or _default_count(config, domain)
    client = config.make_client(domain)
    records = ideate(domain, count, config.generation_config(), client)
    out = Path(config.out) if config.out else Path("descriptions.jsonl")
    _write_descriptions(records, out)
    print(f"wrote {len(records)} descriptions to {out}")
    return EXIT_OK


def _default_count(config: RunConfig, domain: Domain) -> int:
    if config.stub and Path(config.stub).is_dir():
        return len(load_fixture_descriptions(config.stub, domain))
    return 20


def cmd_synth(args) -> int:
    config = _config_from(args)
    domain = config.resolve_domain()
    out = _require_out(config)
    (out / "markup").mkdir(exist_ok=True)
    client = config.make_client(domain)
    gen = config.generation_config()
    viewport = config.resolve_viewport(domain) if config.viewport else None
    descriptions = _read_descriptions(args.descriptions, domain)
    for desc in descriptions:
        text = generate_markup(desc, gen, client, viewport)
        (out / "markup" / f"{desc.id}.html").write_text(text, encoding="utf-8")
    print(f"wrote {len(descriptions)} markup candidates under {out / 'markup'}")
    return EXIT_OK


def cmd_produce(args) -> int:
    config = _config_from(args)
    domain = config.resolve_domain()
    out = _require_out(config)
    viewport = config.resolve_viewport(domain)
    descriptions = {d.id: d for d in _read_descriptions(args.descriptions, domain)}
    scorer = make_scorer(config.scorer)
    resolver = AssetResolver(config.make_providers(), seed=config.seed,
                             cache_dir=config.cache_dir)

    from .align import filter_corpus, score_with
    from .layout import element_boxes
    from .render import rasterize
    from .synth import _derive_seed

    markup_dir = Path(args.markup)
    files = sorted(markup_dir.glob("*.html"))
    if not files:
        raise UsageError(f"no .html files under {markup_dir}")

    scored = []
    failures = []
    for path in files:
        doc_id = path.stem
        desc = descriptions.get(doc_id)
        if desc is None:
            failures.append({"id": doc_id, "status": "parse_failed",
                             "detail": "no matching description"})
            continue
        try:
            doc, diags = parse_document(path.read_text(encoding="utf-8"), domain)
        except FatalParse as exc:
            failures.append({"id": doc_id, "status": "parse_failed",
                             "detail": str(exc)})
            continue
        _emit_diagnostics(diags, config.json_output)
        doc, repair_report = repair(doc)
        tree = compute_layout(doc, viewport)
        findings = lint(doc, tree, domain)
        if has_errors(findings):
            failures.append({
                "id": doc_id, "status": "lint_rejected",
                "detail": "; ".join(f.message for f in findings
                                    if f.severity == "error")})
            continue
        boxes = element_boxes(tree, doc, viewport)
        assets = resolver.resolve_all(doc.placeholders)
        raster = rasterize(tree, doc, assets, _derive_seed(config.seed, doc_id))
        alignment = score_with(scorer, raster, doc, desc.text)
        record = dataset_mod.DatasetRecord(
            id=doc_id, domain=domain, description=desc.text, raster=raster,
            image_file=f"images/{doc_id}.png", width=viewport.width,
            height=viewport.height, boxes=boxes, screen_class=doc.screen_label,
            score=alignment,
            repair_summary=repair_report.to_json_list(),
            lint_summary=[f.to_json_dict() for f in findings],
            provenance={"seed": config.seed, "scorer_id": alignment.scorer_id,
                        "prompt_digest": desc.prompt_digest,
                        "asset_kinds": sorted(s.kind for s in doc.placeholders)},
        )
        scored.append((record, alignment.value))

    kept, dropped, stats = filter_corpus(scored, config.threshold)
    for rec in kept:
        (out / rec.image_file).parent.mkdir(parents=True, exist_ok=True)
        (out / rec.image_file).write_bytes(rec.raster.to_png_bytes())
    dataset_mod.write_records(kept, out)
    manifest = {
        "domain": domain.value,
        "seed": config.seed,
        "scorer_id": scorer.scorer_id,
        "counts": {"input": len(files),
                   "parse_failed": sum(1 for f in failures
                                       if f["status"] == "parse_failed"),
                   "lint_rejected": sum(1 for f in failures
                                        if f["status"] == "lint_rejected"),
                   "kept": len(kept), "dropped": len(dropped)},
        "filter": stats.to_json_dict(),
        "failures": failures,
    }
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"kept {len(kept)} of {len(files)} documents -> {out}")
    return EXIT_OK


def cmd_validate(args) -> int:
    config = _config_from(args)
    domain = Domain.parse(config.domain) if config.domain else Domain.UI
    viewport = config.resolve_viewport(domain)
    any_errors = False
    for name in args.files:
        path = Path(name)
        try:
            doc, diags = parse_document(path.read_text(encoding="utf-8"), domain)
        except (OSError, FatalParse) as exc:
            print(f"{name}: FATAL {exc}")
            any_errors = True
            continue
        doc, report = repair(doc)
        tree = compute_layout(doc, viewport)
        findings = lint(doc, tree, domain)
        print(f"{name}: {len(diags)} parse diagnostic(s), "
              f"{len(report.applied)} repair(s), {len(findings)} finding(s)")
        _emit_diagnostics(diags, config.json_output)
        for action in report.applied:
            line = {"rule": action.rule, "path": list(action.path),
                    "before": action.before, "after": action.after}
            if config.json_output:
                print(json.dumps(line, sort_keys=True), file=sys.stderr)
            else:
                print(f"  [repair] {action.rule} @ {list(action.path)}")
        for finding in findings:
            if config.json_output:
                print(json.dumps(finding.to_json_dict(), sort_keys=True),
                      file=sys.stderr)
            else:
                print(f"  [{finding.severity}] {finding.rule}: {finding.message}")
        if has_errors(findings):
            any_errors = True
    return EXIT_VALIDATION if any_errors else EXIT_OK


def _export_all(records, out: Path, fractions, seed: int) -> dict[str, str]:
    digests: dict[str, str] = {}

    def export_set(recs, suffix=""):
        det = dataset_mod.export_detection(
            recs, out, file_name=f"coco{suffix}.json")
        cap = dataset_mod.export_captions(recs, out / f"captions{suffix}.jsonl")
        cls = dataset_mod.export_classification(
            recs, out / f"classification{suffix}.jsonl")
        for p in (det, cap, cls):
            digests[p.name] = _file_digest(p)

    if fractions is None:
        export_set(records)
    else:
        for name, part in dataset_mod.split_records(records, fractions,
                                                    seed).items():
            if part:
                export_set(part, suffix=f"_{name}")
    return digests


def cmd_export(args) -> int:
    config = _config_from(args)
    out = _require_out(config)
    records = dataset_mod.load_records(args.records)
    if not records:
        raise UsageError(f"no records in {args.records}")
    records_dir = Path(args.records).parent
    for rec in records:
        src = records_dir / rec.image_file
        dst = out / rec.image_file
        if src.exists() and src.resolve() != dst.resolve():
            dst.parent.mkdir(parents=True, exist_ok=True)
            dst.write_bytes(src.read_bytes())
    digests = _export_all(records, out, config.split_fractions(), config.seed)
    for name in sorted(digests):
        print(f"{name}  sha256:{digests[name][:16]}")
    return EXIT_OK


def cmd_stats(args) -> int:
    config = _config_from(args)
    records = dataset_mod.load_records(args.records)
    descriptions: list[str] = []
    if args.descriptions:
        for line in Path(args.descriptions).read_text(encoding="utf-8").splitlines():
            if line.strip():
                descriptions.append(json.loads(line)["text"])
    else:
        descriptions = [r.description for r in records]
    stats = dataset_mod.compute_stats(records, descriptions)
    if config.json_output:
        print(json.dumps(stats.to_json_dict(), indent=2, sort_keys=True))
    else:
        print(dataset_mod.stats_report(stats))
    return EXIT_OK


def cmd_run(args) -> int:
    config = _config_from(args)
    domain = config.resolve_domain()
    out = _require_out(config)
    count = config.count or _default_count(config, domain)
    client = config.make_client(domain)
    pipeline = PipelineConfig(
        domain=domain,
        count=count,
        gen=config.generation_config(),
        viewport=config.resolve_viewport(domain) if config.viewport else None,
        threshold=config.threshold,
        jobs=config.resolve_jobs(),
    )
    scorer = make_scorer(config.scorer)
    result = run_pipeline(pipeline, client, config.make_providers(), scorer)

    _write_descriptions(result.descriptions, out / "descriptions.jsonl")
    markup_dir = out / "markup"
    markup_dir.mkdir(exist_ok=True)
    for desc in result.descriptions:
        text = result.markups.get(desc.id, "")
        (markup_dir / f"{desc.id}.html").write_text(text, encoding="utf-8")
    for rec in result.records:
        target = out / rec.image_file
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(rec.raster.to_png_bytes())
    dataset_mod.write_records(result.records, out)

    manifest = dict(result.manifest)
    outputs = {"descriptions.jsonl": _file_digest(out / "descriptions.jsonl"),
               "records.jsonl": _file_digest(out / "records.jsonl")}
    if result.records:
        outputs.update(_export_all(result.records, out,
                                   config.split_fractions(), config.seed))
        for rec in result.records:
            outputs[rec.image_file] = _file_digest(out / rec.image_file)
    manifest["outputs"] = outputs
    manifest_path = out / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n",
                             encoding="utf-8")
    counts = manifest["counts"]
    print(f"run complete: kept {counts['kept']}/{counts['input']} "
          f"(dropped {counts['dropped']}, lint-rejected {counts['lint_rejected']}, "
          f"parse-failed {counts['parse_failed']}) -> {out}")
    return EXIT_OK


_COMMANDS = {
    "ideate": cmd_ideate,
    "synth": cmd_synth,
    "produce": cmd_produce,
    "validate": cmd_validate,
    "export": cmd_export,
    "stats": cmd_stats,
    "run": cmd_run,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "schema":
            return cmd_schema_describe(args)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StructSynthError as exc:
        print(f"stage failure: {exc}", file=sys.stderr)
        return EXIT_STAGE
    except OSError as exc:
        print(f"stage failure: {exc}", file=sys.stderr)
        return EXIT_STAGE


if __name__ == "__main__":
    sys.exit(main())

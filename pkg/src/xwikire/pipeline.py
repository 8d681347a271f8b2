"""File-to-file pipeline stages. Each stage reads its inputs from the config
and from earlier stages' outputs under ``out``, and writes its own outputs
plus a manifest there.

Output tree::

    ingest/documents.jsonl      aligned pages with denormalized tuples
    slotfill/triples.jsonl      Triple records
    slotfill/contexts.jsonl     positive and negative contexts
    querify/examples.jsonl      RCExample records
    splits/...                  id lists and fold manifests
    stats/...                   counts.json, top_properties.json, overlap.json, ...
    baselines/<mode>.jsonl      predictions
    scores/<mode>.json          score reports
"""

from __future__ import annotations

import logging
import os
import platform
from collections import Counter, defaultdict
from pathlib import Path
from typing import Iterable

from . import __version__
from .baselines import PREDICTORS
from .config import ConfigError, PipelineConfig
from .denormalize import PropertyCatalog, load_locales
from .evalscore import EvalReport, Prediction, score, score_by_group
from .ingestion import LoadStats, align, load_corpus, load_kb
from .jsonl import iter_jsonl, sha256_file, write_json, write_jsonl, write_lines
from .querify import (AgreementTable, GenderClass, QuerifyStats, RCExample, infer_gender, load_pronouns,
                      load_templates, querify_dataset)
from .segment import load_abbreviations
from .slotfill import (EntityDocument, NegativeContext, PositiveContext, SlotfillStats, Triple, annotate_view,
                       build_negatives, build_positives, merge_triples)
from .splits import SplitError, build_parallel_testsets, fold_unrel, split_unent, subsample, unrel_rounds
from .stats import (context_length_stats, count_table, load_vocab, overlap_matrix, top_properties, triple_sets,
                    vocab_coverage)

log = logging.getLogger(__name__)

DOCUMENTS = Path("ingest/documents.jsonl")
TRIPLES = Path("slotfill/triples.jsonl")
CONTEXTS = Path("slotfill/contexts.jsonl")
EXAMPLES = Path("querify/examples.jsonl")


class StageError(Exception):
    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


def _read(path: Path, stage: str) -> list:
    if not path.exists():
        raise StageError(stage, f"missing input {path}; run the earlier stage first")
    records = []
    for lineno, obj in iter_jsonl(path):
        if obj is None:
            raise StageError(stage, f"{path}:{lineno}: invalid JSON")
        records.append(obj)
    return records


def load_examples(path, stage: str = "load") -> list[RCExample]:
    return [RCExample.from_json(o) for o in _read(Path(path), stage)]


def write_manifest(out: Path, stage: str, cfg: PipelineConfig | None, extra_inputs: Iterable[Path] = ()) -> None:
    inputs = {}
    if cfg is not None:
        for name, p in cfg.input_paths().items():
            if p.exists():
                inputs[name] = {"path": os.path.relpath(p, cfg.base_dir), "sha256": sha256_file(p)}
        if cfg.source is not None:
            inputs["config"] = {"path": cfg.source.name, "sha256": sha256_file(cfg.source)}
    for p in map(Path, extra_inputs):
        if p.exists():
            rel = os.path.relpath(p, out)
            inputs[rel] = {"path": rel, "sha256": sha256_file(p)}
    manifest = {
        "stage": stage,
        "tool": "xwikire",
        "version": __version__,
        "python": platform.python_version(),
        "settings": cfg.settings() if cfg is not None else {},
        "inputs": dict(sorted(inputs.items())),
    }
    name = "manifest.json" if stage == "build" else f"manifest.{stage}.json"
    write_json(out / name, manifest)


def run_ingest(cfg: PipelineConfig, out: Path) -> dict:
    try:
        cfg.require("kb", "properties", "corpora")
    except ConfigError as exc:
        raise StageError("ingest", str(exc)) from exc
    kb_stats = LoadStats()
    try:
        kb = {e.qid: e for e in load_kb(cfg.kb, cfg.langs, kb_stats)}
        catalog = PropertyCatalog.from_tsv(cfg.properties)
        locales = load_locales(cfg.locale)
        pronouns = load_pronouns(cfg.pronouns)
    except (OSError, ValueError) as exc:
        raise StageError("ingest", str(exc)) from exc

    skips: Counter = Counter()
    report = {"kb": kb_stats.as_dict(), "corpus": {}, "no_statements": {}, "documents": {}}
    documents = []
    for lang in cfg.langs:
        cstats = LoadStats()
        try:
            pages = list(load_corpus(cfg.corpora[lang], lang, cstats))
        except OSError as exc:
            raise StageError("ingest", str(exc)) from exc
        views = align(kb, pages, lang, cstats)
        no_statements = 0
        n_docs = 0
        for view in views:
            if not view.entity.statements:
                no_statements += 1
                continue
            doc = annotate_view(view, kb, catalog, locales, skips)
            doc.gender = infer_gender(view.qid, lang, kb, view.page, pronouns).value
            documents.append(doc)
            n_docs += 1
        report["corpus"][lang] = cstats.as_dict()
        report["no_statements"][lang] = no_statements
        report["documents"][lang] = n_docs
    report["denormalize_skips"] = dict(sorted(skips.items()))
    write_jsonl(out / DOCUMENTS, (d.to_json() for d in documents))
    write_json(out / "ingest/report.json", report)
    write_manifest(out, "ingest", cfg)
    return report


def run_slotfill(cfg: PipelineConfig, out: Path) -> dict:
    docs = [EntityDocument.from_json(o) for o in _read(out / DOCUMENTS, "slotfill")]
    stats = SlotfillStats()
    abbreviations = load_abbreviations(cfg.abbreviations)
    pairs = build_positives(docs, stats, abbreviations)
    positives = [ctx for _, ctx in pairs]
    try:
        negatives = build_negatives(positives, cfg.negative_ratio, cfg.seed, stats)
    except ValueError as exc:
        raise StageError("slotfill", str(exc)) from exc
    triples = merge_triples(t for t, _ in pairs)
    contexts = sorted([*positives, *negatives],
                      key=lambda c: (c.triple_id, c.language, getattr(c, "partner_triple_id", "")))
    write_jsonl(out / TRIPLES, (t.to_json() for t in triples))
    write_jsonl(out / CONTEXTS, (c.to_json() for c in contexts))
    report = {**stats.as_dict(), "triples": len(triples)}
    write_json(out / "slotfill/report.json", report)
    write_manifest(out, "slotfill", cfg, [out / DOCUMENTS])
    return report


def read_contexts(path: Path, stage: str = "querify") -> list[PositiveContext | NegativeContext]:
    out = []
    for obj in _read(path, stage):
        if obj.get("answers") is None:
            out.append(NegativeContext(obj["triple_id"], obj["language"], obj["sentence"],
                                       obj["partner_triple_id"]))
        else:
            out.append(PositiveContext(obj["triple_id"], obj["language"], obj["sentence"],
                                       tuple(obj["answers"]), ""))
    return out


def run_querify(cfg: PipelineConfig, out: Path) -> dict:
    try:
        cfg.require("templates")
        catalog = PropertyCatalog.from_tsv(cfg.properties) if cfg.properties else None
        templates = load_templates(cfg.templates, catalog)
        agreement = AgreementTable.load(cfg.agreement)
    except (OSError, ValueError) as exc:
        raise StageError("querify", str(exc)) from exc
    contexts = read_contexts(out / CONTEXTS)
    triples = {t.id: t for t in (Triple.from_json(o) for o in _read(out / TRIPLES, "querify"))}
    labels, genders = {}, {}
    for o in _read(out / DOCUMENTS, "querify"):
        labels[(o["qid"], o["language"])] = o["label"]
        genders[(o["qid"], o["language"])] = GenderClass(o.get("gender", "unknown"))
    stats = QuerifyStats()
    examples = querify_dataset(contexts, triples, templates, labels, genders, agreement, stats)
    write_jsonl(out / EXAMPLES, (e.to_json() for e in examples))
    write_json(out / "querify/report.json", stats.as_dict())
    write_manifest(out, "querify", cfg, [out / CONTEXTS, out / TRIPLES, out / DOCUMENTS])
    return stats.as_dict()


def run_split(cfg: PipelineConfig, out: Path) -> dict:
    examples = load_examples(out / EXAMPLES, "split")
    by_lang = defaultdict(list)
    for ex in examples:
        by_lang[ex.lang].append(ex)
    langs = [lang for lang in cfg.langs if lang in by_lang]
    sdir = out / "splits"
    try:
        unent = split_unent(examples, cfg.fractions, cfg.seed, cfg.template_holdout)
    except SplitError as exc:
        raise StageError("split", str(exc)) from exc
    for lang in langs:
        for name, ids in unent.examples[lang].items():
            write_lines(sdir / "unent" / f"{lang}.{name}.txt", ids)
    write_json(sdir / "unent/entities.json", {lang: unent.entities[lang] for lang in langs})

    report: dict = {"unent": {lang: {k: len(v) for k, v in unent.examples[lang].items()} for lang in langs}}
    if cfg.pivot in by_lang:
        parallel = build_parallel_testsets({lang: by_lang[lang] for lang in langs}, unent, cfg.pivot)
        for pair, sets in parallel.items():
            for name in ("dev", "test"):
                for key, ids in sets[name].items():
                    write_lines(sdir / "parallel" / f"{pair}.{name}.{key}.txt", ids)
        report["parallel"] = {pair: sets["retained"] for pair, sets in parallel.items()}

    pids = sorted({ex.pid for ex in examples})
    if len(pids) >= cfg.folds:
        assignment = fold_unrel(pids, langs, cfg.folds, cfg.peek, cfg.seed)
        write_json(sdir / "unrel/folds.json", assignment.manifest(langs))
        for r, per_lang in enumerate(unrel_rounds(examples, assignment, langs)):
            for lang, parts in per_lang.items():
                for name, ids in parts.items():
                    write_lines(sdir / "unrel" / f"round{r}.{lang}.{name}.txt", ids)
        report["unrel"] = {"folds": cfg.folds, "peek": cfg.peek, "pids": len(pids)}
    else:
        log.warning("only %d relations for %d folds; UnREL folds not written", len(pids), cfg.folds)

    for lang in langs:
        train = unent.examples[lang]["train"]
        if lang != cfg.pivot:
            for n in cfg.finetune_sizes:
                write_lines(sdir / "finetune" / f"{lang}.{n}.txt", subsample(train, n, cfg.seed))
        write_lines(sdir / "multilingual" / f"{lang}.txt", subsample(train, cfg.multilingual_size, cfg.seed))
    write_json(sdir / "report.json", report)
    write_manifest(out, "split", cfg, [out / EXAMPLES])
    return report


def read_unent_splits(out: Path, langs: Iterable[str]) -> dict[str, dict[str, list[str]]]:
    splits = {}
    for lang in langs:
        parts = {}
        for name in ("train", "dev", "test"):
            p = out / "splits" / "unent" / f"{lang}.{name}.txt"
            if p.exists():
                parts[name] = [line for line in p.read_text(encoding="utf-8").splitlines() if line]
        if parts:
            splits[lang] = parts
    return splits


def run_stats(cfg: PipelineConfig, out: Path) -> dict:
    examples = load_examples(out / EXAMPLES, "stats")
    sdir = out / "stats"
    counts = count_table(examples)
    write_json(sdir / "counts.json", counts)
    write_json(sdir / "top_properties.json",
               {lang: [[pid, n] for pid, n in ranked] for lang, ranked in top_properties(examples).items()})
    sets = triple_sets(examples)
    langs = [lang for lang in cfg.langs if lang in sets]
    overall = overlap_matrix(sets, languages=langs)
    by_pid = {pid: overlap_matrix(sets, pid=pid, languages=langs).as_dict()
              for pid in sorted({ex.pid for ex in examples})}
    write_json(sdir / "overlap.json", {"all": overall.as_dict(), "by_property": by_pid})
    (sdir / "overlap.dat").write_text(overall.to_gnuplot(), encoding="utf-8")
    write_json(sdir / "context_lengths.json", context_length_stats(examples, read_unent_splits(out, langs)))
    if cfg.vocab is not None:
        try:
            vocab = load_vocab(cfg.vocab)
        except OSError as exc:
            raise StageError("stats", str(exc)) from exc
        write_json(sdir / "coverage.json", vocab_coverage(examples, vocab))
    else:
        log.warning("no vocab configured; coverage.json not written")
    write_manifest(out, "stats", cfg, [out / EXAMPLES])
    return counts


def read_predictions(path) -> list[Prediction]:
    preds = []
    for obj in _read(Path(path), "score"):
        if "example_id" not in obj:
            raise StageError("score", f"{path}: prediction without example_id")
        answer = obj.get("answer")
        if answer is not None and not isinstance(answer, str):
            raise StageError("score", f"{path}: answer must be a string or null")
        preds.append(Prediction(obj["example_id"], answer))
    return preds


def report_json(report: EvalReport, groups: dict[str, EvalReport] | None = None, group_key: str | None = None) -> dict:
    obj = report.as_dict()
    if groups is not None:
        obj["group_by"] = group_key
        obj["groups"] = {k: v.as_dict() for k, v in groups.items()}
    return obj


def score_files(gold_path, pred_path, group_by: str | None = None, case_sensitive: bool = False) -> dict:
    gold = [o for o in _read(Path(gold_path), "score")]
    preds = read_predictions(pred_path)
    report = score(gold, preds, case_sensitive)
    groups = score_by_group(gold, preds, group_by, case_sensitive) if group_by else None
    return report_json(report, groups, group_by)


def run_baselines(cfg: PipelineConfig, out: Path, modes=("oracle", "nil", "heuristic")) -> dict:
    examples = load_examples(out / EXAMPLES, "baseline")
    results = {}
    for mode in modes:
        preds = PREDICTORS[mode](examples)
        pred_path = out / "baselines" / f"{mode}.jsonl"
        write_jsonl(pred_path, ({"example_id": p.example_id, "answer": p.answer} for p in preds))
        report = score(examples, preds)
        groups = score_by_group(examples, preds, "language")
        results[mode] = report_json(report, groups, "language")
        write_json(out / "scores" / f"{mode}.json", results[mode])
    write_manifest(out, "baseline", cfg, [out / EXAMPLES])
    return results


def run_build(cfg: PipelineConfig, out: Path) -> dict:
    summary = {
        "ingest": run_ingest(cfg, out),
        "slotfill": run_slotfill(cfg, out),
        "querify": run_querify(cfg, out),
        "split": run_split(cfg, out),
        "stats": run_stats(cfg, out),
        "baselines": {m: {k: r[k] for k in ("precision", "recall", "f1")}
                      for m, r in run_baselines(cfg, out).items()},
    }
    write_manifest(out, "build", cfg)
    return summary

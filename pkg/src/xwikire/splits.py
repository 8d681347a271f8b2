"""Experimental partitions: unseen entities, unseen relations, parallel test sets.

Everything here is a pure function of its inputs and a seed. Examples only
need ``id``, ``triple_id``, ``lang`` and ``template_id`` attributes (or keys).
"""

from __future__ import annotations

import logging
import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .slotfill import split_triple_id

log = logging.getLogger(__name__)

SPLIT_NAMES = ("train", "dev", "test")


class SplitError(ValueError):
    pass


@dataclass(frozen=True)
class SplitSpec:
    mode: str = "UnENT"
    languages: tuple[str, ...] = ("en", "de", "es", "fr", "it")
    fractions: tuple[float, float, float] = (0.8, 0.1, 0.1)
    folds: int = 5
    seed: int = 0
    peek: bool = False
    template_holdout: float = 0.0

    def __post_init__(self):
        if self.mode not in ("UnENT", "UnREL"):
            raise SplitError(f"unknown split mode {self.mode!r}")
        if len(self.fractions) != 3 or any(f < 0 for f in self.fractions) \
                or not math.isclose(sum(self.fractions), 1.0, abs_tol=1e-9):
            raise SplitError("fractions must be three non-negative numbers summing to 1")
        if self.folds < 2:
            raise SplitError("need at least two folds")
        if self.peek and self.mode != "UnREL":
            raise SplitError("peek applies to UnREL only")


def _get(ex, name):
    return ex[name] if isinstance(ex, Mapping) else getattr(ex, name)


def _entity1(ex) -> str:
    return split_triple_id(_get(ex, "triple_id"))[0]


def _pid(ex) -> str:
    return split_triple_id(_get(ex, "triple_id"))[1]


def allocate(n: int, fractions: Sequence[float]) -> list[int]:
    """Split ``n`` items proportionally (largest remainder), giving every
    non-zero fraction at least one item when ``n`` allows it."""
    raw = [n * f for f in fractions]
    sizes = [math.floor(r + 1e-9) for r in raw]
    order = sorted(range(len(raw)), key=lambda i: (-(raw[i] - sizes[i]), i))
    for i in order[: n - sum(sizes)]:
        sizes[i] += 1
    wanted = [i for i, f in enumerate(fractions) if f > 0]
    if n >= len(wanted):
        for i in wanted:
            while sizes[i] == 0:
                donor = max(wanted, key=lambda j: (sizes[j], -j))
                sizes[donor] -= 1
                sizes[i] += 1
    return sizes


@dataclass
class UnentSplit:
    entities: dict[str, dict[str, list[str]]] = field(default_factory=dict)
    examples: dict[str, dict[str, list[str]]] = field(default_factory=dict)


def split_unent(examples: Iterable, fractions: Sequence[float] = (0.8, 0.1, 0.1), seed: int = 0,
                template_holdout: float = 0.0) -> UnentSplit:
    """Partition each language's entity₁ set into train/dev/test; examples follow.

    With ``template_holdout`` > 0, that fraction of each (property, language)
    template group is reserved for dev/test: train keeps only the other
    templates and dev/test only the reserved ones.
    """
    SplitSpec(fractions=tuple(fractions), seed=seed)
    by_lang: dict[str, list] = defaultdict(list)
    for ex in examples:
        by_lang[_get(ex, "lang")].append(ex)

    held: set[str] = set()
    if template_holdout > 0:
        held = _held_out_templates(by_lang, template_holdout, seed)

    result = UnentSplit()
    for lang in sorted(by_lang):
        entities = sorted({_entity1(ex) for ex in by_lang[lang]})
        if len(entities) < 3:
            raise SplitError(f"insufficient-entities: {lang} has {len(entities)}")
        random.Random(f"unent|{seed}|{lang}").shuffle(entities)
        sizes = allocate(len(entities), fractions)
        parts, start = {}, 0
        for name, size in zip(SPLIT_NAMES, sizes):
            parts[name] = sorted(entities[start:start + size])
            start += size
        where = {e: name for name, ents in parts.items() for e in ents}
        ids: dict[str, list[str]] = {name: [] for name in SPLIT_NAMES}
        for ex in by_lang[lang]:
            name = where[_entity1(ex)]
            if held and (name == "train") == (_get(ex, "template_id") in held):
                continue
            ids[name].append(_get(ex, "id"))
        result.entities[lang] = parts
        result.examples[lang] = {k: sorted(v) for k, v in ids.items()}
    return result


def _held_out_templates(by_lang, fraction: float, seed: int) -> set[str]:
    groups: dict[tuple[str, str], set[str]] = defaultdict(set)
    for lang, exs in by_lang.items():
        for ex in exs:
            groups[(_pid(ex), lang)].add(_get(ex, "template_id"))
    held = set()
    for key in sorted(groups):
        tids = sorted(groups[key])
        if len(tids) < 2:
            continue
        random.Random(f"templates|{seed}|{key[0]}|{key[1]}").shuffle(tids)
        k = min(len(tids) - 1, max(1, round(len(tids) * fraction)))
        held.update(tids[:k])
    return held


def build_parallel_testsets(examples_by_lang: Mapping[str, Iterable], split: UnentSplit,
                            pivot: str = "en") -> dict[str, dict]:
    """Pairwise (pivot, L) dev/test sets restricted to triples present in both
    languages whose entity₁ never occurs in the pivot's training entities.

    Returns ``{"en-de": {"dev": {...}, "test": {...}, "retained": {...}}, ...}``
    where each split maps language -> sorted example ids and ``triples`` ->
    the retained triple ids.
    """
    exs = {lang: list(v) for lang, v in examples_by_lang.items()}
    if pivot not in exs:
        raise SplitError(f"pivot language {pivot!r} has no examples")
    triples_of = {lang: {_get(e, "triple_id") for e in v} for lang, v in exs.items()}
    pivot_train = set(split.entities.get(pivot, {}).get("train", []))
    out = {}
    for lang in sorted(exs):
        if lang == pivot:
            continue
        pair = f"{pivot}-{lang}"
        out[pair] = {"retained": {}}
        shared = triples_of[pivot] & triples_of[lang]
        for name in ("dev", "test"):
            ids = set(split.examples.get(lang, {}).get(name, []))
            target = [e for e in exs[lang] if _get(e, "id") in ids]
            keep = sorted({_get(e, "triple_id") for e in target
                           if _get(e, "triple_id") in shared and _entity1(e) not in pivot_train})
            keep_set = set(keep)
            out[pair][name] = {
                "triples": keep,
                lang: sorted(_get(e, "id") for e in target if _get(e, "triple_id") in keep_set),
                pivot: sorted(_get(e, "id") for e in exs[pivot] if _get(e, "triple_id") in keep_set),
            }
            out[pair]["retained"][name] = len(keep)
            if not keep:
                log.warning("parallel %s %s set is empty", pair, name)
    return out


@dataclass
class FoldAssignment:
    base_fold: dict[str, int]
    offsets: dict[str, int]
    k: int

    def test_fold(self, round_: int, language: str) -> int:
        return (round_ + self.offsets[language]) % self.k

    def test_pids(self, round_: int, language: str) -> list[str]:
        f = self.test_fold(round_, language)
        return sorted(p for p, b in self.base_fold.items() if b == f)

    def train_pids(self, round_: int, language: str) -> list[str]:
        f = self.test_fold(round_, language)
        return sorted(p for p, b in self.base_fold.items() if b != f)

    def manifest(self, languages: Sequence[str]) -> list[dict]:
        return [{"round": r, "language": lang, "train_pids": self.train_pids(r, lang),
                 "test_pids": self.test_pids(r, lang)}
                for r in range(self.k) for lang in languages]


def fold_unrel(pids: Iterable[str], languages: Sequence[str], k: int = 5, peek: bool = False,
               seed: int = 0) -> FoldAssignment:
    """Assign relations to k folds; round r tests fold (r + offset) mod k.

    Without peek every language has offset 0, so a test relation is unseen in
    all languages. With peek, language i has offset i: its test relations are
    missing from its own training data but, with at least two languages, are
    trained on by the others in the same round.
    """
    pids = sorted(set(pids))
    if k > len(pids):
        raise SplitError(f"{k} folds but only {len(pids)} relations")
    if k < 2:
        raise SplitError("need at least two folds")
    random.Random(f"unrel|{seed}").shuffle(pids)
    base = {p: i % k for i, p in enumerate(pids)}
    offsets = {lang: (i % k if peek else 0) for i, lang in enumerate(languages)}
    return FoldAssignment(base, offsets, k)


def unrel_rounds(examples: Iterable, assignment: FoldAssignment,
                 languages: Sequence[str]) -> list[dict[str, dict[str, list[str]]]]:
    """Per round, per language: train/test example ids."""
    by_lang: dict[str, list] = defaultdict(list)
    for ex in examples:
        by_lang[_get(ex, "lang")].append(ex)
    rounds = []
    for r in range(assignment.k):
        per_lang = {}
        for lang in languages:
            test = set(assignment.test_pids(r, lang))
            ids = {"train": [], "test": []}
            for ex in by_lang.get(lang, []):
                pid = _pid(ex)
                if pid not in assignment.base_fold:
                    continue
                ids["test" if pid in test else "train"].append(_get(ex, "id"))
            per_lang[lang] = {name: sorted(v) for name, v in ids.items()}
        rounds.append(per_lang)
    return rounds


def subsample(train: Iterable[str], n: int, seed: int = 0) -> list[str]:
    """Seeded uniform sample of ``n`` ids without replacement, sorted by id."""
    ids = sorted(set(train))
    if n < 0:
        raise SplitError("sample size must be non-negative")
    if n >= len(ids):
        if n > len(ids):
            log.warning("requested %d examples but only %d are available; using all", n, len(ids))
        return ids
    return sorted(random.Random(f"subsample|{seed}").sample(ids, n))

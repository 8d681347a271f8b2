"""Dataset statistics: counts, property rankings, overlaps, lengths, coverage."""

from __future__ import annotations

import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .slotfill import split_triple_id

_TYPE_TOKEN = re.compile(r"\w+")


def _get(ex, name):
    return ex[name] if isinstance(ex, Mapping) else getattr(ex, name)


def _half_up(x: float) -> int:
    return math.floor(x + 0.5)


def count_table(examples: Iterable) -> dict[str, dict[str, int]]:
    """Per language: Pos/Neg distinct contexts, Pos*/Neg* templated examples."""
    pos: dict[str, set] = defaultdict(set)
    neg: dict[str, set] = defaultdict(set)
    pos_star: Counter = Counter()
    neg_star: Counter = Counter()
    for ex in examples:
        lang = _get(ex, "lang")
        if _get(ex, "is_negative"):
            neg[lang].add((_get(ex, "triple_id"), _get(ex, "partner_triple_id")))
            neg_star[lang] += 1
        else:
            pos[lang].add(_get(ex, "triple_id"))
            pos_star[lang] += 1
    langs = sorted(set(pos) | set(neg))
    return {lang: {"Pos": len(pos[lang]), "Neg": len(neg[lang]),
                   "Pos*": pos_star[lang], "Neg*": neg_star[lang]} for lang in langs}


def top_properties(examples: Iterable, n: int = 10) -> dict[str, list[tuple[str, int]]]:
    """Positive triples per property, descending, ties by pid."""
    triples: dict[str, set] = defaultdict(set)
    for ex in examples:
        if not _get(ex, "is_negative"):
            triples[_get(ex, "lang")].add(_get(ex, "triple_id"))
    out = {}
    for lang in sorted(triples):
        counts = Counter(split_triple_id(t)[1] for t in triples[lang])
        out[lang] = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:n]
    return out


@dataclass
class OverlapMatrix:
    languages: list[str]
    matrix: list[list[int]]
    pid: str | None = None

    def as_dict(self) -> dict:
        return {"languages": self.languages, "pid": self.pid, "matrix": self.matrix}

    def to_gnuplot(self) -> str:
        """Whitespace matrix with a header row/column, for ``plot ... matrix rowheaders columnheaders``."""
        lines = ["lang " + " ".join(self.languages)]
        for lang, row in zip(self.languages, self.matrix):
            lines.append(lang + " " + " ".join(str(v) for v in row))
        return "\n".join(lines) + "\n"


def triple_sets(examples: Iterable, pid: str | None = None) -> dict[str, set[str]]:
    sets: dict[str, set[str]] = defaultdict(set)
    for ex in examples:
        tid = _get(ex, "triple_id")
        if pid is None or split_triple_id(tid)[1] == pid:
            sets[_get(ex, "lang")].add(tid)
    return dict(sets)


def overlap_matrix(datasets: Mapping[str, Iterable[str]], pid: str | None = None,
                   languages: Sequence[str] | None = None) -> OverlapMatrix:
    """Entry (i, j) = number of triple ids shared by languages i and j.

    ``datasets`` maps language -> triple ids (use :func:`triple_sets` to get
    them from examples).
    """
    langs = list(languages) if languages is not None else sorted(datasets)
    sets = {}
    for lang in langs:
        ids = set(datasets.get(lang, ()))
        if pid is not None:
            ids = {t for t in ids if split_triple_id(t)[1] == pid}
        sets[lang] = ids
    matrix = [[len(sets[a] & sets[b]) for b in langs] for a in langs]
    return OverlapMatrix(langs, matrix, pid)


def context_length_stats(examples: Iterable, splits: Mapping[str, Mapping[str, Iterable[str]]]
                         ) -> dict[str, dict[str, int | None]]:
    """Mean whitespace token count of contexts per language and split, rounded
    half-up to an integer; an empty split is reported as None."""
    lengths = {_get(ex, "id"): len(_get(ex, "context").split()) for ex in examples}
    out = {}
    for lang in sorted(splits):
        out[lang] = {}
        for name, ids in splits[lang].items():
            vals = [lengths[i] for i in ids if i in lengths]
            out[lang][name] = _half_up(sum(vals) / len(vals)) if vals else None
    return out


def word_types(text: str) -> set[str]:
    return set(_TYPE_TOKEN.findall(text.lower()))


def load_vocab(path) -> set[str]:
    with open(path, encoding="utf-8") as fh:
        return {line.strip() for line in fh if line.strip()}


def coverage(types: set[str], vocab: set[str]) -> int | None:
    if not types:
        return None
    return _half_up(100 * len(types & vocab) / len(types))


def vocab_coverage(examples: Iterable, vocab: Iterable[str]) -> dict[str, dict[str, int | None]]:
    """Type-level coverage (%) of context and question vocabularies per language.

    Types are lowercased word tokens (whitespace and punctuation split); the
    vocabulary is compared lowercased as well.
    """
    vocab = {v.lower() for v in vocab}
    ctx: dict[str, set] = defaultdict(set)
    qst: dict[str, set] = defaultdict(set)
    for ex in examples:
        lang = _get(ex, "lang")
        ctx[lang] |= word_types(_get(ex, "context"))
        qst[lang] |= word_types(_get(ex, "question"))
    return {lang: {"context": coverage(ctx[lang], vocab), "question": coverage(qst[lang], vocab)}
            for lang in sorted(set(ctx) | set(qst))}

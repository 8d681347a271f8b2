"""Distant supervision: positive contexts from co-occurrence, negatives by swapping.

For every aligned page and every renderable statement of its entity, the first
sentence mentioning both the entity and the statement's value becomes the
positive context of the triple. Negatives reuse the sentence of another
positive whose value has the same type, provided none of the triple's own
answers occur in it.
"""

from __future__ import annotations

import logging
import random
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

from .denormalize import DenormalizedTuple, Locale, PropertyCatalog, denormalize_entity, value_kind
from .evalscore import normalize_answer
from .ingestion import DocumentView, EntityRef, KBEntity, Value
from .jsonl import stable_fraction
from .segment import Sentence, segment_sentences

log = logging.getLogger(__name__)

INSTANCE_OF = "P31"
UNTYPED = "untyped"


def triple_id(entity1_qid: str, pid: str, value_key: str) -> str:
    return "|".join((entity1_qid, pid, value_key))


def split_triple_id(tid: str) -> tuple[str, str, str]:
    e1, pid, key = tid.split("|", 2)
    return e1, pid, key


@dataclass
class Triple:
    id: str
    entity1_qid: str
    pid: str
    value_key: str
    answer_texts: dict[str, list[str]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.id, "entity1_qid": self.entity1_qid, "pid": self.pid,
                "value_key": self.value_key,
                "answer_texts": {k: self.answer_texts[k] for k in sorted(self.answer_texts)}}

    @classmethod
    def from_json(cls, obj: dict) -> "Triple":
        return cls(obj["id"], obj["entity1_qid"], obj["pid"], obj["value_key"],
                   {k: list(v) for k, v in obj.get("answer_texts", {}).items()})


@dataclass(frozen=True)
class PositiveContext:
    triple_id: str
    language: str
    sentence: str
    answer_strings: tuple[str, ...]
    entity1_surface: str
    type_key: str = UNTYPED
    # surfaces of every value of (entity1, pid); a negative must avoid all of them
    value_surfaces: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"triple_id": self.triple_id, "language": self.language, "sentence": self.sentence,
                "answers": list(self.answer_strings)}


@dataclass(frozen=True)
class NegativeContext:
    triple_id: str
    language: str
    sentence: str
    partner_triple_id: str

    def to_json(self) -> dict:
        return {"triple_id": self.triple_id, "language": self.language, "sentence": self.sentence,
                "answers": None, "partner_triple_id": self.partner_triple_id}


@dataclass(frozen=True)
class SlotTuple:
    """A denormalized statement with everything matching needs."""

    pid: str
    value_key: str
    value_text: str
    kind: str
    type_key: str
    surfaces: tuple[str, ...]


@dataclass
class EntityDocument:
    """An aligned page plus its entity's surfaces and slot tuples, self-contained."""

    qid: str
    language: str
    title: str
    label: str
    surfaces: tuple[str, ...]
    text: str
    tuples: list[SlotTuple] = field(default_factory=list)
    gender: str = "unknown"

    def to_json(self) -> dict:
        return {
            "qid": self.qid, "language": self.language, "title": self.title, "label": self.label,
            "gender": self.gender, "surfaces": list(self.surfaces), "text": self.text,
            "tuples": [{"pid": t.pid, "value_key": t.value_key, "value_text": t.value_text,
                        "kind": t.kind, "type_key": t.type_key, "surfaces": list(t.surfaces)}
                       for t in self.tuples],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "EntityDocument":
        tuples = [SlotTuple(t["pid"], t["value_key"], t["value_text"], t["kind"], t["type_key"],
                            tuple(t["surfaces"])) for t in obj.get("tuples", [])]
        return cls(obj["qid"], obj["language"], obj.get("title", ""), obj["label"],
                   tuple(obj["surfaces"]), obj["text"], tuples, obj.get("gender", "unknown"))


class JointMatch(NamedTuple):
    sentence: Sentence
    entity1_surface: str
    entity2_surfaces: list[str]


def surfaces_for(qid: str, language: str, kb: Mapping[str, KBEntity]) -> list[str]:
    """Label then aliases, deduplicated, longest first (stable among equal lengths)."""
    ent = kb.get(qid)
    if ent is None or not ent.label(language):
        return []
    ordered = list(dict.fromkeys([ent.labels[language], *ent.aliases.get(language, [])]))
    return sorted(ordered, key=len, reverse=True)


def entity2_type(value: Value, kb: Mapping[str, KBEntity]) -> str:
    """Type key used to pair distractors: the first instance-of class of an entity
    value, ``untyped`` when it has none, ``literal:<kind>`` for literals."""
    if isinstance(value, EntityRef):
        target = kb.get(value.qid)
        if target is not None:
            for st in target.statements:
                if st.pid == INSTANCE_OF and isinstance(st.value, EntityRef):
                    return st.value.qid
        return UNTYPED
    return f"literal:{value_kind(value)}"


@lru_cache(maxsize=65536)
def _surface_pattern(surface: str) -> re.Pattern:
    return re.compile(r"(?<!\w)" + re.escape(surface) + r"(?!\w)", re.IGNORECASE)


def find_mentions(sentence: str, surfaces: Iterable[str]) -> list[tuple[int, int]]:
    """Non-overlapping word-boundary matches; longer surfaces claim text first."""
    taken: list[tuple[int, int]] = []
    for surface in sorted(dict.fromkeys(surfaces), key=len, reverse=True):
        if not surface:
            continue
        for m in _surface_pattern(surface).finditer(sentence):
            if all(m.end() <= a or m.start() >= b for a, b in taken):
                taken.append((m.start(), m.end()))
    return sorted(taken)


def find_first_joint_sentence(sentences: list[Sentence], e1_surfaces, e2_surfaces) -> JointMatch | None:
    """Earliest sentence mentioning both entities, or None.

    Matches are case-insensitive at word boundaries. The returned surfaces are
    the spans as written in the sentence.
    """
    if not e1_surfaces or not e2_surfaces:
        return None
    for sent in sentences:
        e2 = find_mentions(sent.text, e2_surfaces)
        if not e2:
            continue
        e1 = find_mentions(sent.text, e1_surfaces)
        if not e1:
            continue
        a, b = max(e1, key=lambda span: (span[1] - span[0], -span[0]))
        found = list(dict.fromkeys(sent.text[s:e] for s, e in e2))
        return JointMatch(sent, sent.text[a:b], found)
    return None


def annotate_view(view: DocumentView, kb: Mapping[str, KBEntity], catalog: PropertyCatalog,
                  locales: Mapping[str, Locale] | None = None,
                  skips: Counter | None = None) -> EntityDocument:
    lang = view.language
    tuples = []
    for tup in denormalize_entity(view.entity, lang, kb, catalog, locales, skips):
        tuples.append(_slot_tuple(tup, lang, kb))
    return EntityDocument(view.qid, lang, view.page.title, view.entity.labels[lang],
                          tuple(surfaces_for(view.qid, lang, kb)), view.page.text, tuples)


def _slot_tuple(tup: DenormalizedTuple, language: str, kb: Mapping[str, KBEntity]) -> SlotTuple:
    if isinstance(tup.value, EntityRef):
        surfaces = tuple(surfaces_for(tup.value.qid, language, kb))
    else:
        surfaces = (tup.value_text,)
    return SlotTuple(tup.pid, tup.value_key, tup.value_text, value_kind(tup.value),
                     entity2_type(tup.value, kb), surfaces)


@dataclass
class SlotfillStats:
    positives: int = 0
    misses: int = 0
    negatives: int = 0
    no_partner: int = 0
    no_valid_partner: int = 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.__dict__)


def build_positives(documents: Iterable[EntityDocument], stats: SlotfillStats | None = None,
                    abbreviations=None) -> list[tuple[Triple, PositiveContext]]:
    """One positive per (document, tuple) with a joint sentence, sorted by triple id."""
    stats = stats if stats is not None else SlotfillStats()
    out = []
    for doc in documents:
        if not doc.tuples:
            continue
        sentences = segment_sentences(doc.text, doc.language, abbreviations)
        by_pid: dict[str, list[str]] = defaultdict(list)
        for t in doc.tuples:
            by_pid[t.pid].extend(t.surfaces)
        for t in doc.tuples:
            match = find_first_joint_sentence(sentences, doc.surfaces, t.surfaces)
            if match is None:
                stats.misses += 1
                continue
            siblings = tuple(dict.fromkeys(by_pid[t.pid]))
            spans = find_mentions(match.sentence.text, siblings)
            answers = tuple(dict.fromkeys(match.sentence.text[a:b] for a, b in spans))
            tid = triple_id(doc.qid, t.pid, t.value_key)
            triple = Triple(tid, doc.qid, t.pid, t.value_key, {doc.language: list(answers)})
            ctx = PositiveContext(tid, doc.language, match.sentence.text, answers,
                                  match.entity1_surface, t.type_key, siblings)
            out.append((triple, ctx))
            stats.positives += 1
    out.sort(key=lambda pair: (pair[1].triple_id, pair[1].language))
    return out


def merge_triples(triples: Iterable[Triple]) -> list[Triple]:
    """Fold per-language Triple records sharing an id into one record each."""
    merged: dict[str, Triple] = {}
    for t in triples:
        cur = merged.setdefault(t.id, Triple(t.id, t.entity1_qid, t.pid, t.value_key, {}))
        for lang, answers in t.answer_texts.items():
            cur.answer_texts[lang] = list(dict.fromkeys(cur.answer_texts.get(lang, []) + list(answers)))
    return [merged[k] for k in sorted(merged)]


def contains_answer(sentence: str, answer: str) -> bool:
    """True when every normalized token of ``answer`` occurs in ``sentence`` (as a bag)."""
    need = normalize_answer(answer)
    if not need:
        return False
    have = normalize_answer(sentence)
    return all(have[tok] >= n for tok, n in need.items())


def negative_quota(ratio: float, tid: str, language: str) -> int:
    """Negatives wanted for one positive; depends on the triple, never on the seed."""
    whole = int(ratio)
    return whole + (1 if stable_fraction("negative", tid, language) < ratio - whole else 0)


def build_negatives(positives: Iterable[PositiveContext], ratio: float = 0.2, seed: int = 0,
                    stats: SlotfillStats | None = None) -> list[NegativeContext]:
    """Borrow partner sentences within each (language, type) group.

    Partners are tried in a seeded shuffle; a partner sentence is rejected when
    it contains any answer of the positive. Which positives receive negatives,
    and how many, does not depend on the seed; only the partners do.
    """
    if ratio < 0:
        raise ValueError("negative ratio must be non-negative")
    stats = stats if stats is not None else SlotfillStats()
    groups: dict[tuple[str, str], list[PositiveContext]] = defaultdict(list)
    for p in positives:
        groups[(p.language, p.type_key)].append(p)

    out = []
    for key in sorted(groups):
        group = sorted(groups[key], key=lambda p: p.triple_id)
        for p in group:
            quota = negative_quota(ratio, p.triple_id, p.language)
            if quota == 0:
                continue
            candidates = [q for q in group if q.triple_id != p.triple_id]
            if not candidates:
                stats.no_partner += 1
                continue
            random.Random(f"{seed}|{p.language}|{p.triple_id}").shuffle(candidates)
            avoid = tuple(dict.fromkeys(p.answer_strings + p.value_surfaces))
            taken = 0
            for q in candidates:
                if any(contains_answer(q.sentence, a) for a in avoid):
                    continue
                out.append(NegativeContext(p.triple_id, p.language, q.sentence, q.triple_id))
                taken += 1
                if taken == quota:
                    break
            if taken == 0:
                stats.no_valid_partner += 1
            stats.negatives += taken
    out.sort(key=lambda n: (n.triple_id, n.language, n.partner_triple_id))
    return out

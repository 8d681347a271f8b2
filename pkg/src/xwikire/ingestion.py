"""Reading the KB dump and per-language page corpora, and aligning the two.

KB records (one JSON object per line)::

    {"qid": "Q3783",
     "labels": {"en": "Amazon", ...},
     "aliases": {"en": ["Amazon River"], ...},
     "statements": [
        {"pid": "P17",   "type": "entity",   "value": "Q155"},
        {"pid": "P569",  "type": "time",     "value": "1994-05-25"},
        {"pid": "P2046", "type": "quantity", "value": {"amount": "105.4", "unit": "Q712226"}},
        {"pid": "P1449", "type": "text",     "value": "Caput Mundi"}]}

Time values are ISO strings whose granularity sets the precision:
``"1994"`` is year precision, ``"1994-05"`` month, ``"1994-05-25"`` day.

Page records: ``{"qid", "language", "title", "text"}``.
"""

from __future__ import annotations

import datetime
import logging
import math
import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Iterable, Iterator, Mapping, Union

from .jsonl import iter_jsonl

log = logging.getLogger(__name__)

LANGUAGES = ("en", "de", "es", "fr", "it")
PRECISIONS = ("year", "month", "day")


class MalformedRecord(ValueError):
    pass


@dataclass(frozen=True)
class EntityRef:
    qid: str


@dataclass(frozen=True)
class Time:
    year: int
    month: int | None = None
    day: int | None = None
    precision: str = "day"

    def __post_init__(self):
        if self.precision not in PRECISIONS:
            raise ValueError("unsupported-precision")
        if self.precision in ("month", "day") and not self.month:
            raise ValueError(f"{self.precision} precision needs a month")
        if self.precision == "day" and not self.day:
            raise ValueError("day precision needs a day")
        # proleptic Gregorian validity
        datetime.date(self.year, self.month or 1, self.day or 1)

    @classmethod
    def parse(cls, text: str) -> "Time":
        m = re.fullmatch(r"(\d{1,4})(?:-(\d{2})(?:-(\d{2}))?)?", text.strip())
        if not m:
            raise ValueError(f"bad time value {text!r}")
        year, month, day = m.groups()
        if day is not None:
            return cls(int(year), int(month), int(day), "day")
        if month is not None:
            return cls(int(year), int(month), None, "month")
        return cls(int(year), None, None, "year")

    def iso(self) -> str:
        if self.precision == "year":
            return f"{self.year:04d}"
        if self.precision == "month":
            return f"{self.year:04d}-{self.month:02d}"
        return f"{self.year:04d}-{self.month:02d}-{self.day:02d}"


@dataclass(frozen=True)
class Quantity:
    amount: Decimal
    unit: str | None = None

    def __post_init__(self):
        if not self.amount.is_finite():
            raise ValueError("quantity must be finite")


@dataclass(frozen=True)
class Text:
    text: str


Value = Union[EntityRef, Time, Quantity, Text]


@dataclass(frozen=True)
class Statement:
    pid: str
    value: Value


@dataclass
class KBEntity:
    qid: str
    labels: dict[str, str] = field(default_factory=dict)
    aliases: dict[str, list[str]] = field(default_factory=dict)
    statements: list[Statement] = field(default_factory=list)

    def label(self, language: str) -> str | None:
        return self.labels.get(language) or None


@dataclass(frozen=True)
class PageDoc:
    qid: str
    language: str
    title: str
    text: str


@dataclass(frozen=True)
class DocumentView:
    qid: str
    language: str
    page: PageDoc
    entity: KBEntity


@dataclass
class LoadStats:
    """Counters filled in by the streaming readers and by :func:`align`."""

    loaded: int = 0
    skipped: int = 0
    dropped_empty: int = 0
    kb_unmatched: int = 0
    corpus_unmatched: int = 0
    unlabeled: int = 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.__dict__)


def parse_value(kind: str, raw) -> Value:
    if kind == "entity":
        if not isinstance(raw, str) or not raw:
            raise MalformedRecord("entity value must be a qid string")
        return EntityRef(raw)
    if kind == "time":
        if not isinstance(raw, str):
            raise MalformedRecord("time value must be an ISO date string")
        return Time.parse(raw)
    if kind == "quantity":
        if isinstance(raw, dict):
            amount, unit = raw.get("amount"), raw.get("unit")
        else:
            amount, unit = raw, None
        if isinstance(amount, bool) or amount is None:
            raise MalformedRecord("quantity needs an amount")
        if isinstance(amount, float) and not math.isfinite(amount):
            raise MalformedRecord("quantity must be finite")
        try:
            dec = Decimal(str(amount))
        except InvalidOperation as exc:
            raise MalformedRecord(f"bad quantity {amount!r}") from exc
        return Quantity(dec, unit or None)
    if kind == "text":
        if not isinstance(raw, str) or not raw:
            raise MalformedRecord("text value must be a non-empty string")
        return Text(raw)
    raise MalformedRecord(f"unknown value type {kind!r}")


def parse_entity(obj, languages: Iterable[str] = LANGUAGES) -> KBEntity:
    langs = set(languages)
    if not isinstance(obj, dict):
        raise MalformedRecord("record is not an object")
    qid = obj.get("qid")
    if not isinstance(qid, str) or not qid:
        raise MalformedRecord("missing qid")
    labels_raw = obj.get("labels") or {}
    aliases_raw = obj.get("aliases") or {}
    if not isinstance(labels_raw, dict) or not isinstance(aliases_raw, dict):
        raise MalformedRecord("labels/aliases must be objects")
    labels = {k: v for k, v in labels_raw.items() if k in langs and isinstance(v, str) and v}
    aliases = {}
    for k, v in aliases_raw.items():
        if k not in langs:
            continue
        if not isinstance(v, list):
            raise MalformedRecord("aliases must map to arrays")
        aliases[k] = [a for a in v if isinstance(a, str) and a]
    statements = []
    for st in obj.get("statements") or []:
        if not isinstance(st, dict) or not st.get("pid"):
            raise MalformedRecord("statement without pid")
        try:
            value = parse_value(st.get("type"), st.get("value"))
        except ValueError as exc:
            raise MalformedRecord(str(exc)) from exc
        statements.append(Statement(st["pid"], value))
    return KBEntity(qid, labels, aliases, statements)


def load_kb(path, languages: Iterable[str] = LANGUAGES, stats: LoadStats | None = None) -> Iterator[KBEntity]:
    """Stream entities from a JSON-lines KB dump in file order.

    Malformed lines (bad JSON, missing qid, unparseable statements, repeated
    qid) are logged with their line number and counted in ``stats.skipped``.
    """
    stats = stats if stats is not None else LoadStats()
    languages = tuple(languages)
    seen: set[str] = set()
    for lineno, obj in iter_jsonl(path):
        try:
            if obj is None:
                raise MalformedRecord("invalid JSON")
            ent = parse_entity(obj, languages)
            if ent.qid in seen:
                raise MalformedRecord(f"duplicate qid {ent.qid}")
        except MalformedRecord as exc:
            stats.skipped += 1
            log.warning("%s:%d: skipping KB record: %s", path, lineno, exc)
            continue
        seen.add(ent.qid)
        stats.loaded += 1
        yield ent


def load_corpus(path, language: str, stats: LoadStats | None = None) -> Iterator[PageDoc]:
    """Stream pages for one language; empty pages are dropped and counted."""
    stats = stats if stats is not None else LoadStats()
    seen: set[str] = set()
    for lineno, obj in iter_jsonl(path):
        problem = None
        if not isinstance(obj, dict):
            problem = "invalid JSON" if obj is None else "record is not an object"
        elif not isinstance(obj.get("qid"), str) or not obj["qid"]:
            problem = "missing qid"
        elif obj.get("language", language) != language:
            problem = f"language {obj.get('language')!r} in a {language} corpus"
        elif not isinstance(obj.get("text", ""), str):
            problem = "text is not a string"
        elif obj["qid"] in seen:
            problem = f"duplicate page for {obj['qid']}"
        if problem:
            stats.skipped += 1
            log.warning("%s:%d: skipping page: %s", path, lineno, problem)
            continue
        text = obj.get("text") or ""
        if not text.strip():
            stats.dropped_empty += 1
            continue
        seen.add(obj["qid"])
        stats.loaded += 1
        yield PageDoc(obj["qid"], language, obj.get("title") or "", text)


def align(kb: Mapping[str, KBEntity] | Iterable[KBEntity], corpus: Iterable[PageDoc],
          language: str, stats: LoadStats | None = None) -> list[DocumentView]:
    """Join KB entities with the pages of one language on the page's qid.

    Entities without a label in ``language`` cannot be slot-filled and are not
    aligned; a page whose entity is unlabeled counts under ``stats.unlabeled``.
    Views come back sorted by qid.
    """
    stats = stats if stats is not None else LoadStats()
    if not isinstance(kb, Mapping):
        kb = {e.qid: e for e in kb}
    pages = {p.qid: p for p in corpus if p.language == language}
    labeled = {q for q, e in kb.items() if e.label(language)}
    views = []
    for qid in sorted(pages):
        if qid in labeled:
            views.append(DocumentView(qid, language, pages[qid], kb[qid]))
        elif qid in kb:
            stats.unlabeled += 1
        else:
            stats.corpus_unmatched += 1
    stats.kb_unmatched += len(labeled - pages.keys())
    return views

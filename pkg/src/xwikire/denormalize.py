"""Turning statements into per-language (property label, value text) tuples."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from decimal import Decimal
from functools import lru_cache
from pathlib import Path
from typing import Mapping

from .ingestion import EntityRef, KBEntity, Quantity, Statement, Text, Time, Value
from .jsonl import read_tsv


class DenormalizationSkip(Exception):
    """Raised when a statement cannot be rendered in a language.

    ``reason`` is one of ``unknown-property`` or ``unlabeled-value``.
    """

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason


@dataclass(frozen=True)
class DenormalizedTuple:
    pid: str
    property_label: str
    value_text: str
    value_key: str
    value: Value


class PropertyCatalog:
    """pid -> language -> property label."""

    def __init__(self, labels: Mapping[str, Mapping[str, str]] | None = None):
        self.labels: dict[str, dict[str, str]] = {p: dict(v) for p, v in (labels or {}).items()}

    @classmethod
    def from_tsv(cls, path) -> "PropertyCatalog":
        labels: dict[str, dict[str, str]] = defaultdict(dict)
        for lineno, cols in read_tsv(path):
            if len(cols) != 3 or not all(cols):
                raise ValueError(f"{path}:{lineno}: expected pid<TAB>lang<TAB>label")
            pid, lang, label = cols
            labels[pid][lang] = label
        return cls(labels)

    def __contains__(self, pid: str) -> bool:
        return pid in self.labels

    def label(self, pid: str, language: str) -> str | None:
        return self.labels.get(pid, {}).get(language)

    def pids(self) -> list[str]:
        return sorted(self.labels)


class Locale:
    """Month names, date layouts and decimal separators for one language."""

    def __init__(self, language: str, entries: Mapping[str, str]):
        self.language = language
        missing = [k for k in ("day_format", "month_format", "decimal_sep") if k not in entries]
        missing += [f"month{i}" for i in range(1, 13) if f"month{i}" not in entries]
        if missing:
            raise ValueError(f"locale {language} lacks {', '.join(missing)}")
        self.entries = dict(entries)

    def month(self, m: int) -> str:
        return self.entries[f"month{m}"]

    def day(self, d: int) -> str:
        if d == 1 and "day1" in self.entries:
            return self.entries["day1"]
        return str(d)


def load_locales(path=None) -> dict[str, Locale]:
    table: dict[str, dict[str, str]] = defaultdict(dict)
    for lineno, cols in read_tsv(path, package_file="locale.tsv"):
        if len(cols) != 3:
            raise ValueError(f"locale table line {lineno}: expected lang<TAB>key<TAB>value")
        lang, key, value = cols
        table[lang][key] = value
    return {lang: Locale(lang, entries) for lang, entries in table.items()}


@lru_cache(maxsize=None)
def _default_locales() -> dict[str, Locale]:
    return load_locales()


def get_locale(language: str, locales: Mapping[str, Locale] | None = None) -> Locale:
    locales = locales if locales is not None else _default_locales()
    try:
        return locales[language]
    except KeyError:
        raise ValueError(f"no locale table for language {language!r}") from None


def render_time(t: Time, language: str, locales: Mapping[str, Locale] | None = None) -> str:
    """Natural-language date, e.g. ``25 May 1994`` (en) or ``25. Mai 1994`` (de)."""
    loc = get_locale(language, locales)
    if t.precision == "year":
        return str(t.year)
    if t.precision == "month":
        return loc.entries["month_format"].format(month=loc.month(t.month), year=t.year)
    if t.precision == "day":
        return loc.entries["day_format"].format(day=loc.day(t.day), month=loc.month(t.month), year=t.year)
    raise ValueError("unsupported-precision")


def canonical_decimal(amount: Decimal) -> str:
    # Decimal.normalize() would round to the context precision
    text = format(amount, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def render_quantity(q: Quantity, language: str, kb: Mapping[str, KBEntity],
                    locales: Mapping[str, Locale] | None = None) -> str:
    loc = get_locale(language, locales)
    number = canonical_decimal(q.amount).replace(".", loc.entries["decimal_sep"])
    unit = kb.get(q.unit) if q.unit else None
    unit_label = unit.label(language) if unit is not None else None
    return f"{number} {unit_label}" if unit_label else number


def value_key(value: Value) -> str:
    """Language-independent identity of a value."""
    if isinstance(value, EntityRef):
        return value.qid
    if isinstance(value, Time):
        return value.iso()
    if isinstance(value, Quantity):
        key = canonical_decimal(value.amount)
        return f"{key}@{value.unit}" if value.unit else key
    if isinstance(value, Text):
        return value.text
    raise TypeError(f"not a value: {value!r}")


def value_kind(value: Value) -> str:
    return {EntityRef: "entity", Time: "time", Quantity: "quantity", Text: "text"}[type(value)]


def render_value(value: Value, language: str, kb: Mapping[str, KBEntity],
                 locales: Mapping[str, Locale] | None = None) -> str:
    if isinstance(value, EntityRef):
        target = kb.get(value.qid)
        label = target.label(language) if target is not None else None
        if not label:
            raise DenormalizationSkip("unlabeled-value", value.qid)
        return label
    if isinstance(value, Time):
        return render_time(value, language, locales)
    if isinstance(value, Quantity):
        return render_quantity(value, language, kb, locales)
    return value.text


def denormalize_statement(stmt: Statement, language: str, kb: Mapping[str, KBEntity],
                          catalog: PropertyCatalog,
                          locales: Mapping[str, Locale] | None = None) -> DenormalizedTuple:
    prop = catalog.label(stmt.pid, language)
    if prop is None:
        raise DenormalizationSkip("unknown-property", stmt.pid)
    text = render_value(stmt.value, language, kb, locales)
    return DenormalizedTuple(stmt.pid, prop, text, value_key(stmt.value), stmt.value)


def denormalize_entity(entity: KBEntity, language: str, kb: Mapping[str, KBEntity],
                       catalog: PropertyCatalog, locales: Mapping[str, Locale] | None = None,
                       skips: Counter | None = None) -> list[DenormalizedTuple]:
    """All renderable statements of ``entity``; skip reasons are tallied in ``skips``."""
    out = []
    seen = set()
    for stmt in entity.statements:
        try:
            tup = denormalize_statement(stmt, language, kb, catalog, locales)
        except DenormalizationSkip as skip:
            if skips is not None:
                skips[skip.reason] += 1
            continue
        if (tup.pid, tup.value_key) in seen:
            continue
        seen.add((tup.pid, tup.value_key))
        out.append(tup)
    return out


def load_catalog(path: str | Path) -> PropertyCatalog:
    return PropertyCatalog.from_tsv(path)

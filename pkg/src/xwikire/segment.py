"""Rule-based sentence splitting.

A boundary is a run of ``.``, ``!`` or ``?`` (plus closing quotes or
brackets) followed by whitespace and then an uppercase letter or digit,
optionally behind opening punctuation such as ``¿`` or ``«``. A period does
not end a sentence when the word it closes is a listed abbreviation for the
language, a single-letter initial, or (for languages marked ``<ORD>``) a
one- or two-digit ordinal like the German ``25.``.

Behaviour is pinned by golden tests; dataset builds depend on it.
"""

from __future__ import annotations

import re
from collections import defaultdict
from functools import lru_cache
from typing import NamedTuple

from .jsonl import read_tsv

_BOUNDARY = re.compile(r"[.!?]+[\"'”’»)\]]*(?P<gap>\s+)")
_OPENERS = "¿¡\"'“‘«([„"


class Sentence(NamedTuple):
    text: str
    start: int
    end: int


class Abbreviations(NamedTuple):
    tokens: frozenset
    ordinals: bool


def load_abbreviations(path=None) -> dict[str, Abbreviations]:
    tokens: dict[str, set[str]] = defaultdict(set)
    ordinals: set[str] = set()
    for _, cols in read_tsv(path, package_file="abbreviations.tsv"):
        lang, tok = cols[0], cols[1]
        if tok == "<ORD>":
            ordinals.add(lang)
        else:
            tokens[lang].add(tok.lower())
    return {lang: Abbreviations(frozenset(tokens.get(lang, ())), lang in ordinals)
            for lang in set(tokens) | ordinals}


@lru_cache(maxsize=None)
def _default_abbreviations() -> dict[str, Abbreviations]:
    return load_abbreviations()


def _word_before(text: str, end: int) -> str:
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start:end].lstrip(_OPENERS)


def _suppressed(text: str, punct_start: int, abbr: Abbreviations) -> bool:
    if text[punct_start] != ".":
        return False
    word = _word_before(text, punct_start + 1)
    if word.lower() in abbr.tokens:
        return True
    if len(word) == 2 and word[0].isupper():
        return True
    return abbr.ordinals and re.fullmatch(r"\d{1,2}\.", word) is not None


def segment_sentences(text: str, language: str, abbreviations: dict[str, Abbreviations] | None = None) -> list[Sentence]:
    abbrs = abbreviations if abbreviations is not None else _default_abbreviations()
    abbr = abbrs.get(language, Abbreviations(frozenset(), False))
    cuts = []
    for m in _BOUNDARY.finditer(text):
        nxt = m.end()
        while nxt < len(text) and text[nxt] in _OPENERS:
            nxt += 1
            # French spacing: « Bonjour
            while nxt < len(text) and text[nxt].isspace():
                nxt += 1
        if nxt >= len(text) or not (text[nxt].isupper() or text[nxt].isdigit()):
            continue
        if _suppressed(text, m.start(), abbr):
            continue
        cuts.append((m.start("gap"), m.end("gap")))

    sentences = []
    pos = 0
    for gap_start, gap_end in cuts + [(len(text), len(text))]:
        chunk = text[pos:gap_start]
        stripped = chunk.strip()
        if stripped:
            start = pos + (len(chunk) - len(chunk.lstrip()))
            sentences.append(Sentence(stripped, start, start + len(stripped)))
        pos = gap_end
    return sentences

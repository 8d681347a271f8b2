"""Question templates and their instantiation with article/gender agreement.

Templates are TSV rows ``template_id<TAB>pid<TAB>lang<TAB>pattern``. A pattern
holds ``{x}`` exactly once (the entity), and optionally ``{art}`` (definite
article agreeing with the entity) and ``{fill}`` (a gender-dependent filler
word, looked up per property).
"""

from __future__ import annotations

import logging
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Mapping

from .ingestion import EntityRef, KBEntity, PageDoc
from .jsonl import read_tsv
from .slotfill import NegativeContext, PositiveContext, Triple, split_triple_id

log = logging.getLogger(__name__)

PLACEHOLDER = re.compile(r"\{([^{}]*)\}")
SLOTS = ("x", "art", "fill")
MAX_AGREEMENT_SLOTS = 2

SEX_OR_GENDER = "P21"
# male, female, trans man, trans woman
_P21_GENDER = {"Q6581097": "masculine", "Q6581072": "feminine",
               "Q2449503": "masculine", "Q1052281": "feminine"}


class GenderClass(str, Enum):
    MASCULINE = "masculine"
    FEMININE = "feminine"
    NEUTER = "neuter"
    UNKNOWN = "unknown"


class TemplateError(ValueError):
    pass


class AgreementGap(LookupError):
    def __init__(self, detail: str):
        super().__init__(f"agreement-gap: {detail}")


@dataclass(frozen=True)
class Template:
    template_id: str
    pid: str
    language: str
    pattern: str


@dataclass(frozen=True)
class RCExample:
    id: str
    triple_id: str
    template_id: str
    lang: str
    question: str
    context: str
    answers: tuple[str, ...]
    is_negative: bool
    partner_triple_id: str | None = None
    gender_default: bool = False

    @property
    def pid(self) -> str:
        return split_triple_id(self.triple_id)[1]

    @property
    def entity1_qid(self) -> str:
        return split_triple_id(self.triple_id)[0]

    def to_json(self) -> dict:
        obj = {"id": self.id, "triple_id": self.triple_id, "template_id": self.template_id,
               "lang": self.lang, "question": self.question, "context": self.context,
               "answers": list(self.answers), "is_negative": self.is_negative}
        if self.partner_triple_id is not None:
            obj["partner_triple_id"] = self.partner_triple_id
        obj["gender_default"] = self.gender_default
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "RCExample":
        return cls(obj["id"], obj["triple_id"], obj["template_id"], obj["lang"], obj["question"],
                   obj["context"], tuple(obj.get("answers") or ()), bool(obj["is_negative"]),
                   obj.get("partner_triple_id"), bool(obj.get("gender_default", False)))


def validate_pattern(pattern: str) -> None:
    names = PLACEHOLDER.findall(pattern)
    unknown = [n for n in names if n not in SLOTS]
    if unknown:
        raise TemplateError(f"unknown placeholder {{{unknown[0]}}}")
    counts = Counter(names)
    if counts["x"] != 1:
        raise TemplateError("pattern must contain {x} exactly once")
    if counts["art"] > MAX_AGREEMENT_SLOTS or counts["fill"] > MAX_AGREEMENT_SLOTS:
        raise TemplateError("too many agreement placeholders")
    if "{" in PLACEHOLDER.sub("", pattern) or "}" in PLACEHOLDER.sub("", pattern):
        raise TemplateError("unbalanced braces")


def load_templates(path, catalog=None) -> dict[tuple[str, str], list[Template]]:
    """Templates grouped by (pid, language), each group sorted by template id.

    Invalid patterns are logged and skipped; a repeated template id is fatal.
    """
    seen: set[str] = set()
    groups: dict[tuple[str, str], list[Template]] = defaultdict(list)
    for lineno, cols in read_tsv(path):
        if len(cols) != 4:
            log.error("%s:%d: expected 4 tab-separated columns, got %d", path, lineno, len(cols))
            continue
        tid, pid, lang, pattern = cols
        if tid in seen:
            raise TemplateError(f"{path}:{lineno}: duplicate template id {tid}")
        try:
            validate_pattern(pattern)
            if catalog is not None and pid not in catalog:
                raise TemplateError(f"property {pid} is not in the property catalog")
        except TemplateError as exc:
            log.error("%s:%d: rejected template %s: %s", path, lineno, tid, exc)
            continue
        seen.add(tid)
        groups[(pid, lang)].append(Template(tid, pid, lang, pattern))
    for group in groups.values():
        group.sort(key=lambda t: t.template_id)
    return dict(groups)


def load_pronouns(path=None) -> dict[str, dict[str, str]]:
    """language -> pronoun -> gender."""
    table: dict[str, dict[str, str]] = defaultdict(dict)
    for _, cols in read_tsv(path, package_file="pronouns.tsv"):
        lang, gender, word = cols
        table[lang][word.lower()] = gender
    return dict(table)


@lru_cache(maxsize=None)
def _default_pronouns():
    return load_pronouns()


_WORD = re.compile(r"\w+")


def infer_gender(qid: str, language: str, kb: Mapping[str, KBEntity], page: PageDoc | None,
                 pronouns: Mapping[str, Mapping[str, str]] | None = None) -> GenderClass:
    """KB sex-or-gender first, then the majority pronoun on the page, else unknown."""
    ent = kb.get(qid)
    if ent is not None:
        for st in ent.statements:
            if st.pid == SEX_OR_GENDER and isinstance(st.value, EntityRef):
                g = _P21_GENDER.get(st.value.qid)
                return GenderClass(g) if g else GenderClass.UNKNOWN
    if page is None:
        return GenderClass.UNKNOWN
    table = (pronouns if pronouns is not None else _default_pronouns()).get(language, {})
    counts = Counter(table[w] for w in _WORD.findall(page.text.lower()) if w in table)
    ranked = counts.most_common()
    if not ranked or (len(ranked) > 1 and ranked[0][1] == ranked[1][1]):
        return GenderClass.UNKNOWN
    return GenderClass(ranked[0][0])


class AgreementTable:
    """(language, slot, key, gender) -> form. See ``data/agreement.tsv``."""

    def __init__(self, rows: Mapping[tuple[str, str, str, str], str]):
        self.rows = dict(rows)

    @classmethod
    def load(cls, path=None) -> "AgreementTable":
        rows = {}
        for lineno, cols in read_tsv(path, package_file="agreement.tsv"):
            if len(cols) == 4:
                cols.append("")
            if len(cols) != 5:
                raise ValueError(f"agreement table line {lineno}: expected 5 columns")
            lang, slot, key, gender, form = cols
            rows[(lang, slot, key, gender)] = form
        return cls(rows)

    def lookup(self, language: str, slot: str, keys: Iterable[str], gender: GenderClass) -> str:
        g = GenderClass.MASCULINE if gender == GenderClass.UNKNOWN else GenderClass(gender)
        for key in keys:
            form = self.rows.get((language, slot, key, g.value))
            if form is not None:
                return form
        raise AgreementGap(f"{language} {{{slot}}} for {g.value}")


@lru_cache(maxsize=None)
def _default_agreement() -> AgreementTable:
    return AgreementTable.load()


_VOWELS = frozenset("aeiouàáâäèéêëìíîïòóôöùúûü")


def onset_class(surface: str) -> str:
    """Coarse onset of the entity surface used for article choice.

    ``vowel`` drives elision (French/Italian l'), ``s_impura`` the Italian
    ``lo`` (s + consonant, z, gn, ps, pn, x, y); everything else is ``*``.
    """
    s = surface.strip().lower()
    if not s:
        return "*"
    if s[0] in _VOWELS or s[0] == "h":
        return "vowel"
    if s[0] in "zxy" or s[:2] in ("gn", "ps", "pn") or (s[0] == "s" and len(s) > 1 and s[1] not in _VOWELS):
        return "s_impura"
    return "*"


_ELIDED = "\x00"
_SURFACE = "\x01"


def instantiate(template: Template, entity_surface: str, gender: GenderClass = GenderClass.UNKNOWN,
                agreement: AgreementTable | None = None) -> str:
    table = agreement if agreement is not None else _default_agreement()
    lang = template.language

    def repl(m: re.Match) -> str:
        slot = m.group(1)
        if slot == "x":
            return _SURFACE
        if slot == "art":
            form = table.lookup(lang, "art", (onset_class(entity_surface), "*"), gender)
            # an elided article (l') attaches to the following word
            return form + _ELIDED if form.endswith("'") else form
        return table.lookup(lang, "fill", (template.pid, "*"), gender)

    out = PLACEHOLDER.sub(repl, template.pattern)
    out = re.sub(_ELIDED + " *", "", out)
    out = re.sub(r" {2,}", " ", out)
    if not template.pattern[:1].isspace():
        out = out.lstrip(" ")
    # the surface goes in last so whitespace cleanup never touches it
    return out.replace(_SURFACE, entity_surface)


def example_id(tid: str, template_id: str, partner: str | None = None) -> str:
    base = f"{tid}#{template_id}"
    return f"{base}#neg:{partner}" if partner else base


@dataclass
class QuerifyStats:
    examples: int = 0
    skipped_no_template: int = 0
    skipped_no_label: int = 0
    agreement_gaps: int = 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.__dict__)


def querify_dataset(contexts: Iterable[PositiveContext | NegativeContext], triples: Mapping[str, Triple],
                    templates: Mapping[tuple[str, str], list[Template]],
                    labels: Mapping[tuple[str, str], str],
                    genders: Mapping[tuple[str, str], GenderClass | str] | None = None,
                    agreement: AgreementTable | None = None,
                    stats: QuerifyStats | None = None) -> list[RCExample]:
    """Expand every context with every template of its (property, language).

    ``labels`` and ``genders`` are keyed by (entity1 qid, language). Output is
    ordered by (triple id, template id, partner).
    """
    stats = stats if stats is not None else QuerifyStats()
    genders = genders or {}
    out = []
    for ctx in contexts:
        triple = triples.get(ctx.triple_id)
        if triple is not None:
            e1, pid = triple.entity1_qid, triple.pid
        else:
            e1, pid, _ = split_triple_id(ctx.triple_id)
        group = templates.get((pid, ctx.language), [])
        if not group:
            stats.skipped_no_template += 1
            continue
        label = labels.get((e1, ctx.language))
        if not label:
            stats.skipped_no_label += 1
            continue
        gender = GenderClass(genders.get((e1, ctx.language), GenderClass.UNKNOWN))
        negative = isinstance(ctx, NegativeContext)
        partner = ctx.partner_triple_id if negative else None
        answers = () if negative else tuple(ctx.answer_strings)
        for tpl in group:
            try:
                question = instantiate(tpl, label, gender, agreement)
            except AgreementGap as gap:
                stats.agreement_gaps += 1
                log.warning("%s: %s", tpl.template_id, gap)
                continue
            out.append(RCExample(example_id(ctx.triple_id, tpl.template_id, partner), ctx.triple_id,
                                 tpl.template_id, ctx.language, question, ctx.sentence, answers,
                                 negative, partner, gender == GenderClass.UNKNOWN))
            stats.examples += 1
    out.sort(key=lambda ex: (ex.triple_id, ex.template_id, ex.partner_triple_id or ""))
    return out

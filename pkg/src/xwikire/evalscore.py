"""Nil-aware exact-match precision / recall / F1 over answer strings.

A prediction counts as a true positive when it is non-NIL, its example has
gold answers, and its token bag equals the token bag of any gold answer.
Token bags ignore word order, punctuation and (by default) case; articles are
kept.
"""

from __future__ import annotations

import logging
import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

log = logging.getLogger(__name__)


class UnknownExampleError(KeyError):
    pass


def _strip_punct(s: str) -> str:
    return "".join(" " if unicodedata.category(ch).startswith("P") else ch for ch in s)


def normalize_answer(s: str | None, case_sensitive: bool = False) -> Counter:
    if not s:
        return Counter()
    if not case_sensitive:
        s = s.lower()
    return Counter(_strip_punct(s).split())


@dataclass(frozen=True)
class Prediction:
    example_id: str
    answer: str | None

    @property
    def is_nil(self) -> bool:
        return self.answer is None or not self.answer.strip()


@dataclass(frozen=True)
class EvalReport:
    tp: int
    predicted_nonnil: int
    gold_nonnil: int
    examples: int = 0
    missing_predictions: int = 0

    @property
    def precision_exact(self) -> Fraction:
        return Fraction(self.tp, self.predicted_nonnil) if self.predicted_nonnil else Fraction(0)

    @property
    def recall_exact(self) -> Fraction:
        return Fraction(self.tp, self.gold_nonnil) if self.gold_nonnil else Fraction(0)

    @property
    def f1_exact(self) -> Fraction:
        p, r = self.precision_exact, self.recall_exact
        return 2 * p * r / (p + r) if p + r else Fraction(0)

    @property
    def precision(self) -> float:
        return float(self.precision_exact)

    @property
    def recall(self) -> float:
        return float(self.recall_exact)

    @property
    def f1(self) -> float:
        return float(self.f1_exact)

    def __add__(self, other: "EvalReport") -> "EvalReport":
        return EvalReport(self.tp + other.tp, self.predicted_nonnil + other.predicted_nonnil,
                          self.gold_nonnil + other.gold_nonnil, self.examples + other.examples,
                          self.missing_predictions + other.missing_predictions)

    def as_dict(self) -> dict:
        return {"tp": self.tp, "predicted_nonnil": self.predicted_nonnil,
                "gold_nonnil": self.gold_nonnil, "examples": self.examples,
                "missing_predictions": self.missing_predictions,
                "precision": self.precision, "recall": self.recall, "f1": self.f1,
                "exact": {"precision": str(self.precision_exact), "recall": str(self.recall_exact),
                          "f1": str(self.f1_exact)}}


def _gold_answers(ex) -> list[str]:
    answers = ex["answers"] if isinstance(ex, Mapping) else ex.answers
    return list(answers or [])


def _gold_id(ex) -> str:
    return ex["id"] if isinstance(ex, Mapping) else ex.id


def _index_predictions(gold_ids: set[str], preds: Iterable[Prediction]) -> dict[str, Prediction]:
    index: dict[str, Prediction] = {}
    for p in preds:
        if p.example_id not in gold_ids:
            raise UnknownExampleError(f"unknown-example: {p.example_id}")
        if p.example_id in index:
            raise ValueError(f"duplicate prediction for {p.example_id}")
        index[p.example_id] = p
    return index


def score(gold: Iterable, preds: Iterable[Prediction], case_sensitive: bool = False) -> EvalReport:
    """Score predictions against gold examples (RCExample objects or example dicts).

    Examples without a prediction count as NIL predictions; how many were
    defaulted is reported in ``missing_predictions``.
    """
    gold = list(gold)
    index = _index_predictions({_gold_id(g) for g in gold}, preds)
    tp = pred_nonnil = gold_nonnil = missing = 0
    for ex in gold:
        answers = _gold_answers(ex)
        pred = index.get(_gold_id(ex))
        if pred is None:
            missing += 1
        if answers:
            gold_nonnil += 1
        if pred is None or pred.is_nil:
            continue
        pred_nonnil += 1
        if answers:
            bag = normalize_answer(pred.answer, case_sensitive)
            if any(bag == normalize_answer(a, case_sensitive) for a in answers):
                tp += 1
    if missing:
        log.warning("%d gold examples had no prediction; scored as NIL", missing)
    return EvalReport(tp, pred_nonnil, gold_nonnil, len(gold), missing)


GROUP_KEYS: dict[str, Callable] = {
    "pid": lambda ex: _field(ex, "triple_id").split("|")[1],
    "language": lambda ex: _field(ex, "lang"),
    "template_id": lambda ex: _field(ex, "template_id"),
}


def _field(ex, name):
    return ex[name] if isinstance(ex, Mapping) else getattr(ex, name)


def score_by_group(gold: Iterable, preds: Iterable[Prediction], key: str,
                   case_sensitive: bool = False) -> dict[str, EvalReport]:
    try:
        keyfn = GROUP_KEYS[key]
    except KeyError:
        raise ValueError(f"group key must be one of {sorted(GROUP_KEYS)}") from None
    gold = list(gold)
    preds = list(preds)
    _index_predictions({_gold_id(g) for g in gold}, preds)
    parts: dict[str, list] = defaultdict(list)
    for ex in gold:
        parts[keyfn(ex)].append(ex)
    out = {}
    for group in sorted(parts):
        ids = {_gold_id(g) for g in parts[group]}
        out[group] = score(parts[group], [p for p in preds if p.example_id in ids], case_sensitive)
    return out

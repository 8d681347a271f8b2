"""Deterministic predictors used to exercise the scorer end to end."""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .evalscore import Prediction

_TOKEN = re.compile(r"\S+")
_EDGE_PUNCT = "\"'“”‘’«»()[]{}.,;:!?¿¡…"


def _get(ex, name):
    return ex[name] if isinstance(ex, Mapping) else getattr(ex, name)


def oracle_predict(gold: Iterable) -> list[Prediction]:
    out = []
    for ex in gold:
        answers = list(_get(ex, "answers") or [])
        out.append(Prediction(_get(ex, "id"), answers[0] if answers else None))
    return out


def nil_predict(gold: Iterable) -> list[Prediction]:
    return [Prediction(_get(ex, "id"), None) for ex in gold]


def capitalized_spans(context: str) -> list[str]:
    """Maximal runs of two or more consecutive capitalized tokens.

    A token's leading/trailing punctuation is stripped before the test; a
    token ending in punctuation closes the run it belongs to.
    """
    spans, run = [], []
    for m in _TOKEN.finditer(context):
        raw = m.group()
        word = raw.strip(_EDGE_PUNCT)
        if word and word[0].isupper():
            run.append(word)
            if raw.rstrip(_EDGE_PUNCT) != raw:
                if len(run) >= 2:
                    spans.append(" ".join(run))
                run = []
            continue
        if len(run) >= 2:
            spans.append(" ".join(run))
        run = []
    if len(run) >= 2:
        spans.append(" ".join(run))
    return spans


def heuristic_predict(examples: Iterable) -> list[Prediction]:
    """First capitalized multi-token span of the context that is not part of
    the question; NIL when there is none. A deliberately weak floor."""
    out = []
    for ex in examples:
        question = _get(ex, "question").lower()
        answer = next((s for s in capitalized_spans(_get(ex, "context")) if s.lower() not in question), None)
        out.append(Prediction(_get(ex, "id"), answer))
    return out


PREDICTORS = {"oracle": oracle_predict, "nil": nil_predict, "heuristic": heuristic_predict}

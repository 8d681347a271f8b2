import logging

import pytest
from hypothesis import given, strategies as st

from xwikire.denormalize import PropertyCatalog
from xwikire.ingestion import EntityRef, KBEntity, PageDoc, Statement
from xwikire.querify import (AgreementGap, AgreementTable, GenderClass, RCExample, Template, TemplateError,
                             infer_gender, instantiate, load_templates, onset_class, querify_dataset,
                             validate_pattern)
from xwikire.slotfill import NegativeContext, PositiveContext, Triple


def write_templates(tmp_path, rows):
    p = tmp_path / "templates.tsv"
    p.write_text("".join("\t".join(r) + "\n" for r in rows), encoding="utf-8")
    return p


def test_load_templates_groups_and_validates(tmp_path, caplog):
    p = write_templates(tmp_path, [
        ("P17-en-1", "P17", "en", "What country is {x} located in?"),
        ("P17-it-1", "P17", "it", "Di quale nazione fa parte {art} {x}?"),
        ("P50-en-1", "P50", "en", "Who wrote {x}?"),
        ("P50-en-2", "P50", "en", "Who wrote?"),
        ("P99-en-1", "P99", "en", "What about {x}?"),
    ])
    catalog = PropertyCatalog({"P17": {"en": "country"}, "P50": {"en": "author"}})
    with caplog.at_level(logging.ERROR):
        groups = load_templates(p, catalog)
    assert sorted(groups) == [("P17", "en"), ("P17", "it"), ("P50", "en")]
    assert [t.template_id for t in groups[("P50", "en")]] == ["P50-en-1"]
    assert groups[("P17", "it")][0].pattern == "Di quale nazione fa parte {art} {x}?"
    assert "P50-en-2" in caplog.text and "P99-en-1" in caplog.text


def test_duplicate_template_id_fatal(tmp_path):
    p = write_templates(tmp_path, [("t1", "P17", "en", "Where is {x}?"), ("t1", "P17", "en", "Where's {x}?")])
    with pytest.raises(TemplateError):
        load_templates(p)


@pytest.mark.parametrize("pattern", ["Who wrote?", "{x} and {x}?", "{y} {x}?", "{x} {art} {art} {art}",
                                     "Who {x}}?", "{ x }?"])
def test_invalid_patterns(pattern):
    with pytest.raises(TemplateError):
        validate_pattern(pattern)


def test_infer_gender():
    kb = {"Q1": KBEntity("Q1", {"de": "Eine"}, statements=[Statement("P21", EntityRef("Q6581072"))]),
          "Q2": KBEntity("Q2", {"de": "Zwei"})}
    he = PageDoc("Q1", "de", "x", " ".join(["Er kam."] * 12 + ["Sie ging."]))
    assert infer_gender("Q1", "de", kb, he) == GenderClass.FEMININE
    assert infer_gender("Q2", "de", kb, PageDoc("Q2", "de", "x", he.text)) == GenderClass.MASCULINE
    assert infer_gender("Q2", "de", kb, PageDoc("Q2", "de", "x", "Ein Fluss.")) == GenderClass.UNKNOWN
    assert infer_gender("Q2", "de", kb, PageDoc("Q2", "de", "x", "Er und sie.")) == GenderClass.UNKNOWN
    assert infer_gender("Q2", "de", kb, None) == GenderClass.UNKNOWN


def T(pattern, lang="en", pid="P17"):
    return Template("t", pid, lang, pattern)


def test_instantiate_examples():
    assert instantiate(T("What country is {x} located in?"), "Amazon") == "What country is Amazon located in?"
    assert instantiate(T("Di quale nazione fa parte {art} {x}?", "it"), "Rio delle Amazzoni",
                       GenderClass.MASCULINE) == "Di quale nazione fa parte il Rio delle Amazzoni?"
    assert instantiate(T("¿En qué país se encuentra {art} {x}?", "es"), "Amazonas") == \
        "¿En qué país se encuentra el Amazonas?"


def test_article_agreement():
    it = T("Di quale nazione fa parte {art} {x}?", "it")
    assert instantiate(it, "Amazzonia", GenderClass.FEMININE) == "Di quale nazione fa parte l'Amazzonia?"
    assert instantiate(it, "Stromboli", GenderClass.MASCULINE) == "Di quale nazione fa parte lo Stromboli?"
    assert instantiate(it, "Toscana", GenderClass.FEMININE) == "Di quale nazione fa parte la Toscana?"
    fr = T("Où se trouve {art} {x} ?", "fr")
    assert instantiate(fr, "Amazone", GenderClass.MASCULINE) == "Où se trouve l'Amazone ?"
    assert instantiate(fr, "Seine", GenderClass.FEMININE) == "Où se trouve la Seine ?"


def test_fill_by_property():
    assert instantiate(T("Dove è {fill} {x}?", "it", "P19"), "Giulia Rinaldi", GenderClass.FEMININE) == \
        "Dove è nata Giulia Rinaldi?"
    assert instantiate(T("Où est {fill} {x} ?", "fr", "P20"), "Henri Vogt", GenderClass.MASCULINE) == \
        "Où est mort Henri Vogt ?"


def test_empty_filler_no_double_space():
    table = AgreementTable({("en", "art", "*", "masculine"): ""})
    out = instantiate(T("Where is {art} {x} now?"), "Amazon", GenderClass.MASCULINE, table)
    assert out == "Where is Amazon now?"


def test_agreement_gap():
    with pytest.raises(AgreementGap, match="agreement-gap"):
        instantiate(T("Où est {fill} {x} ?", "fr", "P19"), "X", GenderClass.NEUTER)


def test_onset_class():
    assert onset_class("Amazone") == "vowel"
    assert onset_class("Stromboli") == "s_impura"
    assert onset_class("Zurigo") == "s_impura"
    assert onset_class("Siena") == "*"
    assert onset_class("") == "*"


surfaces = st.text(alphabet="abcdefgh ABCDEFGHÉè'-", min_size=1, max_size=20).map(str.strip).filter(bool)


@given(surfaces, st.sampled_from(list(GenderClass)))
def test_instantiation_invariants(surface, gender):
    for lang, pattern in [("it", "Di quale nazione fa parte {art} {x}?"), ("es", "¿En qué país se encuentra {art} {x}?"),
                          ("en", "What country is {x} located in?"), ("de", "Wo liegt {art} {x}?")]:
        try:
            q = instantiate(T(pattern, lang), surface, gender)
        except AgreementGap:
            assert gender == GenderClass.NEUTER
            continue
        assert surface in q
        assert "{" not in q and "}" not in q
        assert "  " not in q.replace(surface, "X")


def _ctx(tid, lang="en"):
    return PositiveContext(tid, lang, "The Amazon proper runs mostly through Brazil and Peru.",
                           ("Brazil", "Peru"), "Amazon")


TEMPLATES = {("P17", "en"): [Template(f"P17-en-{i}", "P17", "en", p) for i, p in
                             enumerate(["What country is {x} located in?", "In which country is {x}?",
                                        "Where is {x}?"], 1)]}
LABELS = {("Q3783", "en"): "Amazon"}


def test_querify_expands_contexts_times_templates():
    tid = "Q3783|P17|Q155"
    triples = {tid: Triple(tid, "Q3783", "P17", "Q155")}
    out = querify_dataset([_ctx(tid)], triples, TEMPLATES, LABELS)
    assert len(out) == 3
    assert {e.triple_id for e in out} == {tid}
    assert out[0].question == "What country is Amazon located in?"
    assert out[0].answers == ("Brazil", "Peru")


def test_querify_negative_is_nil():
    tid = "Q3783|P17|Q155"
    neg = NegativeContext(tid, "en", "Berlin is a city in Germany.", "Q64|P17|Q183")
    templates = {("P17", "en"): TEMPLATES[("P17", "en")][:2]}
    out = querify_dataset([neg], {}, templates, LABELS)
    assert len(out) == 2
    assert all(e.is_negative and e.answers == () and e.partner_triple_id == "Q64|P17|Q183" for e in out)
    assert out[0].id == "Q3783|P17|Q155#P17-en-1#neg:Q64|P17|Q183"


def test_querify_skips_without_template_or_label():
    from xwikire.querify import QuerifyStats
    stats = QuerifyStats()
    out = querify_dataset([_ctx("Q3783|P17|Q155", "de"), _ctx("Q1|P17|Q155")], {}, TEMPLATES, LABELS, stats=stats)
    assert out == []
    assert (stats.skipped_no_template, stats.skipped_no_label) == (1, 1)


def test_example_json_round_trip():
    ex = RCExample("a#t", "Q1|P17|Q2", "t", "en", "Q?", "C.", ("A",), False, None, True)
    assert RCExample.from_json(ex.to_json()) == ex


def test_fixture_examples_invariants(built_examples):
    for ex in built_examples:
        assert "{" not in ex.question
        assert bool(ex.answers) != ex.is_negative
        assert ex.id.startswith(f"{ex.triple_id}#{ex.template_id}")

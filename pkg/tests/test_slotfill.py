from hypothesis import assume, given, settings, strategies as st

from xwikire.ingestion import EntityRef, KBEntity, Statement, Text, Time
from xwikire.segment import segment_sentences
from xwikire.slotfill import (EntityDocument, PositiveContext, SlotfillStats, SlotTuple, build_negatives,
                              build_positives, contains_answer, entity2_type, find_first_joint_sentence,
                              find_mentions, merge_triples, negative_quota, split_triple_id, surfaces_for,
                              triple_id)

KB = {
    "Q3783": KBEntity("Q3783", {"en": "Amazon"}, {"en": ["Amazon River"]}),
    "Q155": KBEntity("Q155", {"en": "Brazil"}, statements=[Statement("P31", EntityRef("Q6256"))]),
    "Q1": KBEntity("Q1", {"en": "Lonely"}),
    "Q2": KBEntity("Q2", {"de": "Nur Deutsch"}),
}

AMAZON_EN = ("The Amazon River in South America is the largest river by discharge volume of water in the world. "
             "The Amazon proper runs mostly through Brazil and Peru, and is part of the border between "
             "the lowland basins.")


def test_triple_id_round_trip():
    tid = triple_id("Q3783", "P17", "Q155")
    assert tid == "Q3783|P17|Q155"
    assert split_triple_id(tid) == ("Q3783", "P17", "Q155")
    assert split_triple_id("Q1|P1449|a|b") == ("Q1", "P1449", "a|b")


def test_surfaces_for():
    assert surfaces_for("Q3783", "en", KB) == ["Amazon River", "Amazon"]
    assert surfaces_for("Q155", "en", KB) == ["Brazil"]
    assert surfaces_for("Q2", "en", KB) == []


def test_entity2_type():
    assert entity2_type(EntityRef("Q155"), KB) == "Q6256"
    assert entity2_type(Time(1994, precision="year"), KB) == "literal:time"
    assert entity2_type(EntityRef("Q1"), KB) == "untyped"
    assert entity2_type(Text("x"), KB) == "literal:text"


def test_first_joint_sentence_amazon():
    sents = segment_sentences(AMAZON_EN, "en")
    m = find_first_joint_sentence(sents, ["Amazon River", "Amazon"], ["Brazil"])
    assert m.sentence.text.startswith("The Amazon proper runs mostly through Brazil and Peru")
    assert m.entity1_surface == "Amazon"
    assert m.entity2_surfaces == ["Brazil"]


def test_first_joint_sentence_wins():
    sents = segment_sentences("Alpha met Beta. Alpha met Beta again.", "en")
    m = find_first_joint_sentence(sents, ["Alpha"], ["Beta"])
    assert m.sentence.text == "Alpha met Beta."
    sents = segment_sentences("Alpha rested. Beta rested. Alpha met Beta.", "en")
    assert find_first_joint_sentence(sents, ["Alpha"], ["Beta"]).sentence.text == "Alpha met Beta."


def test_no_cooccurrence():
    sents = segment_sentences("Alpha rested. Beta rested.", "en")
    assert find_first_joint_sentence(sents, ["Alpha"], ["Beta"]) is None


def test_mentions_respect_word_boundaries():
    assert find_mentions("Amazonasbecken und Amazonas", ["Amazonas"]) == [(19, 27)]
    assert find_mentions("Peru, peru", ["Peru"]) == [(0, 4), (6, 10)]
    # the longer surface claims the text first
    assert find_mentions("Amazon River flows", ["Amazon", "Amazon River"]) == [(0, 12)]


def _tuple(pid, key, surfaces, type_key="Q6256"):
    return SlotTuple(pid, key, surfaces[0], "entity", type_key, tuple(surfaces))


def _doc(qid, text, tuples, lang="en", surfaces=None):
    return EntityDocument(qid, lang, qid, qid, tuple(surfaces or [qid]), text, tuples)


def test_amazon_positive_collects_sibling_answers():
    doc = _doc("Q3783", AMAZON_EN, [_tuple("P17", "Q155", ["Brazil"]), _tuple("P17", "Q419", ["Peru"])],
               surfaces=["Amazon River", "Amazon"])
    out = build_positives([doc])
    assert [t.id for t, _ in out] == ["Q3783|P17|Q155", "Q3783|P17|Q419"]
    for _, ctx in out:
        assert ctx.answer_strings == ("Brazil", "Peru")
        assert ctx.entity1_surface in ctx.sentence


def test_view_without_tuples():
    assert build_positives([_doc("Q1", "Q1 is here.", [])]) == []


def test_miss_counted():
    stats = SlotfillStats()
    out = build_positives([_doc("Q1", "Q1 is here. Beta is there.", [_tuple("P17", "Q9", ["Beta"])])], stats)
    assert out == [] and stats.misses == 1


def test_same_fact_same_id_across_languages():
    docs = [
        _doc("Q3783", "The Amazon crosses Brazil.", [_tuple("P17", "Q155", ["Brazil"])], "en", ["Amazon"]),
        _doc("Q3783", "Der Amazonas fließt durch Brasilien.", [_tuple("P17", "Q155", ["Brasilien"])], "de",
             ["Amazonas"]),
    ]
    pairs = build_positives(docs)
    assert {t.id for t, _ in pairs} == {"Q3783|P17|Q155"}
    [merged] = merge_triples(t for t, _ in pairs)
    assert merged.answer_texts == {"de": ["Brasilien"], "en": ["Brazil"]}


def _pos(tid, sentence, answers, type_key="Q6256", lang="en"):
    return PositiveContext(tid, lang, sentence, tuple(answers), "x", type_key, tuple(answers))


def test_mutual_swap():
    a = _pos("Q1|P17|Q155", "Alpha lies in Brazil.", ["Brazil"])
    b = _pos("Q2|P17|Q419", "Beta lies in Peru.", ["Peru"])
    negs = build_negatives([a, b], ratio=1, seed=0)
    assert {(n.triple_id, n.partner_triple_id) for n in negs} == {(a.triple_id, b.triple_id),
                                                                   (b.triple_id, a.triple_id)}
    assert {n.sentence for n in negs} == {a.sentence, b.sentence}


def test_partner_containing_answer_rejected():
    a = _pos("Q1|P17|Q155", "Alpha lies in Brazil.", ["Brazil"])
    b = _pos("Q2|P17|Q155", "Beta lies in Brazil.", ["Brazil"])
    c = _pos("Q3|P17|Q419", "Gamma lies in Peru.", ["Peru"])
    stats = SlotfillStats()
    for seed in range(10):
        negs = [n for n in build_negatives([a, b, c], ratio=1, seed=seed, stats=stats) if n.triple_id == a.triple_id]
        assert [n.partner_triple_id for n in negs] == [c.triple_id]


def test_singleton_group_has_no_negatives():
    stats = SlotfillStats()
    assert build_negatives([_pos("Q1|P17|Q155", "Alpha lies in Brazil.", ["Brazil"])], ratio=1, stats=stats) == []
    assert stats.no_partner == 1


def test_type_groups_do_not_mix():
    a = _pos("Q1|P17|Q155", "Alpha lies in Brazil.", ["Brazil"])
    b = _pos("Q2|P569|1994", "Beta was born in 1994.", ["1994"], type_key="literal:time")
    assert build_negatives([a, b], ratio=1) == []


def test_quota_is_seed_independent():
    assert negative_quota(2.0, "Q1|P1|Q2", "en") == 2
    assert negative_quota(0, "Q1|P1|Q2", "en") == 0
    ratio = 0.3
    hits = sum(negative_quota(ratio, f"Q{i}|P1|Q2", "en") for i in range(2000))
    assert abs(hits / 2000 - ratio) < 0.05


def test_contains_answer_is_token_bag():
    assert contains_answer("Luca Rinaldi (25 May 1994) is a writer.", "25 May 1994")
    assert contains_answer("It lies in Peru, near Brazil.", "brazil")
    assert not contains_answer("It lies in Peruvian land.", "Peru")
    assert not contains_answer("Anything.", "")


answer_words = st.sampled_from(["Brazil", "Peru", "Chile", "Italy", "France", "Spain"])


@settings(max_examples=60)
@given(st.lists(st.tuples(st.lists(answer_words, min_size=1, max_size=3), st.sampled_from(["A", "B"])),
                min_size=1, max_size=8),
       st.floats(min_value=0, max_value=3), st.integers(0, 50))
def test_negative_invariants(rows, ratio, seed):
    positives = [_pos(f"Q{i}|P17|Q{i + 100}", f"Entity {i} touches {' and '.join(ans)}.", ans, type_key=t)
                 for i, (ans, t) in enumerate(rows)]
    by_id = {p.triple_id: p for p in positives}
    negs = build_negatives(positives, ratio=ratio, seed=seed)
    per = {}
    for n in negs:
        p, q = by_id[n.triple_id], by_id[n.partner_triple_id]
        assert p.type_key == q.type_key and p.triple_id != q.triple_id
        assert n.sentence == q.sentence
        assert not any(contains_answer(n.sentence, a) for a in p.answer_strings)
        per[n.triple_id] = per.get(n.triple_id, 0) + 1
    for tid, count in per.items():
        assert count <= negative_quota(ratio, tid, "en")
    assert negs == build_negatives(positives, ratio=ratio, seed=seed)


@given(st.integers(0, 1000), st.integers(0, 1000))
def test_which_positives_get_negatives_ignores_seed(s1, s2):
    assume(s1 != s2)
    positives = [_pos(f"Q{i}|P17|Q{i + 100}", f"Entity {i} touches Land{i}.", [f"Land{i}"]) for i in range(12)]
    a = build_negatives(positives, ratio=0.5, seed=s1)
    b = build_negatives(positives, ratio=0.5, seed=s2)
    assert sorted(n.triple_id for n in a) == sorted(n.triple_id for n in b)

import pytest
from hypothesis import given, strategies as st

from xwikire.segment import segment_sentences


def texts(text, lang="en"):
    return [s.text for s in segment_sentences(text, lang)]


def test_two_plain_sentences():
    assert texts("A b. C d.") == ["A b.", "C d."]


def test_abbreviation_keeps_sentence():
    assert texts("Dr. Who ran.") == ["Dr. Who ran."]


def test_empty():
    assert segment_sentences("", "en") == []
    assert segment_sentences("   ", "en") == []


GOLDEN = [
    ("en", "He met Mr. Smith in St. Louis. They talked.", ["He met Mr. Smith in St. Louis.", "They talked."]),
    ("en", "J. R. Tolkien wrote it. It sold well.", ["J. R. Tolkien wrote it.", "It sold well."]),
    ("en", "Is it true? Yes! It is.", ["Is it true?", "Yes!", "It is."]),
    ("en", "The value is 3.5 metres. Next one.", ["The value is 3.5 metres.", "Next one."]),
    ("en", "He said \"Stop.\" Then he left.", ["He said \"Stop.\"", "Then he left."]),
    ("en", "It ended in 1994. 1995 was calm.", ["It ended in 1994.", "1995 was calm."]),
    ("en", "lower. case follows", ["lower. case follows"]),
    ("de", "Er wurde am 25. Mai 1994 geboren. Danach zog er um.",
     ["Er wurde am 25. Mai 1994 geboren.", "Danach zog er um."]),
    ("de", "Das war ca. 1900 so. Heute nicht.", ["Das war ca. 1900 so.", "Heute nicht."]),
    ("de", "Er lebte bis 1994. Sie blieb.", ["Er lebte bis 1994.", "Sie blieb."]),
    ("es", "Vive en Madrid. ¿Dónde nació? En Sevilla.", ["Vive en Madrid.", "¿Dónde nació?", "En Sevilla."]),
    ("es", "Lo dijo el Sr. Pérez. Nadie respondió.", ["Lo dijo el Sr. Pérez.", "Nadie respondió."]),
    ("fr", "Il a vu M. Dupont. « Bonjour », dit-il.", ["Il a vu M. Dupont.", "« Bonjour », dit-il."]),
    ("it", "È nato a Roma. Lei è nata a Firenze.", ["È nato a Roma.", "Lei è nata a Firenze."]),
    ("it", "Lo disse il sig. Rossi. Poi partì.", ["Lo disse il sig. Rossi.", "Poi partì."]),
]


@pytest.mark.parametrize("lang,text,expected", GOLDEN)
def test_golden(lang, text, expected):
    assert texts(text, lang) == expected


def test_ordinal_rule_only_where_marked():
    # English has no ordinal marker: "25. May" would split were the next word capitalized
    assert texts("Day 25. May came.", "en") == ["Day 25.", "May came."]
    assert texts("Am 25. Mai kam er.", "de") == ["Am 25. Mai kam er."]


def test_unknown_language_uses_no_abbreviations():
    assert texts("Dr. Who ran.", "nl") == ["Dr.", "Who ran."]


words = st.text(alphabet="abcdefghij ABCDEF.!?,", min_size=0, max_size=80)


@given(words, st.sampled_from(["en", "de", "es", "fr", "it"]))
def test_offsets_and_coverage(text, lang):
    sents = segment_sentences(text, lang)
    for s in sents:
        assert text[s.start:s.end] == s.text
        assert s.text == s.text.strip() and s.text
    assert all(a.end <= b.start for a, b in zip(sents, sents[1:]))
    assert "".join(s.text for s in sents).replace(" ", "") == "".join(text.split())

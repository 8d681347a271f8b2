from xwikire.baselines import capitalized_spans, heuristic_predict, nil_predict, oracle_predict
from xwikire.evalscore import score

AMAZON = {"id": "a", "triple_id": "Q3783|P17|Q155", "lang": "en",
          "question": "What country is Amazon located in?",
          "context": "The Amazon proper runs mostly through Brazil and Peru, and is part of the border.",
          "answers": ["Brazil", "Peru"]}


def examples():
    return [AMAZON,
            {"id": "b", "question": "When was X born?", "context": "He was born in 1994.", "answers": ["1994"]},
            {"id": "c", "question": "Q?", "context": "Nothing here.", "answers": []},
            {"id": "d", "question": "Where is Rome?", "context": "Rome is in Italy.", "answers": ["Italy"]}]


def test_oracle():
    preds = oracle_predict(examples())
    assert len(preds) == 4 and {p.example_id for p in preds} == {"a", "b", "c", "d"}
    assert score(examples(), preds).f1 == 1.0
    assert oracle_predict([]) == []


def test_nil():
    preds = nil_predict(examples())
    rep = score(examples(), preds)
    assert rep.predicted_nonnil == 0 and rep.recall == 0.0
    assert score([examples()[2]], nil_predict([examples()[2]])).precision == 0.0


def test_heuristic_amazon_span():
    [p] = heuristic_predict([AMAZON])
    assert p.answer == "The Amazon"
    assert score([AMAZON], [p]).tp == 0


def test_heuristic_nil_and_determinism():
    ex = {"id": "x", "question": "Where is New York?", "context": "It is in New York.", "answers": []}
    assert heuristic_predict([ex])[0].answer is None
    assert heuristic_predict(examples()) == heuristic_predict(examples())


def test_capitalized_spans():
    assert capitalized_spans("Il Rio delle Amazzoni è un fiume.") == ["Il Rio"]
    assert capitalized_spans("visit South America, then North Africa") == ["South America", "North Africa"]
    assert capitalized_spans("Alpha. Beta Gamma") == ["Beta Gamma"]

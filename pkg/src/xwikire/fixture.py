"""Deterministic five-language mini-fixture: KB, page corpora, catalog, templates.

The fixture is small enough to build in a second yet exercises every stage:
the Amazon river with its country statements in all five languages, ten
cities, thirty fictional people and nine fictional novels. A few records are
broken on purpose (a truncated KB line, an empty page, a page without a KB
entry, a missing Spanish label, an entity without statements).

Run ``python scripts/make_fixture.py DIR`` or call :func:`write_fixture`.
"""

from __future__ import annotations

import json
import random
from decimal import Decimal
from pathlib import Path

from .denormalize import render_quantity, render_time
from .ingestion import LANGUAGES, KBEntity, Quantity, Time
from .jsonl import stable_fraction

SEED = "fixture-v1"
KM2 = "Q712226"

# class items referenced through P31 only
CLASSES = {"Q6256": "country", "Q515": "city", "Q5": "human", "Q4022": "river",
           "Q7725634": "literary work", "Q28640": "profession"}

COUNTRIES = {  # qid: en, de, es, fr, it
    "Q155": ("Brazil", "Brasilien", "Brasil", "Brésil", "Brasile"),
    "Q419": ("Peru", "Peru", "Perú", "Pérou", "Perù"),
    "Q739": ("Colombia", "Kolumbien", "Colombia", "Colombie", "Colombia"),
    "Q717": ("Venezuela", "Venezuela", "Venezuela", "Venezuela", "Venezuela"),
    "Q38": ("Italy", "Italien", "Italia", "Italie", "Italia"),
    "Q142": ("France", "Frankreich", "Francia", "France", "Francia"),
    "Q183": ("Germany", "Deutschland", "Alemania", "Allemagne", "Germania"),
    "Q29": ("Spain", "Spanien", "España", "Espagne", "Spagna"),
}

# qid: labels, country, area in km², nickname
CITIES = {
    "Q2044": (("Florence", "Florenz", "Florencia", "Florence", "Firenze"), "Q38", "102.41", None),
    "Q220": (("Rome", "Rom", "Roma", "Rome", "Roma"), "Q38", "1285", "Caput Mundi"),
    "Q490": (("Milan", "Mailand", "Milán", "Milan", "Milano"), "Q38", "181.67", None),
    "Q90": (("Paris", "Paris", "París", "Paris", "Parigi"), "Q142", "105.4", "Ville Lumière"),
    "Q456": (("Lyon", "Lyon", "Lyon", "Lyon", "Lione"), "Q142", "47.87", None),
    "Q64": (("Berlin", "Berlin", "Berlín", "Berlin", "Berlino"), "Q183", "891.1", "Spree-Athen"),
    "Q1726": (("Munich", "München", "Múnich", "Munich", "Monaco di Baviera"), "Q183", "310.7", None),
    "Q2807": (("Madrid",) * 5, "Q29", "604.3", None),
    "Q1492": (("Barcelona", "Barcelona", "Barcelona", "Barcelone", "Barcellona"), "Q29", "101.9", None),
    "Q8717": (("Seville", "Sevilla", "Sevilla", "Séville", "Siviglia"), "Q29", "140.8", None),
}

# qid: per language (masculine, feminine); the feminine form becomes an alias
OCCUPATIONS = {
    "Q36180": (("writer", "writer"), ("Schriftsteller", "Schriftstellerin"), ("escritor", "escritora"),
               ("écrivain", "écrivaine"), ("scrittore", "scrittrice")),
    "Q49757": (("poet", "poet"), ("Dichter", "Dichterin"), ("poeta", "poetisa"),
               ("poète", "poétesse"), ("poeta", "poetessa")),
    "Q1028181": (("painter", "painter"), ("Maler", "Malerin"), ("pintor", "pintora"),
                 ("peintre", "peintre"), ("pittore", "pittrice")),
    "Q639669": (("musician", "musician"), ("Musiker", "Musikerin"), ("músico", "música"),
                ("musicien", "musicienne"), ("musicista", "musicista")),
    "Q901": (("scientist", "scientist"), ("Wissenschaftler", "Wissenschaftlerin"), ("científico", "científica"),
             ("scientifique", "scientifique"), ("scienziato", "scienziata")),
    "Q82955": (("politician", "politician"), ("Politiker", "Politikerin"), ("político", "política"),
               ("homme politique", "femme politique"), ("politico", "politica")),
}

GIVEN = {
    "f": ["Marta", "Elena", "Claire", "Sophie", "Ingrid", "Greta", "Lucía", "Carmen",
          "Giulia", "Chiara", "Amélie", "Hanna", "Pilar", "Valeria", "Odile"],
    "m": ["Luca", "Marco", "Henri", "Julien", "Klaus", "Tobias", "Javier", "Andrés",
          "Paolo", "Matteo", "Étienne", "Dieter", "Rafael", "Bruno", "Anselm"],
}
SURNAMES = {
    "Q38": ["Rinaldi", "Ferrante", "Colonna", "Marchetti", "Bellotti", "Orsini", "Vitale", "Sartori"],
    "Q142": ["Delorme", "Fontaine", "Marchand", "Lefebvre", "Rousselot", "Garnier", "Chevalier", "Aubert"],
    "Q183": ["Brandt", "Hofmann", "Keller", "Lindner", "Vogt", "Seidel", "Krüger", "Albrecht"],
    "Q29": ["Olmedo", "Castaño", "Ibarra", "Quintana", "Robles", "Salcedo", "Valverde", "Arroyo"],
}

TITLES = [
    ("The Silent Harbour", "Der stille Hafen", "El puerto silencioso", "Le Port silencieux", "Il porto silenzioso"),
    ("Winter Letters", "Winterbriefe", "Cartas de invierno", "Lettres d'hiver", "Lettere d'inverno"),
    ("The Glass Orchard", "Der gläserne Obstgarten", "El huerto de cristal", "Le Verger de verre",
     "Il frutteto di vetro"),
    ("A House by the River", "Ein Haus am Fluss", "Una casa junto al río", "Une maison au bord du fleuve",
     "Una casa sul fiume"),
    ("Northern Light", "Nordlicht", "Luz del norte", "Lumière du Nord", "Luce del nord"),
    ("The Salt Road", "Die Salzstraße", "El camino de la sal", "La Route du sel", "La via del sale"),
    ("Seven Small Rooms", "Sieben kleine Zimmer", "Siete habitaciones pequeñas", "Sept petites chambres",
     "Sette piccole stanze"),
    ("The Clockmaker's Daughter", "Die Tochter des Uhrmachers", "La hija del relojero", "La Fille de l'horloger",
     "La figlia dell'orologiaio"),
    ("Ashes in Spring", "Asche im Frühling", "Cenizas en primavera", "Cendres au printemps", "Ceneri in primavera"),
]

# fraction of people/book pages missing per language
PAGE_DROP = {"en": 0.0, "de": 0.15, "es": 0.3, "fr": 0.2, "it": 0.25}

AMAZON_LABELS = {"en": "Amazon", "de": "Amazonas", "es": "Amazonas", "fr": "Amazone", "it": "Rio delle Amazzoni"}
AMAZON_ALIASES = {"en": ["Amazon River"], "es": ["río Amazonas"], "fr": ["Amazonas"], "it": ["Amazzoni"]}
AMAZON_TEXT = {
    "en": "The Amazon River in South America is the largest river by discharge volume of water in the world. "
          "The Amazon proper runs mostly through Brazil and Peru, and is part of the border between "
          "the lowland basins. It flows into the Atlantic Ocean.",
    "de": "Der Amazonas ist ein Strom in Südamerika. "
          "Der Fluss Amazonas gab seinerseits dem Amazonasbecken sowie mehreren gleichnamigen "
          "Verwaltungseinheiten in Brasilien, Venezuela, Kolumbien den Namen. Er mündet in den Atlantik.",
    "es": "El río Amazonas es un río de América del Sur, que atraviesa Perú, Colombia y Brasil. "
          "Es el río más caudaloso del mundo.",
    "fr": "L'Amazone est un fleuve d'Amérique du Sud. "
          "Le fleuve prend alors le nom d'Amazonas au Pérou et en Colombie, puis celui de rio Solimões "
          "en entrant au Brésil au niveau de la ville de Tabatinga. Il se jette dans l'océan Atlantique.",
    "it": "Il Rio delle Amazzoni è un fiume dell'America Meridionale che attraversa Perù, Colombia e Brasile "
          "prima di sfociare nell'oceano Atlantico. È il fiume più lungo del continente.",
}

# expected Amazon country example per language: (question, context, answers)
AMAZON_ROWS = {
    "en": ("What country is Amazon located in?",
           "The Amazon proper runs mostly through Brazil and Peru, and is part of the border between "
           "the lowland basins.",
           ["Brazil", "Peru"]),
    "de": ("In welchem land befindet man sich, wenn man Amazonas besucht?",
           "Der Fluss Amazonas gab seinerseits dem Amazonasbecken sowie mehreren gleichnamigen "
           "Verwaltungseinheiten in Brasilien, Venezuela, Kolumbien den Namen.",
           ["Brasilien", "Venezuela", "Kolumbien"]),
    "es": ("¿En qué país se encuentra el Amazonas?",
           "El río Amazonas es un río de América del Sur, que atraviesa Perú, Colombia y Brasil.",
           ["Perú", "Colombia", "Brasil"]),
    "fr": ("Dans quel pays peux-tu trouver Amazone?",
           "Le fleuve prend alors le nom d'Amazonas au Pérou et en Colombie, puis celui de rio Solimões "
           "en entrant au Brésil au niveau de la ville de Tabatinga.",
           ["Pérou", "Colombie", "Brésil"]),
    "it": ("Di quale nazione fa parte il Rio delle Amazzoni?",
           "Il Rio delle Amazzoni è un fiume dell'America Meridionale che attraversa Perù, Colombia e Brasile "
           "prima di sfociare nell'oceano Atlantico.",
           ["Perù", "Colombia", "Brasile"]),
}
AMAZON_TRIPLE = "Q3783|P17|Q155"

PROPERTIES = {
    "P17": ("country", "Staat", "país", "pays", "paese"),
    "P19": ("place of birth", "Geburtsort", "lugar de nacimiento", "lieu de naissance", "luogo di nascita"),
    "P20": ("place of death", "Sterbeort", "lugar de fallecimiento", "lieu de mort", "luogo di morte"),
    "P27": ("country of citizenship", "Staatsangehörigkeit", "país de nacionalidad", "pays de nationalité",
            "cittadinanza"),
    "P50": ("author", "Autor", "autor", "auteur", "autore"),
    "P106": ("occupation", "Tätigkeit", "ocupación", "occupation", "occupazione"),
    "P569": ("date of birth", "Geburtsdatum", "fecha de nacimiento", "date de naissance", "data di nascita"),
    "P570": ("date of death", "Sterbedatum", "fecha de fallecimiento", "date de mort", "data di morte"),
    "P577": ("publication date", "Veröffentlichungsdatum", "fecha de publicación", "date de publication",
             "data di pubblicazione"),
    "P1449": ("nickname", "Spitzname", "apodo", "surnom", "soprannome"),
    "P2046": ("area", "Fläche", "superficie", "superficie", "superficie"),
}

TEMPLATES = [
    ("P17", "en", "What country is {x} located in?"),
    ("P17", "en", "In which country is {x}?"),
    ("P17", "de", "In welchem land befindet man sich, wenn man {x} besucht?"),
    ("P17", "de", "In welchem Staat liegt {x}?"),
    ("P17", "es", "¿En qué país se encuentra {art} {x}?"),
    ("P17", "fr", "Dans quel pays peux-tu trouver {x}?"),
    ("P17", "fr", "Dans quel pays se trouve {x} ?"),
    ("P17", "it", "Di quale nazione fa parte {art} {x}?"),
    ("P19", "en", "Where was {x} born?"),
    ("P19", "en", "In which city was {x} born?"),
    ("P19", "en", "What is the birthplace of {x}?"),
    ("P19", "de", "Wo wurde {x} geboren?"),
    ("P19", "de", "In welcher Stadt kam {x} zur Welt?"),
    ("P19", "es", "¿Dónde nació {x}?"),
    ("P19", "es", "¿En qué ciudad ha {fill} {x}?"),
    ("P19", "fr", "Où est {fill} {x} ?"),
    ("P19", "fr", "Quel est le lieu de naissance de {x} ?"),
    ("P19", "it", "Dove è {fill} {x}?"),
    ("P19", "it", "Qual è il luogo di nascita di {x}?"),
    ("P20", "en", "Where did {x} die?"),
    ("P20", "en", "What is the place of death of {x}?"),
    ("P20", "de", "Wo starb {x}?"),
    ("P20", "es", "¿Dónde murió {x}?"),
    ("P20", "es", "¿En qué ciudad ha {fill} {x}?"),
    ("P20", "fr", "Où est {fill} {x} ?"),
    ("P20", "it", "Dove è {fill} {x}?"),
    ("P20", "it", "In quale città morì {x}?"),
    ("P27", "en", "What is the nationality of {x}?"),
    ("P27", "en", "Which country is {x} a citizen of?"),
    ("P27", "de", "Welche Staatsangehörigkeit hat {x}?"),
    ("P27", "es", "¿De qué país es {fill} {x}?"),
    ("P27", "fr", "Quelle est la nationalité de {x} ?"),
    ("P27", "it", "Di quale paese è {fill} {x}?"),
    ("P50", "en", "Who wrote {x}?"),
    ("P50", "en", "Who is the author of {x}?"),
    ("P50", "de", "Wer schrieb {x}?"),
    ("P50", "de", "Wer ist der Autor von {x}?"),
    ("P50", "es", "¿Quién escribió {x}?"),
    ("P50", "fr", "Qui a écrit {x} ?"),
    ("P50", "it", "Chi ha scritto {x}?"),
    ("P106", "en", "What is the occupation of {x}?"),
    ("P106", "en", "What does {x} do for a living?"),
    ("P106", "de", "Welchen Beruf hat {x}?"),
    ("P106", "de", "Was ist {x} von Beruf?"),
    ("P106", "es", "¿A qué se dedica {x}?"),
    ("P106", "fr", "Quelle est la profession de {x} ?"),
    ("P106", "it", "Che lavoro fa {x}?"),
    ("P569", "en", "When was {x} born?"),
    ("P569", "en", "What is the date of birth of {x}?"),
    ("P569", "de", "Wann wurde {x} geboren?"),
    ("P569", "es", "¿Cuándo nació {x}?"),
    ("P569", "fr", "Quelle est la date de naissance de {x} ?"),
    ("P569", "it", "Quando è {fill} {x}?"),
    ("P570", "en", "When did {x} die?"),
    ("P570", "de", "Wann starb {x}?"),
    ("P570", "de", "An welchem Tag ist {x} gestorben?"),
    ("P570", "es", "¿Cuándo murió {x}?"),
    ("P570", "fr", "Quelle est la date de décès de {x} ?"),
    ("P570", "it", "Quando è {fill} {x}?"),
    ("P577", "en", "When was {x} published?"),
    ("P577", "en", "In which year was {x} first published?"),
    ("P577", "de", "Wann erschien {x}?"),
    ("P577", "es", "¿Cuándo se publicó {x}?"),
    ("P577", "fr", "Quand {x} a-t-il été publié ?"),
    ("P577", "it", "Quando è stato pubblicato {x}?"),
    ("P1449", "en", "What is the nickname of {x}?"),
    ("P1449", "de", "Welchen Spitznamen hat {x}?"),
    ("P1449", "es", "¿Cuál es el apodo de {x}?"),
    ("P1449", "fr", "Quel est le surnom de {x} ?"),
    ("P1449", "it", "Qual è il soprannome di {x}?"),
    ("P2046", "en", "What is the area of {x}?"),
    ("P2046", "en", "How large is {x}?"),
    ("P2046", "de", "Wie groß ist die Fläche von {x}?"),
    ("P2046", "es", "¿Cuál es la superficie de {x}?"),
    ("P2046", "fr", "Quelle est la superficie de {x} ?"),
    ("P2046", "it", "Qual è la superficie di {x}?"),
]

VOCAB = """
the a an is was in of and by from for to it he she his her as also known city river novel year
der die das ist war in von und ein eine er sie aus den dem stadt wurde geboren jahr
el la los las es fue de en y un una que del su por ciudad año
le la les est de en et un une il elle du au qui ville année
il la lo è di in e un una che del lui lei città anno
""".split()

CONFIG = """\
# mini-fixture pipeline configuration
langs = en,de,es,fr,it
seed = 7
kb = kb.jsonl
corpus = corpus/{lang}.jsonl
properties = properties.tsv
templates = templates.tsv
vocab = vocab.txt
negative_ratio = 0.5
fractions = 0.8,0.1,0.1
folds = 5
peek = true
pivot = en
finetune_sizes = 20,50,100
multilingual_size = 200
"""


def _labels(values) -> dict[str, str]:
    return dict(zip(LANGUAGES, values))


def _entity(qid, labels, aliases=None, statements=()) -> dict:
    return {"qid": qid, "labels": labels, "aliases": aliases or {}, "statements": list(statements)}


def _ent(pid, qid):
    return {"pid": pid, "type": "entity", "value": qid}


def _keep(qid: str, lang: str, what: str, p: float) -> bool:
    return stable_fraction(SEED, qid, lang, what) >= p


def _people(rng: random.Random) -> list[dict]:
    people = []
    given_idx = {"f": 0, "m": 0}
    city_by_country = {}
    for cq, (_, country, _, _) in CITIES.items():
        city_by_country.setdefault(country, []).append(cq)
    countries = list(SURNAMES)
    for i in range(30):
        country = countries[i % 4]
        gender = "f" if rng.random() < 0.5 else "m"
        given = GIVEN[gender][given_idx[gender] % len(GIVEN[gender])]
        given_idx[gender] += 1
        surname = SURNAMES[country][i // 4]
        year = rng.randint(1850, 1975)
        month, day = rng.randint(1, 12), rng.randint(1, 28)
        if i % 11 == 5:
            dob = Time(year, precision="year")
        elif i % 7 == 3:
            dob = Time(year, month, precision="month")
        else:
            dob = Time(year, month, day, precision="day")
        dod = None
        if i % 2 == 0:
            dod = Time(year + rng.randint(45, 85), rng.randint(1, 12), rng.randint(1, 28), precision="day")
        people.append({
            "qid": f"Q{99000001 + i}", "i": i, "name": f"{given} {surname}", "surname": surname,
            "gender": gender, "p21": i % 3 != 0, "country": country,
            "birthplace": rng.choice(city_by_country[country]),
            "deathplace": rng.choice(sorted(CITIES)) if dod else None,
            "occupation": rng.choice(sorted(OCCUPATIONS)), "dob": dob, "dod": dod,
            "no_es_label": i % 13 == 12,
        })
    return people


def _books(people: list[dict], rng: random.Random) -> list[dict]:
    authors = [0, 3, 5, 8, 11, 14, 17, 20, 23]
    books = []
    for j, (titles, a) in enumerate(zip(TITLES, authors)):
        person = people[a]
        year = min(person["dob"].year + rng.randint(28, 50), 2015)
        books.append({"qid": f"Q{99100001 + j}", "titles": titles, "author": person,
                      "published": Time(year, precision="year")})
    return books


def _kb_records(people, books) -> list[dict]:
    recs = []
    for qid, label in CLASSES.items():
        recs.append(_entity(qid, {"en": label}))
    recs.append(_entity(KM2, _labels(["km²"] * 5)))
    recs.append(_entity("Q6581097", _labels(("male", "männlich", "masculino", "masculin", "maschio"))))
    recs.append(_entity("Q6581072", _labels(("female", "weiblich", "femenino", "féminin", "femmina"))))
    for qid, labels in COUNTRIES.items():
        recs.append(_entity(qid, _labels(labels), statements=[_ent("P31", "Q6256")]))
    for qid, forms in OCCUPATIONS.items():
        labels = {lang: m for lang, (m, _) in zip(LANGUAGES, forms)}
        aliases = {lang: [f] for lang, (m, f) in zip(LANGUAGES, forms) if f != m}
        recs.append(_entity(qid, labels, aliases, [_ent("P31", "Q28640")]))
    recs.append(_entity("Q3783", dict(AMAZON_LABELS), dict(AMAZON_ALIASES),
                        [_ent("P31", "Q4022")] + [_ent("P17", c) for c in ("Q155", "Q419", "Q739", "Q717")]))
    for qid, (labels, country, area, nick) in CITIES.items():
        st = [_ent("P31", "Q515"), _ent("P17", country),
              {"pid": "P2046", "type": "quantity", "value": {"amount": area, "unit": KM2}}]
        if nick:
            st.append({"pid": "P1449", "type": "text", "value": nick})
        recs.append(_entity(qid, _labels(labels), statements=st))
    for p in people:
        labels = {lang: p["name"] for lang in LANGUAGES if not (lang == "es" and p["no_es_label"])}
        aliases = {lang: [p["surname"]] for lang in labels}
        st = [_ent("P31", "Q5"), _ent("P27", p["country"]), _ent("P19", p["birthplace"]),
              _ent("P106", p["occupation"]), {"pid": "P569", "type": "time", "value": p["dob"].iso()}]
        if p["p21"]:
            st.append(_ent("P21", "Q6581072" if p["gender"] == "f" else "Q6581097"))
        if p["dod"]:
            st += [{"pid": "P570", "type": "time", "value": p["dod"].iso()}, _ent("P20", p["deathplace"])]
        recs.append(_entity(p["qid"], labels, aliases, st))
    for b in books:
        recs.append(_entity(b["qid"], _labels(b["titles"]), statements=[
            _ent("P31", "Q7725634"), _ent("P50", b["author"]["qid"]),
            {"pid": "P577", "type": "time", "value": b["published"].iso()}]))
    recs.append(_entity("Q99200001", {"en": "Harbour Festival"}))
    return recs


def _country(qid, lang):
    return COUNTRIES[qid][LANGUAGES.index(lang)]


def _city(qid, lang):
    return CITIES[qid][0][LANGUAGES.index(lang)]


def _occupation(qid, lang, gender):
    m, f = OCCUPATIONS[qid][LANGUAGES.index(lang)]
    return f if gender == "f" else m


_IT_IMPURA = ("sc", "sp", "st", "z")


def _person_text(p, lang, books) -> str:
    f = p["gender"] == "f"
    name, sur = p["name"], p["surname"]
    dob = render_time(p["dob"], lang)
    dod = render_time(p["dod"], lang) if p["dod"] else None
    occ = _occupation(p["occupation"], lang, p["gender"])
    country = _country(p["country"], lang)
    birth = _city(p["birthplace"], lang)
    death = _city(p["deathplace"], lang) if p["deathplace"] else None
    pron_variant = not _keep(p["qid"], lang, "birth-pronoun", 0.4)
    s = []
    if lang == "en":
        s.append(f"{name} ({dob} – {dod}) was a {occ} from {country}." if dod
                 else f"{name} (born {dob}) is a {occ} from {country}.")
        s.append(f"{'She' if f else 'He'} was born in {birth}." if pron_variant else f"{sur} was born in {birth}.")
        if death:
            s.append(f"{sur} died in {death}.")
        s.append(f"{'She' if f else 'He'} is remembered for {'her' if f else 'his'} work.")
        s += [f"{sur} wrote {b['titles'][0]}." for b in books]
    elif lang == "de":
        art = "eine" if f else "ein"
        s.append(f"{name} (* {dob}; † {dod}) war {art} {occ} aus {country}." if dod
                 else f"{name} (* {dob}) ist {art} {occ} aus {country}.")
        s.append(f"{'Sie' if f else 'Er'} wurde in {birth} geboren." if pron_variant
                 else f"{sur} wurde in {birth} geboren.")
        if death:
            s.append(f"{sur} starb in {death}.")
        s.append(f"{'Sie' if f else 'Er'} gilt als wichtige Stimme {'ihrer' if f else 'seiner'} Generation.")
        s += [f"{sur} schrieb {b['titles'][1]}." for b in books]
    elif lang == "es":
        art = "una" if f else "un"
        s.append(f"{name} ({dob} – {dod}) fue {art} {occ} de {country}." if dod
                 else f"{name} ({dob}) es {art} {occ} de {country}.")
        s.append(f"{'Ella' if f else 'Él'} nació en {birth}." if pron_variant else f"{sur} nació en {birth}.")
        if death:
            s.append(f"{sur} murió en {death}.")
        s.append(f"{'Ella' if f else 'Él'} es {'recordada' if f else 'recordado'} por su obra.")
        s += [f"{sur} escribió {b['titles'][2]}." for b in books]
    elif lang == "fr":
        art = "une" if f else "un"
        s.append(f"{name} ({dob} – {dod}) est {art} {occ} qui a vécu en {country}." if dod
                 else f"{name} ({dob}) est {art} {occ} qui vit en {country}.")
        born = "née" if f else "né"
        s.append(f"{'Elle' if f else 'Il'} est {born} à {birth}." if pron_variant else f"{sur} est {born} à {birth}.")
        if death:
            s.append(f"{sur} est {'morte' if f else 'mort'} à {death}.")
        s.append(f"{'Elle' if f else 'Il'} reste une figure importante de son époque.")
        s += [f"{sur} a écrit {b['titles'][3]}." for b in books]
    else:
        art = "una" if f else ("uno" if occ.startswith(_IT_IMPURA) else "un")
        s.append(f"{name} ({dob} – {dod}) è {'stata' if f else 'stato'} {art} {occ} che ha vissuto in {country}."
                 if dod else f"{name} ({dob}) è {art} {occ} che vive in {country}.")
        born = "nata" if f else "nato"
        s.append(f"{'Lei' if f else 'Lui'} è {born} a {birth}." if pron_variant else f"{sur} è {born} a {birth}.")
        if death:
            s.append(f"{sur} è {'morta' if f else 'morto'} a {death}.")
        s.append(f"{'Lei' if f else 'Lui'} è {'ricordata' if f else 'ricordato'} per le sue opere.")
        s += [f"{sur} ha scritto {b['titles'][4]}." for b in books]
    return " ".join(s)


_CITY_SENTENCES = {
    "en": ("{c} is a city in {k}.", "{c} covers an area of {a}.", "{c} is also known as {n}.",
           "It is also known as {n}.", "The city attracts many visitors every year."),
    "de": ("{c} ist eine Stadt in {k}.", "{c} hat eine Fläche von {a}.", "{c} wird auch {n} genannt.",
           "Sie wird auch {n} genannt.", "Die Stadt zieht jedes Jahr viele Besucher an."),
    "es": ("{c} es una ciudad de {k}.", "{c} tiene una superficie de {a}.", "{c} también es conocida como {n}.",
           "También es conocida como {n}.", "La ciudad recibe muchos visitantes cada año."),
    "fr": ("{c} est une ville située en {k}.", "{c} a une superficie de {a}.", "{c} est aussi appelée {n}.",
           "Elle est aussi appelée {n}.", "La ville attire de nombreux visiteurs chaque année."),
    "it": ("{c} è una città che si trova in {k}.", "{c} ha una superficie di {a}.", "{c} è anche nota come {n}.",
           "È anche nota come {n}.", "La città attira molti visitatori ogni anno."),
}


def _city_text(qid, lang, units) -> str:
    labels, country, area, nick = CITIES[qid]
    intro, area_s, nick_s, nick_pron, filler = _CITY_SENTENCES[lang]
    c = labels[LANGUAGES.index(lang)]
    s = [intro.format(c=c, k=_country(country, lang))]
    if _keep(qid, lang, "area", 0.2):
        s.append(area_s.format(c=c, a=render_quantity(Quantity(Decimal(area), KM2), lang, units)))
    if nick:
        s.append((nick_s if _keep(qid, lang, "nick", 0.3) else nick_pron).format(c=c, n=nick))
    s.append(filler)
    return " ".join(s)


_BOOK_SENTENCES = {
    "en": ("{t} is a novel by {a}, first published in {y}.", "{t} is a novel by {a}.",
           "It was first published in {y}.", "The novel was translated into several languages."),
    "de": ("{t} ist ein Roman von {a}, der {y} erschien.", "{t} ist ein Roman von {a}.",
           "Das Buch erschien {y}.", "Der Roman wurde in mehrere Sprachen übersetzt."),
    "es": ("{t} es una novela de {a}, publicada en {y}.", "{t} es una novela de {a}.",
           "Se publicó en {y}.", "La novela fue traducida a varios idiomas."),
    "fr": ("{t} est un roman de {a}, publié en {y}.", "{t} est un roman de {a}.",
           "Il a été publié en {y}.", "Le roman a été traduit en plusieurs langues."),
    "it": ("{t} è un romanzo di {a}, pubblicato nel {y}.", "{t} è un romanzo di {a}.",
           "Fu pubblicato nel {y}.", "Il romanzo è stato tradotto in diverse lingue."),
}


def _book_text(b, lang) -> str:
    joint, intro, year_s, filler = _BOOK_SENTENCES[lang]
    t, a, y = b["titles"][LANGUAGES.index(lang)], b["author"]["name"], b["published"].year
    if _keep(b["qid"], lang, "year-apart", 0.25):
        return " ".join([joint.format(t=t, a=a, y=y), filler])
    return " ".join([intro.format(t=t, a=a), year_s.format(y=y), filler])


def _pages(people, books, units) -> dict[str, list[dict]]:
    pages = {lang: [] for lang in LANGUAGES}
    by_author: dict[str, list] = {}
    for b in books:
        by_author.setdefault(b["author"]["qid"], []).append(b)
    for lang in LANGUAGES:
        out = pages[lang]
        out.append({"qid": "Q3783", "language": lang, "title": AMAZON_LABELS[lang], "text": AMAZON_TEXT[lang]})
        for qid in CITIES:
            out.append({"qid": qid, "language": lang, "title": _city(qid, lang),
                        "text": _city_text(qid, lang, units)})
        for p in people:
            if _keep(p["qid"], lang, "page", PAGE_DROP[lang]) or (lang == "es" and p["no_es_label"]):
                out.append({"qid": p["qid"], "language": lang, "title": p["name"],
                            "text": _person_text(p, lang, by_author.get(p["qid"], []))})
        for b in books:
            if _keep(b["qid"], lang, "page", PAGE_DROP[lang]):
                out.append({"qid": b["qid"], "language": lang, "title": b["titles"][LANGUAGES.index(lang)],
                            "text": _book_text(b, lang)})
    pages["en"].append({"qid": "Q99200001", "language": "en", "title": "Harbour Festival",
                        "text": "The Harbour Festival is an annual event. It takes place every summer."})
    pages["en"].append({"qid": "Q99200002", "language": "en", "title": "Empty page", "text": ""})
    pages["fr"].append({"qid": "Q99999999", "language": "fr", "title": "Page orpheline",
                        "text": "Cette page ne correspond à aucune entité."})
    return pages


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True)


def build_fixture() -> dict[str, str]:
    """Return ``{relative path: file content}`` for the whole fixture."""
    rng = random.Random(SEED)
    people = _people(rng)
    books = _books(people, rng)
    records = _kb_records(people, books)
    units = {KM2: KBEntity(KM2, _labels(["km²"] * 5), {}, ())}
    kb_lines = [_dump(r) for r in records]
    kb_lines.insert(len(kb_lines) // 2, '{"qid": "Q99300001", "labels": {"en": "Trunc')
    files = {"kb.jsonl": "\n".join(kb_lines) + "\n"}
    for lang, pages in _pages(people, books, units).items():
        files[f"corpus/{lang}.jsonl"] = "".join(_dump(p) + "\n" for p in pages)
    files["properties.tsv"] = "# pid\tlang\tlabel\n" + "".join(
        f"{pid}\t{lang}\t{label}\n" for pid, labels in sorted(PROPERTIES.items())
        for lang, label in zip(LANGUAGES, labels))
    counters: dict[tuple, int] = {}
    rows = []
    for pid, lang, pattern in TEMPLATES:
        n = counters[(pid, lang)] = counters.get((pid, lang), 0) + 1
        rows.append(f"{pid}-{lang}-{n}\t{pid}\t{lang}\t{pattern}\n")
    files["templates.tsv"] = "# template_id\tpid\tlang\tpattern\n" + "".join(rows)
    files["vocab.txt"] = "\n".join(sorted(set(VOCAB))) + "\n"
    files["fixture.cfg"] = CONFIG
    return files


def write_fixture(directory) -> list[Path]:
    directory = Path(directory)
    written = []
    for rel, content in sorted(build_fixture().items()):
        path = directory / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")
        written.append(path)
    return written

from __future__ import annotations

import itertools

import pytest

from treekit.conllu import parse_feats
from treekit.morphology import (
    CONVERSION_TABLE,
    DEFAULT_CATEGORY_UPOS,
    AnalysisError,
    convert_analysis,
    convert_lines,
    parse_analysis,
    resolve_surface,
)

# Every tag-to-features rule with its canonically sorted UD rendering.
TABLE_ROWS = [
    ("A1sg", "Number=Sing|Person=1"),
    ("A2sg", "Number=Sing|Person=2"),
    ("A3sg", "Number=Sing|Person=3"),
    ("A1pl", "Number=Plur|Person=1"),
    ("A2pl", "Number=Plur|Person=2"),
    ("A3pl", "Number=Plur|Person=3"),
    ("P1sg", "Number[psor]=Sing|Person[psor]=1"),
    ("P2sg", "Number[psor]=Sing|Person[psor]=2"),
    ("P3sg", "Number[psor]=Sing|Person[psor]=3"),
    ("P1pl", "Number[psor]=Plur|Person[psor]=1"),
    ("P2pl", "Number[psor]=Plur|Person[psor]=2"),
    ("P3pl", "Number[psor]=Plur|Person[psor]=3"),
    ("Abl", "Case=Abl"),
    ("Acc", "Case=Acc"),
    ("Dat", "Case=Dat"),
    ("Equ", "Case=Equ"),
    ("Gen", "Case=Gen"),
    ("Ins", "Case=Ins"),
    ("Loc", "Case=Loc"),
    ("Nom", "Case=Nom"),
    ("Pass", "Voice=Pass"),
    ("Caus", "Voice=Cau"),
    ("Reflex", "Voice=Rfl"),
    ("Recip", "Voice=Rcp"),
    ("Able", "Mood=Abil"),
    ("Repeat", "Mood=Iter"),
    ("Hastily", "Mood=Rapid"),
    ("Almost", "Mood=Pro"),
    ("Stay", "Mood=Dur"),
    ("While", "Mood=Imp|VerbForm=Conv"),
    ("ByDoingSo", "Mood=Imp|VerbForm=Conv"),
    ("Pos", "Polarity=Pos"),
    ("Neg", "Polarity=Neg"),
    ("Past", "Aspect=Perf|Evident=Fh|Tense=Past"),
    ("Narr", "Evident=Nfh|Tense=Past"),
    ("Fut", "Aspect=Imp|Tense=Fut"),
    ("Aor", "Aspect=Hab|Tense=Aor"),
    ("Pres", "Aspect=Imp|Tense=Pres"),
    ("Desr", "Mood=Des"),
    ("Cond", "Mood=Cnd"),
    ("Neces", "Mood=Nec"),
    ("Opt", "Mood=Opt"),
    ("Imp", "Mood=Imp"),
    ("Prog1", "Aspect=Prog|Tense=Pres"),
    ("Prog2", "Aspect=Prog|Tense=Pres"),
    ("DemonsP", "PronType=Dem"),
    ("QuesP", "PronType=Ind"),
    ("ReflexP", "PronType=Prs|Reflex=Yes"),
    ("PersP", "PronType=Prs"),
    ("QuantP", "PronType=Ind"),
    ("Card", "NumType=Card"),
    ("Ord", "NumType=Ord"),
    ("Distrib", "NumType=Dist"),
    ("Ratio", "NumType=Frac"),
    ("Range", "NumType=Range"),
    ("Inf", "VerbForm=Vnoun"),
    ("FutPart", "Aspect=Imp|Tense=Future|VerbForm=Part"),
    ("PastPart", "Aspect=Perf|Tense=Past|VerbForm=Part"),
    ("PresPart", "Tense=Pres|VerbForm=Part"),
]


def test_rule_inventory_is_complete():
    assert len(TABLE_ROWS) == len(CONVERSION_TABLE) == 59
    assert {t for t, _ in TABLE_ROWS} == set(CONVERSION_TABLE)


@pytest.mark.parametrize("tag,expected", TABLE_ROWS, ids=[t for t, _ in TABLE_ROWS])
def test_each_rule_row_converts_canonically(tag, expected):
    if tag in DEFAULT_CATEGORY_UPOS:
        conv = convert_analysis(f"x[{tag}]")
        assert conv.upos == "PRON"
    else:
        conv = convert_analysis(f"x[Verb]+[{tag}]")
    assert str(conv.feats) == expected


def test_imperative_verb_analysis():
    conv = convert_analysis("alın [Verb] +[Pos]+[Imp]+[A2sg]")
    assert conv.lemma == "alın"
    assert conv.upos == "VERB"
    assert str(conv.feats) == "Mood=Imp|Number=Sing|Person=2|Polarity=Pos"


def test_unknown_tag_error_names_it():
    with pytest.raises(AnalysisError, match="'Pnon'"):
        convert_analysis("alın [Noun] +[A3sg]+[Pnon]+[Nom]")


def test_unknown_tag_dropped_in_fallback_mode():
    conv = convert_analysis("alın [Noun] +[A3sg]+[Pnon]+[Nom]", on_unknown="drop")
    assert conv.lemma == "alın"
    assert conv.upos == "NOUN"
    assert str(conv.feats) == "Case=Nom|Number=Sing|Person=3"
    assert conv.dropped == ["Pnon"]


def test_derivational_boundary_restarts_features():
    conv = convert_analysis("o[PersP]&[Noun]+[A3sg]", on_unknown="error")
    assert conv.upos == "NOUN"
    assert str(conv.feats) == "Number=Sing|Person=3"  # PronType gone at the boundary
    conv = convert_analysis("al [Adj] &[Noun]+[A3sg]+Hn[P2sg]+[Nom]", on_unknown="drop")
    assert conv.lemma == "al"
    assert conv.upos == "NOUN"
    assert str(conv.feats) == "Case=Nom|Number=Sing|Number[psor]=Sing|Person=3|Person[psor]=2"


def test_features_inside_derivational_bracket_count():
    conv = convert_analysis("al [Verb] &Hn[Verb+Pass]+[Pos]+[Imp]+[A2sg]")
    assert conv.lemma == "alın"
    assert conv.upos == "VERB"
    assert str(conv.feats) == "Mood=Imp|Number=Sing|Person=2|Polarity=Pos|Voice=Pass"


def test_rightmost_tag_wins_conflicts():
    conv = convert_analysis("x[Verb]+[Past]+[Narr]")
    assert str(conv.feats) == "Aspect=Perf|Evident=Nfh|Tense=Past"
    conv = convert_analysis("x[Verb]+[Narr]+[Past]")
    assert str(conv.feats) == "Aspect=Perf|Evident=Fh|Tense=Past"


def test_any_tag_pair_yields_unique_feature_names():
    for t1, t2 in itertools.product(CONVERSION_TABLE, repeat=2):
        conv = convert_analysis(f"x[Verb]+[{t1}]+[{t2}]")
        rendered = str(conv.feats)
        reparsed = parse_feats(rendered)  # would raise on duplicate names
        expected: dict[str, str] = {}
        for tag in (t1, t2):
            for pair in CONVERSION_TABLE[tag].split("|"):
                name, _, value = pair.partition("=")
                expected[name] = value
        assert reparsed.pairs() == {f"{n}={v}" for n, v in expected.items()}


@pytest.mark.parametrize(
    "stem,raw,expected",
    [
        ("al", "Hn", "alın"),
        ("söz", "H", "sözü"),
        ("merak", "DA", "merakta"),
        ("ev", "DA", "evde"),
        ("al", "YHn", "alın"),
        ("oku", "YHn", "okuyun"),
        ("göz", "NHn", "gözün"),
        ("kedi", "NHn", "kedinin"),
        ("kitap", "DAn", "kitaptan"),
    ],
)
def test_surface_archiphoneme_resolution(stem, raw, expected):
    assert resolve_surface(stem, raw) == expected


def test_parse_all_printed_sample_analyses():
    samples = [
        ("alın [Noun] +[A3sg]+[Pnon]+[Nom]", "alın", "Noun", 3),
        ("al [Noun] +[A3sg]+Hn[P2sg]+[Nom]", "al", "Noun", 3),
        ("al [Adj] &[Noun]+[A3sg]+Hn[P2sg]+[Nom]", "al", "Adj", 4),
        ("al [Noun] +[A3sg]+[Pnon]+NHn[Gen]", "al", "Noun", 3),
        ("alın [Verb] +[Pos]+[Imp]+[A2sg]", "alın", "Verb", 3),
        ("al [Verb] +[Pos]+[Imp]+YHn[A2pl]", "al", "Verb", 3),
        ("al [Verb] &Hn[Verb+Pass]+[Pos]+[Imp]+[A2sg]", "al", "Verb", 4),
    ]
    for text, root, category, n_segments in samples:
        a = parse_analysis(text)
        assert a.root == root
        assert a.category == category
        assert len(a.segments) == n_segments
    deriv = parse_analysis(samples[6][0])
    assert deriv.segments[0].derivational
    assert deriv.segments[0].surface == "Hn"
    assert deriv.segments[0].tags == ("Verb", "Pass")
    assert not deriv.segments[1].derivational


@pytest.mark.parametrize(
    "bad",
    ["", "noroot", "x[Verb] extra", "x[Verb]+Pos", "x[Verb]+[Pos", "[Verb]+[Pos]"],
)
def test_unparseable_analyses_rejected(bad):
    with pytest.raises(AnalysisError):
        parse_analysis(bad)


def test_batch_conversion_rows_and_warnings():
    text = "alın [Verb] +[Pos]+[Imp]+[A2sg]\n\nalın [Noun] +[A3sg]+[Pnon]+[Nom]\n"
    rows, warnings = convert_lines(text, on_unknown="drop")
    assert rows == [
        "alın\tVERB\tMood=Imp|Number=Sing|Person=2|Polarity=Pos",
        "alın\tNOUN\tCase=Nom|Number=Sing|Person=3",
    ]
    assert warnings == ["line 3: unknown tag 'Pnon' dropped"]
    with pytest.raises(AnalysisError, match="line 3"):
        convert_lines(text, on_unknown="error")


def test_category_map_override():
    conv = convert_analysis("ankara[Noun]+[A3sg]", category_upos={"Noun": "PROPN"})
    assert conv.upos == "PROPN"
    conv = convert_analysis("vay[Interj]")
    assert conv.upos == "X"


def test_conversion_is_deterministic():
    line = "al [Verb] &Hn[Verb+Pass]+[Pos]+[Imp]+[A2sg]"
    a = convert_analysis(line)
    b = convert_analysis(line)
    assert (a.lemma, a.upos, str(a.feats)) == (b.lemma, b.upos, str(b.feats))

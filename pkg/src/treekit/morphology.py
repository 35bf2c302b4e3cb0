"""Conversion of segmented morphological analyses to UD lemma/UPOS/FEATS.

An analysis line looks like ``al[Verb]&Hn[Verb+Pass]+[Pos]+[Imp]+[A2sg]``:
a root with its category, then morpheme segments where '&' marks a
derivational boundary and '+' an inflectional one.  A segment may carry a
surface string before its bracket; capital letters in it are archiphonemes
(H: high vowel, A: low vowel, Y/N/S: consonants realized only after vowels,
D: alveolar stop with voicing assimilation).

Conversion walks the segments left to right.  Derivational boundaries restart
feature accumulation (the word's final category decides what survives), and
when two tags write the same feature name, the rightmost one wins.  The lemma
is the derived stem: the root plus every derivational surface, with
archiphonemes resolved by vowel harmony against the stem built so far.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from treekit.conllu import FeatureSet

# Tag-to-UD-features rules.  One entry per morphological tag; multi-feature
# values are '|'-joined in rule order.
CONVERSION_TABLE: dict[str, str] = {
    "A1sg": "Number=Sing|Person=1",
    "A2sg": "Number=Sing|Person=2",
    "A3sg": "Number=Sing|Person=3",
    "A1pl": "Number=Plur|Person=1",
    "A2pl": "Number=Plur|Person=2",
    "A3pl": "Number=Plur|Person=3",
    "P1sg": "Number[psor]=Sing|Person[psor]=1",
    "P2sg": "Number[psor]=Sing|Person[psor]=2",
    "P3sg": "Number[psor]=Sing|Person[psor]=3",
    "P1pl": "Number[psor]=Plur|Person[psor]=1",
    "P2pl": "Number[psor]=Plur|Person[psor]=2",
    "P3pl": "Number[psor]=Plur|Person[psor]=3",
    "Abl": "Case=Abl",
    "Acc": "Case=Acc",
    "Dat": "Case=Dat",
    "Equ": "Case=Equ",
    "Gen": "Case=Gen",
    "Ins": "Case=Ins",
    "Loc": "Case=Loc",
    "Nom": "Case=Nom",
    "Pass": "Voice=Pass",
    "Caus": "Voice=Cau",
    "Reflex": "Voice=Rfl",
    "Recip": "Voice=Rcp",
    "Able": "Mood=Abil",
    "Repeat": "Mood=Iter",
    "Hastily": "Mood=Rapid",
    "Almost": "Mood=Pro",
    "Stay": "Mood=Dur",
    "While": "VerbForm=Conv|Mood=Imp",
    "ByDoingSo": "VerbForm=Conv|Mood=Imp",
    "Pos": "Polarity=Pos",
    "Neg": "Polarity=Neg",
    "Past": "Aspect=Perf|Tense=Past|Evident=Fh",
    "Narr": "Tense=Past|Evident=Nfh",
    "Fut": "Tense=Fut|Aspect=Imp",
    "Aor": "Tense=Aor|Aspect=Hab",
    "Pres": "Tense=Pres|Aspect=Imp",
    "Desr": "Mood=Des",
    "Cond": "Mood=Cnd",
    "Neces": "Mood=Nec",
    "Opt": "Mood=Opt",
    "Imp": "Mood=Imp",
    "Prog1": "Aspect=Prog|Tense=Pres",
    "Prog2": "Aspect=Prog|Tense=Pres",
    "DemonsP": "PronType=Dem",
    "QuesP": "PronType=Ind",
    "ReflexP": "PronType=Prs|Reflex=Yes",
    "PersP": "PronType=Prs",
    "QuantP": "PronType=Ind",
    "Card": "NumType=Card",
    "Ord": "NumType=Ord",
    "Distrib": "NumType=Dist",
    "Ratio": "NumType=Frac",
    "Range": "NumType=Range",
    "Inf": "VerbForm=Vnoun",
    "FutPart": "VerbForm=Part|Tense=Future|Aspect=Imp",
    "PastPart": "VerbForm=Part|Tense=Past|Aspect=Perf",
    "PresPart": "VerbForm=Part|Tense=Pres",
}

_FRAGMENTS: dict[str, tuple[tuple[str, str], ...]] = {
    tag: tuple((p.partition("=")[0], p.partition("=")[2]) for p in rules.split("|"))
    for tag, rules in CONVERSION_TABLE.items()
}

DEFAULT_CATEGORY_UPOS: dict[str, str] = {
    "Noun": "NOUN",
    "Verb": "VERB",
    "Adj": "ADJ",
    "Adverb": "ADV",
    "Pers": "PRON",
    "DemonsP": "PRON",
    "QuesP": "PRON",
    "ReflexP": "PRON",
    "PersP": "PRON",
    "QuantP": "PRON",
    "Punc": "PUNCT",
}


class AnalysisError(ValueError):
    """Raised for unparseable analyses or (in strict mode) unknown tags."""


@dataclass(frozen=True)
class Segment:
    derivational: bool
    surface: str
    tags: tuple[str, ...]


@dataclass(frozen=True)
class Analysis:
    """A parsed analysis: root, root category tags, and morpheme segments."""

    root: str
    root_tags: tuple[str, ...]
    segments: tuple[Segment, ...]

    @property
    def category(self) -> str:
        return self.root_tags[0]


@dataclass
class Conversion:
    """Result of converting one analysis."""

    lemma: str
    upos: str
    feats: FeatureSet
    category: str
    dropped: list[str] = field(default_factory=list)


_ROOT = re.compile(r"\s*([^\[\]+&\s]+)\s*\[([^\[\]]+)\]")
_ITEM = re.compile(r"\s*([+&])([^\[\]+&\s]*)\[([^\[\]]+)\]")


def parse_analysis(text: str) -> Analysis:
    """Parse one analysis line into its root and segments."""
    m = _ROOT.match(text)
    if not m:
        raise AnalysisError(f"analysis must start with root[Category]: {text!r}")
    root, root_bracket = m.group(1), m.group(2)
    segments = []
    pos = m.end()
    while True:
        item = _ITEM.match(text, pos)
        if not item:
            break
        segments.append(
            Segment(
                derivational=item.group(1) == "&",
                surface=item.group(2),
                tags=tuple(item.group(3).split("+")),
            )
        )
        pos = item.end()
    if text[pos:].strip():
        raise AnalysisError(f"trailing garbage after position {pos}: {text[pos:].strip()!r}")
    return Analysis(root=root, root_tags=tuple(root_bracket.split("+")), segments=tuple(segments))


_VOWELS = "aeıioöuü"
_HIGH_FOR = {"a": "ı", "ı": "ı", "e": "i", "i": "i", "o": "u", "u": "u", "ö": "ü", "ü": "ü"}
_VOICELESS = "fstkçşhp"


def _last_vowel(stem: str) -> str | None:
    for ch in reversed(stem.lower()):
        if ch in _VOWELS:
            return ch
    return None


def resolve_surface(stem: str, raw: str) -> str:
    """Append a morph surface to a stem, resolving archiphonemes.

    H takes the harmonic high vowel, A the harmonic low vowel; Y, N and S
    surface only after a vowel-final stem; D voices to d/t against the last
    consonant.  Plain letters pass through.
    """
    out = stem
    for ch in raw:
        if ch == "H":
            out += _HIGH_FOR.get(_last_vowel(out) or "i", "i")
        elif ch == "A":
            v = _last_vowel(out)
            out += "a" if v in ("a", "ı", "o", "u") else "e"
        elif ch in "YNS":
            if out and out[-1].lower() in _VOWELS:
                out += ch.lower()
        elif ch == "D":
            out += "t" if out and out[-1].lower() in _VOICELESS else "d"
        else:
            out += ch
    return out


def resolve_conflicts(pairs: list[tuple[str, str]]) -> FeatureSet:
    """Fold feature pairs in morpheme order; the rightmost value wins a name."""
    merged: dict[str, str] = {}
    for name, value in pairs:
        merged[name] = value
    return FeatureSet(merged)


def convert_analysis(
    analysis: Analysis | str,
    on_unknown: str = "error",
    category_upos: dict[str, str] | None = None,
) -> Conversion:
    """Convert one analysis to UD lemma, UPOS and FEATS.

    on_unknown is 'error' (raise, naming the tag) or 'drop' (skip the tag and
    record it in the result).  category_upos overrides the category-to-UPOS
    map; unlisted categories fall back to 'X'.
    """
    if isinstance(analysis, str):
        analysis = parse_analysis(analysis)
    if on_unknown not in ("error", "drop"):
        raise ValueError("on_unknown must be 'error' or 'drop'")
    upos_map = DEFAULT_CATEGORY_UPOS if category_upos is None else category_upos

    dropped: list[str] = []
    pairs: list[tuple[str, str]] = []
    category = analysis.category
    stem = analysis.root

    def apply_tag(tag: str, is_category_slot: bool) -> None:
        nonlocal category
        if tag in upos_map or is_category_slot:
            category = tag
            if tag in _FRAGMENTS:
                pairs.extend(_FRAGMENTS[tag])
            return
        if tag in _FRAGMENTS:
            pairs.extend(_FRAGMENTS[tag])
            return
        if on_unknown == "error":
            raise AnalysisError(f"unknown morphological tag {tag!r}")
        dropped.append(tag)

    for i, tag in enumerate(analysis.root_tags):
        apply_tag(tag, is_category_slot=(i == 0))
    for segment in analysis.segments:
        if segment.derivational:
            stem = resolve_surface(stem, segment.surface)
            pairs.clear()
            for i, tag in enumerate(segment.tags):
                apply_tag(tag, is_category_slot=(i == 0))
        else:
            for tag in segment.tags:
                apply_tag(tag, is_category_slot=False)

    return Conversion(
        lemma=stem,
        upos=upos_map.get(category, "X"),
        feats=resolve_conflicts(pairs),
        category=category,
        dropped=dropped,
    )


def convert_lines(
    lines: list[str] | str,
    on_unknown: str = "error",
    category_upos: dict[str, str] | None = None,
) -> tuple[list[str], list[str]]:
    """Convert analysis lines to 'lemma<TAB>UPOS<TAB>FEATS' rows.

    Returns (rows, warnings); blank lines are skipped.  In 'drop' mode every
    dropped tag produces a warning naming its line.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()
    rows: list[str] = []
    warnings: list[str] = []
    for no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            conv = convert_analysis(line, on_unknown=on_unknown, category_upos=category_upos)
        except AnalysisError as exc:
            raise AnalysisError(f"line {no}: {exc}") from exc
        rows.append(f"{conv.lemma}\t{conv.upos}\t{conv.feats}")
        warnings.extend(f"line {no}: unknown tag {tag!r} dropped" for tag in conv.dropped)
    return rows, warnings

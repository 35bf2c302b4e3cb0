from __future__ import annotations

import os
import random
from pathlib import Path

import pytest
from hypothesis import settings

from treekit.conllu import Document, FeatureSet, Sentence, Token

settings.register_profile("slowci", deadline=None, max_examples=60)
settings.load_profile("slowci")

# A hand-annotated Turkish sentence used as the shared known-good fixture.
EXAMPLE_SENTENCE = """\
# sent_id = ins_167
# text = Sözü uzatıp seni merakta bıraktım galiba.
# trans = Probably, I beat around the bush and kept you in suspense.
1\tSözü\tsöz\tNOUN\tNoun\tCase=Acc|Number=Sing|Person=3\t2\tobj\t_\t_
2\tuzatıp\tuza\tVERB\tVerb\tPolarity=Pos|VerbForm=Conv|Voice=Cau\t5\tadvcl\t_\t_
3\tseni\tsen\tPRON\tPers\tCase=Acc|Number=Sing|Person=2\t5\tobj\t_\t_
4\tmerakta\tmerak\tNOUN\tNoun\tCase=Loc|Number=Sing|Person=3\t5\tobl\t_\t_
5\tbıraktım\tbırak\tVERB\tVerb\tAspect=Perf|Evident=Fh|Number=Sing|Person=1|Polarity=Pos|Tense=Past|VerbForm=Fin\t0\troot\t_\t_
6\tgaliba\tgaliba\tADV\tAdverb\t_\t5\tadvmod\t_\tSpaceAfter=No
7\t.\t.\tPUNCT\tPunc\t_\t5\tpunct\t_\tSpacesAfter=\\n
"""


@pytest.fixture
def example_text() -> str:
    return EXAMPLE_SENTENCE


def make_sentence(
    heads: list[int],
    deprels: list[str] | None = None,
    forms: list[str] | None = None,
    upos: list[str] | None = None,
    sent_id: str | None = None,
) -> Sentence:
    """Build a sentence from a head list; index i holds the head of word i+1."""
    n = len(heads)
    if deprels is None:
        deprels = ["root" if h == 0 else "dep" for h in heads]
    if forms is None:
        forms = [f"w{i}" for i in range(1, n + 1)]
    if upos is None:
        upos = ["NOUN" if h != 0 else "VERB" for h in heads]
    comments = [f"# sent_id = {sent_id}"] if sent_id else []
    tokens = [
        Token(id=i + 1, form=forms[i], lemma=forms[i], upos=upos[i], head=heads[i], deprel=deprels[i])
        for i in range(n)
    ]
    return Sentence(comments=comments, tokens=tokens)


def make_document(head_lists: list[list[int]], prefix: str = "s") -> Document:
    return Document(
        sentences=[
            make_sentence(heads, sent_id=f"{prefix}_{i:03d}") for i, heads in enumerate(head_lists, start=1)
        ]
    )


def random_tree(rng: random.Random, n: int) -> list[int]:
    """Random head assignment forming a single-rooted tree over n words."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    heads = [0] * (n + 1)
    for pos, wid in enumerate(order):
        if pos == 0:
            heads[wid] = 0
        else:
            heads[wid] = order[rng.randrange(pos)]
    return heads[1:]


DEPREL_POOL = ["nsubj", "obj", "obl", "amod", "advmod", "conj", "nmod:poss", "punct", "det", "ccomp"]


def random_sentence(rng: random.Random, n: int, sent_id: str | None = None) -> Sentence:
    heads = random_tree(rng, n)
    deprels = ["root" if h == 0 else rng.choice(DEPREL_POOL) for h in heads]
    upos = ["VERB" if h == 0 else rng.choice(["NOUN", "ADJ", "ADV", "PRON", "PUNCT"]) for h in heads]
    forms = [f"t{i}" for i in range(1, n + 1)]
    return make_sentence(heads, deprels, forms, upos, sent_id=sent_id)


def boun_paths() -> list[Path] | None:
    """Locate the UD_Turkish-BOUN release if present; None when unavailable."""
    candidates = []
    env = os.environ.get("BOUN_TREEBANK_DIR")
    if env:
        candidates.append(Path(env))
    here = Path(__file__).resolve().parent.parent
    candidates.append(here / "data" / "UD_Turkish-BOUN")
    candidates.append(here / "data" / "UD_Turkish-BOUN-master")
    for base in candidates:
        if base.is_dir():
            paths = sorted(base.glob("*.conllu"))
            if paths:
                return paths
    return None


requires_boun = pytest.mark.skipif(
    boun_paths() is None,
    reason="UD_Turkish-BOUN data not found (set BOUN_TREEBANK_DIR or place it under data/)",
)

"""Treebank statistics, word-order profiling, projectivity, and partitioning."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from treekit.conllu import Document, Sentence

SECTION_PREFIXES = {
    "ess": "essays",
    "news": "newspapers",
    "ins": "instructional",
    "pop": "popular culture",
    "bio": "biographical",
}


def base_label(deprel: str | None) -> str | None:
    """Label without its subtype: 'nmod:poss' gives 'nmod'."""
    if deprel is None:
        return None
    return deprel.split(":", 1)[0]


@dataclass
class StatsReport:
    """Corpus-level counts and averages."""

    n_sentences: int
    n_tokens: int
    n_words: int
    tokens_per_sentence: float
    words_per_sentence: float
    avg_arc_length: float
    avg_arc_length_no_punct: float
    n_unique_upos: int
    n_unique_features: int
    n_unique_deprels: int
    deprel_distribution: dict[str, tuple[int, float]] = field(default_factory=dict)


def treebank_stats(doc: Document) -> StatsReport:
    """Compute corpus statistics over single-index words.

    Arc length is |HEAD - ID| over non-root arcs; the no-punct variant drops
    arcs whose dependent is labeled punct.  Deprel percentages are recomputed
    from the counts over all words carrying a label.
    """
    n_sentences = len(doc.sentences)
    n_tokens = 0
    n_words = 0
    arc_sum = arc_count = 0
    arc_sum_np = arc_count_np = 0
    upos_seen: set[str] = set()
    feat_pairs: set[str] = set()
    deprel_counts: dict[str, int] = {}
    for sentence in doc.sentences:
        n_tokens += sentence.n_tokens()
        for w in sentence.words():
            n_words += 1
            if w.upos is not None:
                upos_seen.add(w.upos)
            feat_pairs.update(w.feats.pairs())
            if w.deprel is not None:
                deprel_counts[w.deprel] = deprel_counts.get(w.deprel, 0) + 1
            if w.head is not None and w.head > 0:
                length = abs(w.head - w.id)
                arc_sum += length
                arc_count += 1
                if base_label(w.deprel) != "punct":
                    arc_sum_np += length
                    arc_count_np += 1
    labeled = sum(deprel_counts.values())
    distribution = {
        label: (count, 100.0 * count / labeled if labeled else 0.0)
        for label, count in sorted(deprel_counts.items(), key=lambda kv: (-kv[1], kv[0]))
    }
    return StatsReport(
        n_sentences=n_sentences,
        n_tokens=n_tokens,
        n_words=n_words,
        tokens_per_sentence=n_tokens / n_sentences if n_sentences else 0.0,
        words_per_sentence=n_words / n_sentences if n_sentences else 0.0,
        avg_arc_length=arc_sum / arc_count if arc_count else 0.0,
        avg_arc_length_no_punct=arc_sum_np / arc_count_np if arc_count_np else 0.0,
        n_unique_upos=len(upos_seen),
        n_unique_features=len(feat_pairs),
        n_unique_deprels=len(deprel_counts),
        deprel_distribution=distribution,
    )


CLAUSE_LABELS = frozenset({"conj", "advcl", "ccomp", "acl", "csubj", "parataxis"})
SUBJECT_LABELS = frozenset({"nsubj", "csubj"})


@dataclass
class WordOrderProfile:
    """Counts of linear subject/object/verb arrangements."""

    mode: str
    scope: str
    counts: dict[str, tuple[int, float]] = field(default_factory=dict)

    def total(self) -> int:
        return sum(c for c, _ in self.counts.values())


def word_order_profile(
    doc: Document,
    mode: str = "triples-only",
    scope: str = "all-predicates",
) -> WordOrderProfile:
    """Classify the order of subject, object and predicate per clause.

    A predicate's subject is its leftmost dependent labeled nsubj/csubj, the
    object its leftmost obj dependent (base labels).  mode 'triples-only'
    counts clauses where both are overt; 'pairs-and-triples' also counts the
    two-element orders when only one is.  scope 'all-predicates' walks from
    the root through clausal relations (conj, advcl, ccomp, acl, csubj,
    parataxis); 'main-clause-only' looks at the root predicate alone.
    """
    if mode not in ("triples-only", "pairs-and-triples"):
        raise ValueError(f"unknown mode {mode!r}")
    if scope not in ("all-predicates", "main-clause-only"):
        raise ValueError(f"unknown scope {scope!r}")
    counts: dict[str, int] = {}
    for sentence in doc.sentences:
        words = sentence.words()
        children: dict[int, list] = {}
        for w in words:
            if w.head is not None:
                children.setdefault(w.head, []).append(w)
        predicates = [w for w in words if w.head == 0]
        if scope == "all-predicates":
            frontier = list(predicates)
            seen = {w.id for w in predicates}
            while frontier:
                head = frontier.pop()
                for child in children.get(head.id, ()):
                    if child.id not in seen and base_label(child.deprel) in CLAUSE_LABELS:
                        seen.add(child.id)
                        predicates.append(child)
                        frontier.append(child)
        for pred in predicates:
            deps = children.get(pred.id, ())
            subj = next((d for d in deps if base_label(d.deprel) in SUBJECT_LABELS), None)
            obj = next((d for d in deps if base_label(d.deprel) == "obj"), None)
            positions = []
            if subj is not None:
                positions.append(("S", subj.id))
            if obj is not None:
                positions.append(("O", obj.id))
            if mode == "triples-only" and len(positions) < 2:
                continue
            if not positions:
                continue
            positions.append(("V", pred.id))
            pattern = "".join(letter for letter, _ in sorted(positions, key=lambda p: p[1]))
            counts[pattern] = counts.get(pattern, 0) + 1
    total = sum(counts.values())
    ordered = {
        pattern: (count, 100.0 * count / total if total else 0.0)
        for pattern, count in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    }
    return WordOrderProfile(mode=mode, scope=scope, counts=ordered)


def is_projective(sentence: Sentence) -> bool:
    """True iff no dependency arc crosses another when drawn above the words.

    The root arc hangs from an artificial position 0, so an arc spanning the
    root word counts as crossing.  For a well-formed tree this equals the
    subtree-interval criterion (every word's descendant set occupies a
    contiguous id range), which is what gets computed; non-tree head graphs
    fall back to the pairwise crossing definition.
    """
    words = sentence.words()
    n = len(words)
    heads = {w.id: w.head for w in words}
    if _is_tree(heads, n):
        children: dict[int, list[int]] = {}
        for wid, head in heads.items():
            if head:
                children.setdefault(head, []).append(wid)
        span_min = {wid: wid for wid in heads}
        span_max = {wid: wid for wid in heads}
        size = {wid: 1 for wid in heads}
        # accumulate bottom-up: order nodes by decreasing depth
        depth: dict[int, int] = {}

        def depth_of(wid: int) -> int:
            d = 0
            while heads[wid]:
                wid = heads[wid]
                d += 1
            return d

        for wid in heads:
            depth[wid] = depth_of(wid)
        for wid in sorted(heads, key=lambda w: -depth[w]):
            head = heads[wid]
            if head:
                span_min[head] = min(span_min[head], span_min[wid])
                span_max[head] = max(span_max[head], span_max[wid])
                size[head] += size[wid]
        return all(span_max[w] - span_min[w] + 1 == size[w] for w in heads)
    return not _has_crossing_arcs(words)


def _is_tree(heads: dict[int, int | None], n: int) -> bool:
    roots = [w for w, h in heads.items() if h == 0]
    if len(roots) != 1:
        return False
    for wid, head in heads.items():
        if head is None or head > n or head == wid:
            return False
    for wid in heads:
        seen = set()
        while wid:
            if wid in seen:
                return False
            seen.add(wid)
            wid = heads[wid]
    return True


def _has_crossing_arcs(words) -> bool:
    arcs = [
        (min(w.id, w.head), max(w.id, w.head))
        for w in words
        if w.head is not None and 0 <= w.head <= len(words) and w.head != w.id
    ]
    for i, (a, b) in enumerate(arcs):
        for c, d in arcs[i + 1 :]:
            if a < c < b < d or c < a < d < b:
                return True
    return False


def infer_section(sentence: Sentence, prefixes: dict[str, str] = SECTION_PREFIXES) -> str:
    """Section label from the sent_id prefix before '_'; 'other' if unknown."""
    sid = sentence.sent_id or ""
    prefix = sid.split("_", 1)[0].lower()
    return prefixes.get(prefix, "other")


def split_by_section(doc: Document, prefixes: dict[str, str] = SECTION_PREFIXES) -> list[Document]:
    """Group sentences into per-section documents, ordered by first occurrence."""
    grouped: dict[str, Document] = {}
    for sentence in doc.sentences:
        label = infer_section(sentence, prefixes)
        grouped.setdefault(label, Document(section=label)).sentences.append(sentence)
    return list(grouped.values())


def partition(
    sections: list[Document],
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1),
    seed: int = 0,
) -> tuple[Document, Document, Document]:
    """Assign sentences to train/dev/test per section, deterministically.

    Within each section, dev and test each get ceil(n * ratio) sentences
    chosen by a seeded shuffle; train keeps the rest.  Outputs concatenate
    the sections in input order, sentences in original order.
    """
    if len(ratios) != 3 or any(r < 0 for r in ratios) or ratios[0] <= 0:
        raise ValueError("ratios must be three non-negative numbers with a positive train share")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"ratios must sum to 1, got {sum(ratios)}")
    rng = random.Random(seed)
    train_doc, dev_doc, test_doc = Document(), Document(), Document()
    for section in sections:
        n = len(section.sentences)
        n_dev = math.ceil(n * ratios[1])
        n_test = math.ceil(n * ratios[2])
        if n_dev + n_test > n:
            raise ValueError(
                f"section {section.section or '?'} has {n} sentences, "
                f"fewer than dev+test = {n_dev + n_test}"
            )
        indices = list(range(n))
        rng.shuffle(indices)
        dev_idx = set(indices[:n_dev])
        test_idx = set(indices[n_dev : n_dev + n_test])
        for i, sentence in enumerate(section.sentences):
            if i in dev_idx:
                dev_doc.sentences.append(sentence)
            elif i in test_idx:
                test_doc.sentences.append(sentence)
            else:
                train_doc.sentences.append(sentence)
    return train_doc, dev_doc, test_doc

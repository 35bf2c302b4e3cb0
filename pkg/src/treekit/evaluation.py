"""Attachment, agreement and morphology scoring between two annotations.

Attachment scores follow the span-alignment scheme used for parser shared
tasks: words are aligned by the character spans they occupy in the
concatenated sentence text, so the two sides may tokenize differently.  With
identical tokenization the F1 scores reduce to plain accuracies.
"""

from __future__ import annotations

from dataclasses import dataclass

from treekit.conllu import Document, Sentence
from treekit.analytics import base_label


class EvaluationError(ValueError):
    """Raised when two documents cannot be compared."""


@dataclass(frozen=True)
class AttachmentResult:
    """UAS/LAS precision, recall and F1 plus the underlying counts."""

    gold_words: int
    pred_words: int
    aligned: int
    correct_heads: int
    correct_labeled: int

    @property
    def uas_precision(self) -> float:
        return self.correct_heads / self.pred_words if self.pred_words else 0.0

    @property
    def uas_recall(self) -> float:
        return self.correct_heads / self.gold_words if self.gold_words else 0.0

    @property
    def uas_f1(self) -> float:
        return _f1(self.uas_precision, self.uas_recall)

    @property
    def las_precision(self) -> float:
        return self.correct_labeled / self.pred_words if self.pred_words else 0.0

    @property
    def las_recall(self) -> float:
        return self.correct_labeled / self.gold_words if self.gold_words else 0.0

    @property
    def las_f1(self) -> float:
        return _f1(self.las_precision, self.las_recall)


@dataclass(frozen=True)
class MorphResult:
    """Feature-set accuracy and pooled Name=Value pair scores."""

    words: int
    exact_matches: int
    gold_pairs: int
    pred_pairs: int
    common_pairs: int

    @property
    def token_accuracy(self) -> float:
        return self.exact_matches / self.words if self.words else 0.0

    @property
    def precision(self) -> float:
        if self.pred_pairs == 0:
            # No predicted pairs at all: vacuously correct only if gold is empty too.
            return 1.0 if self.gold_pairs == 0 else 0.0
        return self.common_pairs / self.pred_pairs

    @property
    def recall(self) -> float:
        if self.gold_pairs == 0:
            return 1.0 if self.pred_pairs == 0 else 0.0
        return self.common_pairs / self.gold_pairs

    @property
    def f1(self) -> float:
        return _f1(self.precision, self.recall)


def _f1(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r else 0.0


def _spans(sentence: Sentence) -> dict[tuple[int, int], object]:
    """Map each word to its form's span in the bare concatenation of forms."""
    spans: dict[tuple[int, int], object] = {}
    offset = 0
    for w in sentence.words():
        spans[(offset, offset + len(w.form))] = w
        offset += len(w.form)
    return spans


def _is_punct(word) -> bool:
    return base_label(word.deprel) == "punct"


def attachment_scores(gold: Document, pred: Document, ignore_punct: bool = False) -> AttachmentResult:
    """Score pred against gold, aligning words by character spans.

    A head assignment counts as correct when the aligned gold word's head
    span equals the pred word's head span (root matching root); labeled
    attachment additionally requires the full DEPREL string to match.  With
    ignore_punct, punct-labeled words drop out of each side's own totals.
    """
    if len(gold.sentences) != len(pred.sentences):
        raise EvaluationError(
            f"sentence counts differ: gold {len(gold.sentences)}, pred {len(pred.sentences)}"
        )
    if not gold.sentences:
        raise EvaluationError("nothing to evaluate: empty documents")
    gold_total = pred_total = aligned = heads_ok = labeled_ok = 0
    for g_sentence, p_sentence in zip(gold.sentences, pred.sentences):
        g_spans = _spans(g_sentence)
        p_spans = _spans(p_sentence)
        g_text = "".join(w.form for w in g_sentence.words())
        p_text = "".join(w.form for w in p_sentence.words())
        if g_text != p_text:
            raise EvaluationError(
                f"sentence texts differ near {g_sentence.sent_id or '?'}: "
                f"{g_text[:40]!r} vs {p_text[:40]!r}"
            )
        g_span_of = {w.id: span for span, w in g_spans.items()}
        p_span_of = {w.id: span for span, w in p_spans.items()}
        gold_total += sum(1 for w in g_spans.values() if not (ignore_punct and _is_punct(w)))
        pred_total += sum(1 for w in p_spans.values() if not (ignore_punct and _is_punct(w)))
        for span, p_word in p_spans.items():
            g_word = g_spans.get(span)
            if g_word is None:
                continue
            if ignore_punct and (_is_punct(g_word) or _is_punct(p_word)):
                continue
            aligned += 1
            if g_word.head is None or p_word.head is None:
                continue
            if g_word.head == 0 or p_word.head == 0:
                head_match = g_word.head == 0 and p_word.head == 0
            else:
                g_head_span = g_span_of.get(g_word.head)
                head_match = g_head_span is not None and g_head_span == p_span_of.get(p_word.head)
            if head_match:
                heads_ok += 1
                if g_word.deprel == p_word.deprel:
                    labeled_ok += 1
    return AttachmentResult(
        gold_words=gold_total,
        pred_words=pred_total,
        aligned=aligned,
        correct_heads=heads_ok,
        correct_labeled=labeled_ok,
    )


def cohen_kappa(a: list[str], b: list[str]) -> float:
    """Chance-corrected agreement between two equal-length label sequences."""
    if len(a) != len(b):
        raise EvaluationError(f"sequence lengths differ: {len(a)} vs {len(b)}")
    if not a:
        raise EvaluationError("cannot compute agreement over empty sequences")
    n = len(a)
    observed = sum(1 for x, y in zip(a, b) if x == y) / n
    counts_a: dict[str, int] = {}
    counts_b: dict[str, int] = {}
    for x in a:
        counts_a[x] = counts_a.get(x, 0) + 1
    for y in b:
        counts_b[y] = counts_b.get(y, 0) + 1
    expected = sum(counts_a[label] * counts_b.get(label, 0) for label in counts_a) / (n * n)
    if expected == 1.0:
        # both annotators used a single identical label everywhere
        return 1.0
    return (observed - expected) / (1.0 - expected)


def _matched_words(gold: Document, pred: Document) -> list[tuple[object, object]]:
    if len(gold.sentences) != len(pred.sentences):
        raise EvaluationError(
            f"sentence counts differ: gold {len(gold.sentences)}, pred {len(pred.sentences)}"
        )
    pairs = []
    for g_sentence, p_sentence in zip(gold.sentences, pred.sentences):
        g_words = g_sentence.words()
        p_words = p_sentence.words()
        if [w.form for w in g_words] != [w.form for w in p_words]:
            raise EvaluationError(
                f"tokenization differs near {g_sentence.sent_id or '?'}; "
                "identical tokenization is required here"
            )
        pairs.extend(zip(g_words, p_words))
    return pairs


def morph_scores(gold: Document, pred: Document) -> MorphResult:
    """Compare FEATS annotations word by word; requires identical tokenization."""
    pairs = _matched_words(gold, pred)
    if not pairs:
        raise EvaluationError("nothing to evaluate: no words")
    exact = gold_pairs = pred_pairs = common = 0
    for g_word, p_word in pairs:
        if g_word.feats == p_word.feats:
            exact += 1
        g_set = g_word.feats.pairs()
        p_set = p_word.feats.pairs()
        gold_pairs += len(g_set)
        pred_pairs += len(p_set)
        common += len(g_set & p_set)
    return MorphResult(
        words=len(pairs),
        exact_matches=exact,
        gold_pairs=gold_pairs,
        pred_pairs=pred_pairs,
        common_pairs=common,
    )


def deprel_sequences(gold: Document, pred: Document) -> tuple[list[str], list[str]]:
    """Full DEPREL strings of positionally aligned words, for agreement scores."""
    pairs = _matched_words(gold, pred)
    gold_labels = [g.deprel or "_" for g, _ in pairs]
    pred_labels = [p.deprel or "_" for _, p in pairs]
    return gold_labels, pred_labels

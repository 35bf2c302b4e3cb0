"""Token-level edit operations: split, join, and single-field updates.

All operations are pure: they return a fresh Sentence and leave the input
untouched, so callers can keep undo history or apply edits under a lock.
Renumbering and head remapping are handled here; vocabulary-level problems
(unknown tags and labels, broken trees) are deliberately representable and
left to validation, matching how annotators actually work: a sentence may
pass through invalid states between edits.
"""

from __future__ import annotations

from treekit.conllu import EMPTY, FeatureSet, Sentence, Token, parse_feats

EDITABLE_FIELDS = ("FORM", "LEMMA", "UPOS", "XPOS", "FEATS", "HEAD", "DEPREL", "MISC")


class EditError(ValueError):
    """Raised when an edit cannot be applied to the given sentence."""


def _word_ids(sentence: Sentence) -> list[int]:
    return [t.id for t in sentence.tokens if not t.is_range]


def _is_ancestor(sentence: Sentence, anc_id: int, node_id: int) -> bool:
    """True when anc_id lies on node_id's head chain.

    Walks upward at most once per word so malformed inputs with head cycles
    terminate instead of looping.
    """
    by_id = {w.id: w for w in sentence.words()}
    seen: set[int] = set()
    cur = by_id.get(node_id)
    while cur is not None:
        h = cur.head
        if h is None or h == 0 or h in seen:
            return False
        if h == anc_id:
            return True
        seen.add(h)
        cur = by_id.get(h)
    return False


def _require_word(sentence: Sentence, token_id: int) -> Token:
    for t in sentence.tokens:
        if not t.is_range and t.id == token_id:
            return t
    raise EditError(f"no word with id {token_id}")


def split_token(
    sentence: Sentence,
    token_id: int,
    first: str,
    second: str,
    allow_mismatch: bool = False,
) -> Sentence:
    """Split word token_id into two adjacent words carrying forms first/second.

    The first part keeps the original annotation; the second starts blank
    (LEMMA/UPOS/XPOS/FEATS) and attaches to the first with deprel 'dep'
    pending annotation.  The original MISC moves to the second part so
    spacing information stays glued to the token that precedes the following
    whitespace.  Dependents of the split token keep pointing at the first
    part.  Unless allow_mismatch is set, first + second must equal the
    original surface form.
    """
    if not first or not second:
        raise EditError("both parts of a split need a non-empty form")
    original = _require_word(sentence, token_id)
    if not allow_mismatch and first + second != original.form:
        raise EditError(
            f"split parts {first!r} + {second!r} do not concatenate to {original.form!r}"
        )

    def bump(h: int | None) -> int | None:
        if h is not None and h > token_id:
            return h + 1
        return h

    out = Sentence(comments=list(sentence.comments), note=sentence.note)
    for t in sentence.tokens:
        if t.is_range:
            a, b = t.id
            if b < token_id:
                new_id = (a, b)
            elif a > token_id:
                new_id = (a + 1, b + 1)
            else:
                new_id = (a, b + 1)
            c = t.clone()
            c.id = new_id
            c.head = bump(c.head)
            out.tokens.append(c)
        elif t.id == token_id:
            kept = t.clone()
            kept.form = first
            kept.head = bump(t.head)
            kept.misc = []
            out.tokens.append(kept)
            out.tokens.append(
                Token(
                    id=token_id + 1,
                    form=second,
                    head=token_id,
                    deprel="dep",
                    misc=list(t.misc),
                )
            )
        else:
            c = t.clone()
            if t.id > token_id:
                c.id = t.id + 1
            c.head = bump(c.head)
            out.tokens.append(c)
    return out


def join_tokens(sentence: Sentence, token_id: int) -> Sentence:
    """Merge words token_id and token_id+1 into one word.

    The merged token keeps the annotation of whichever part was the head of
    the other.  When neither heads the other directly, the part that is an
    ancestor of the other wins; its head is the only choice guaranteed to lie
    outside the merged subtree, so the result stays a tree (in particular the
    root survives being merged into).  Disjoint parts fall back to the left
    one.  Dependents of both parts move to the merged token, later ids shift
    down by one, and the right part's MISC survives, mirroring where
    split_token puts it.
    """
    left = _require_word(sentence, token_id)
    right = _require_word(sentence, token_id + 1)
    for t in sentence.tokens:
        if t.is_range:
            a, b = t.id
            covers_left = a <= token_id <= b
            covers_right = a <= token_id + 1 <= b
            if covers_left != covers_right:
                raise EditError(
                    f"range token {t.id_str} covers only one side of the merge"
                )
    if left.head == token_id or right.head == token_id + 1:
        raise EditError("cannot join a token that points at itself")
    if left.head == token_id + 1 and right.head == token_id:
        raise EditError("tokens head each other; merging would create a self-loop")

    def drop(h: int | None) -> int | None:
        if h is None:
            return None
        if h in (token_id, token_id + 1):
            return token_id
        if h > token_id + 1:
            return h - 1
        return h

    if left.head == token_id + 1:
        donor = right
    elif right.head == token_id:
        donor = left
    elif _is_ancestor(sentence, token_id + 1, token_id):
        donor = right
    else:
        donor = left
    merged = donor.clone()
    merged.id = token_id
    merged.form = left.form + right.form
    merged.misc = list(right.misc)
    merged.head = drop(donor.head)

    out = Sentence(comments=list(sentence.comments), note=sentence.note)
    for t in sentence.tokens:
        if t.is_range:
            a, b = t.id
            if b < token_id:
                new_id = (a, b)
            elif a > token_id + 1:
                new_id = (a - 1, b - 1)
            else:
                new_id = (a, b - 1)
            if new_id[0] == new_id[1]:
                raise EditError(f"range token {t.id_str} would collapse to a single word")
            c = t.clone()
            c.id = new_id
            c.head = drop(c.head)
            out.tokens.append(c)
        elif t.id == token_id:
            out.tokens.append(merged)
        elif t.id == token_id + 1:
            continue
        else:
            c = t.clone()
            if t.id > token_id + 1:
                c.id = t.id - 1
            c.head = drop(c.head)
            out.tokens.append(c)
    return out


def set_field(sentence: Sentence, token_id: int, name: str, value) -> Sentence:
    """Set one editable column, or one FEATS subfield, on a word.

    Column names are the CoNLL-U ones (case-insensitive); any other name is
    treated as a feature name inside FEATS, where an empty value removes the
    feature.  HEAD values are range-checked and self-loops rejected here;
    whether the resulting tree is sound is validation's concern.
    """
    out = sentence.clone()
    target = None
    for t in out.tokens:
        if not t.is_range and t.id == token_id:
            target = t
            break
    if target is None:
        raise EditError(f"no word with id {token_id}")

    column = name.upper() if name.upper() in EDITABLE_FIELDS else None
    if column == "FORM":
        text = _as_text(value)
        if not text or text == EMPTY:
            raise EditError("FORM must be a non-empty surface string")
        target.form = text
    elif column in ("LEMMA", "UPOS", "XPOS", "DEPREL"):
        text = _as_text(value)
        setattr(target, column.lower(), None if text in ("", EMPTY) else text)
    elif column == "HEAD":
        target.head = _parse_head(value, token_id, len(_word_ids(out)))
    elif column == "FEATS":
        target.feats = value.copy() if isinstance(value, FeatureSet) else parse_feats(_as_text(value) or EMPTY)
    elif column == "MISC":
        text = _as_text(value)
        target.misc = [] if text in ("", EMPTY) else text.split("|")
    else:
        text = _as_text(value)
        if text in ("", EMPTY):
            target.feats.remove(name)
        else:
            target.feats.set(name, text)
    return out


def _as_text(value) -> str:
    if value is None:
        return ""
    return str(value)


def _parse_head(value, token_id: int, n: int) -> int:
    text = _as_text(value).strip()
    if not text.isdigit():
        raise EditError(f"HEAD must be a non-negative integer, got {text!r}")
    head = int(text)
    if head > n:
        raise EditError(f"HEAD {head} out of range 0..{n}")
    if head == token_id:
        raise EditError(f"HEAD cannot equal the token's own id ({token_id})")
    return head

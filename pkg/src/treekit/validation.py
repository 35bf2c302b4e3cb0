"""Schema-driven validation of parsed sentences.

Eight rules, each with a stable machine-readable code:

  id-sequence     word ids are exactly 1..n in order
  single-root     exactly one token has HEAD 0, and deprel 'root' is used
                  exactly there
  head-range      every HEAD is present, within 0..n, and never the token's
                  own id
  connected-tree  the head graph is acyclic and every word is reachable from
                  the root
  unknown-upos    UPOS present and listed in the schema
  unknown-deprel  DEPREL present and listed in the schema
  feats-format    feature names/values use the legal charset and, when the
                  schema carries a value whitelist, every pair is listed
  range-fields    range tokens leave HEAD, DEPREL and FEATS empty

Validation never mutates its input; editors rely on invalid intermediate
states being representable.
"""

from __future__ import annotations

from dataclasses import dataclass

from treekit.conllu import Document, Sentence

ID_SEQUENCE = "id-sequence"
SINGLE_ROOT = "single-root"
HEAD_RANGE = "head-range"
CONNECTED_TREE = "connected-tree"
UNKNOWN_UPOS = "unknown-upos"
UNKNOWN_DEPREL = "unknown-deprel"
FEATS_FORMAT = "feats-format"
RANGE_FIELDS = "range-fields"
DUPLICATE_SENT_ID = "duplicate-sent-id"

CODES = (
    ID_SEQUENCE,
    SINGLE_ROOT,
    HEAD_RANGE,
    CONNECTED_TREE,
    UNKNOWN_UPOS,
    UNKNOWN_DEPREL,
    FEATS_FORMAT,
    RANGE_FIELDS,
    DUPLICATE_SENT_ID,
)

UNIVERSAL_UPOS = frozenset(
    "ADJ ADP ADV AUX CCONJ DET INTJ NOUN NUM PART PRON PROPN PUNCT SCONJ SYM VERB X".split()
)

# Dependency label inventory used by default; matches the released Turkish
# treebanks this toolkit targets.
DEFAULT_DEPRELS = frozenset(
    (
        "acl advcl advcl:cond advmod advmod:emph amod appos aux aux:q case cc cc:preconj "
        "ccomp clf compound compound:lvc compound:redup conj cop csubj dep det discourse "
        "dislocated fixed flat goeswith iobj list mark nmod nmod:poss nsubj nummod obj obl "
        "orphan parataxis punct root vocative xcomp"
    ).split()
)


@dataclass(frozen=True)
class Schema:
    """Validation vocabulary: UPOS tags, DEPREL labels, optional FEATS whitelist."""

    upos: frozenset[str] = UNIVERSAL_UPOS
    deprels: frozenset[str] = DEFAULT_DEPRELS
    # None: any well-formed FEATS accepted.  Otherwise a map from feature name
    # to its allowed values, where None allows any value for that name.
    feature_values: dict[str, frozenset[str] | None] | None = None

    def __post_init__(self) -> None:
        if not self.upos:
            raise ValueError("schema needs at least one UPOS tag")
        if "root" not in self.deprels or "punct" not in self.deprels:
            raise ValueError("schema deprel set must include 'root' and 'punct'")

    def allows_pair(self, name: str, value: str) -> bool:
        if self.feature_values is None:
            return True
        if name not in self.feature_values:
            return False
        allowed = self.feature_values[name]
        return allowed is None or value in allowed


DEFAULT_SCHEMA = Schema()


def load_schema(path: str) -> Schema:
    """Read a schema file with [upos], [deprel] and [feature] sections.

    One entry per line; blank lines and '#' comments ignored.  Feature lines
    are either 'Name' (any value) or 'Name=Value'.  A section that is absent
    keeps the default inventory; a present [feature] section switches the
    whitelist on.
    """
    upos: set[str] = set()
    deprels: set[str] = set()
    features: dict[str, set[str] | None] = {}
    seen: set[str] = set()
    section = None
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("[") and line.endswith("]"):
                section = line[1:-1].strip().lower()
                if section not in ("upos", "deprel", "feature"):
                    raise ValueError(f"unknown schema section [{section}]")
                seen.add(section)
                continue
            if section == "upos":
                upos.add(line)
            elif section == "deprel":
                deprels.add(line)
            elif section == "feature":
                name, eq, value = line.partition("=")
                name = name.strip()
                if eq:
                    current = features.setdefault(name, set())
                    if current is not None:
                        current.add(value.strip())
                else:
                    features[name] = None
            else:
                raise ValueError(f"schema entry outside any section: {line!r}")
    return Schema(
        upos=frozenset(upos) if "upos" in seen else UNIVERSAL_UPOS,
        deprels=frozenset(deprels) if "deprel" in seen else DEFAULT_DEPRELS,
        feature_values=(
            {n: (frozenset(v) if v is not None else None) for n, v in features.items()}
            if "feature" in seen
            else None
        ),
    )


@dataclass(frozen=True)
class ValidationIssue:
    """One rule violation, addressed by sentence and (usually) token."""

    sentence_ref: str
    token: str | None
    code: str
    message: str

    def __str__(self) -> str:
        where = f"{self.sentence_ref}:{self.token}" if self.token else self.sentence_ref
        return f"{where}\t{self.code}\t{self.message}"


def _feat_part_ok(part: str) -> bool:
    return bool(part) and "=" not in part and "|" not in part and not any(c.isspace() for c in part)


def validate_sentence(sentence: Sentence, schema: Schema = DEFAULT_SCHEMA, index: int | None = None) -> list[ValidationIssue]:
    """Check one sentence against all rules; empty result means fully valid."""
    ref = sentence.sent_id or (f"#{index}" if index is not None else "#?")
    issues: list[ValidationIssue] = []

    def add(token: str | None, code: str, message: str) -> None:
        issues.append(ValidationIssue(ref, token, code, message))

    words = sentence.words()
    n = len(words)

    sequence_ok = [w.id for w in words] == list(range(1, n + 1))
    if not sequence_ok:
        got = ", ".join(w.id_str for w in words) or "(none)"
        add(None, ID_SEQUENCE, f"word ids must be 1..{n} in order, found: {got}")

    roots = [w for w in words if w.head == 0]
    if len(roots) != 1:
        add(None, SINGLE_ROOT, f"expected exactly one token with HEAD 0, found {len(roots)}")

    heads_ok = True
    for t in sentence.tokens:
        if t.is_range:
            bad = [
                name
                for name, filled in (
                    ("HEAD", t.head is not None),
                    ("DEPREL", t.deprel is not None),
                    ("FEATS", bool(t.feats)),
                )
                if filled
            ]
            if bad:
                add(t.id_str, RANGE_FIELDS, f"range token must leave {'/'.join(bad)} empty")
            continue
        if t.head is None:
            heads_ok = False
            add(t.id_str, HEAD_RANGE, "missing HEAD value")
        elif t.head > n:
            heads_ok = False
            add(t.id_str, HEAD_RANGE, f"HEAD {t.head} out of range 0..{n}")
        elif t.head == t.id:
            heads_ok = False
            add(t.id_str, HEAD_RANGE, f"HEAD equals token id {t.id} (self-loop)")
        if t.head == 0 and t.deprel is not None and t.deprel != "root":
            add(t.id_str, SINGLE_ROOT, f"token with HEAD 0 must use deprel 'root', found {t.deprel!r}")
        elif t.deprel == "root" and t.head not in (0, None):
            add(t.id_str, SINGLE_ROOT, f"deprel 'root' on token with HEAD {t.head}")
        if t.upos is None:
            add(t.id_str, UNKNOWN_UPOS, "missing UPOS value")
        elif t.upos not in schema.upos:
            add(t.id_str, UNKNOWN_UPOS, f"unknown UPOS value: {t.upos!r}")
        if t.deprel is None:
            add(t.id_str, UNKNOWN_DEPREL, "missing DEPREL value")
        elif t.deprel not in schema.deprels:
            add(t.id_str, UNKNOWN_DEPREL, f"unknown DEPREL label: {t.deprel!r}")
        for name, value in t.feats.items():
            if not _feat_part_ok(name) or not _feat_part_ok(value):
                add(t.id_str, FEATS_FORMAT, f"malformed feature pair: {name!r}={value!r}")
            elif not schema.allows_pair(name, value):
                add(t.id_str, FEATS_FORMAT, f"feature pair not in schema: '{name}={value}'")

    if sequence_ok and heads_ok and len(roots) == 1:
        reached = {roots[0].id}
        frontier = [roots[0].id]
        children: dict[int, list[int]] = {}
        for w in words:
            children.setdefault(w.head, []).append(w.id)
        while frontier:
            nxt = []
            for h in frontier:
                for c in children.get(h, ()):
                    if c not in reached:
                        reached.add(c)
                        nxt.append(c)
            frontier = nxt
        unreachable = sorted(w.id for w in words if w.id not in reached)
        if unreachable:
            ids = ", ".join(str(i) for i in unreachable)
            add(None, CONNECTED_TREE, f"tokens not reachable from the root (cycle or detached): {ids}")

    return issues


def validate_document(doc: Document, schema: Schema = DEFAULT_SCHEMA) -> list[ValidationIssue]:
    """Validate every sentence plus document-level sent_id uniqueness."""
    issues: list[ValidationIssue] = []
    first_seen: dict[str, int] = {}
    for i, sentence in enumerate(doc.sentences, start=1):
        sid = sentence.sent_id
        if sid is not None:
            if sid in first_seen:
                issues.append(
                    ValidationIssue(
                        sid, None, DUPLICATE_SENT_ID,
                        f"sent_id {sid!r} already used by sentence #{first_seen[sid]}",
                    )
                )
            else:
                first_seen[sid] = i
        issues.extend(validate_sentence(sentence, schema, index=i))
    return issues

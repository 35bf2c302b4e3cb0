"""CoNLL-U reading and writing with byte-exact round trips.

A file is a sequence of sentence blocks separated by blank lines.  Each block
holds comment lines (verbatim, including ``# key = value`` metadata) followed
by 10-column tab-separated token lines.  Parsing is tolerant of CRLF endings,
a UTF-8 BOM, extra blank lines and a missing final blank line; serialization
always emits the canonical shape (LF, one blank line after every sentence,
FEATS sorted), so canonical input round-trips byte-identically and any other
accepted input is stable after one pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

EMPTY = "_"

# Column indices of a token line.
ID, FORM, LEMMA, UPOS, XPOS, FEATS, HEAD, DEPREL, DEPS, MISC = range(10)
COLUMN_NAMES = ("ID", "FORM", "LEMMA", "UPOS", "XPOS", "FEATS", "HEAD", "DEPREL", "DEPS", "MISC")


class ParseError(ValueError):
    """Raised for input that is not structurally valid CoNLL-U."""

    def __init__(self, message: str, line_no: int | None = None, text: str | None = None):
        self.message = message
        self.line_no = line_no
        self.text = text
        where = f"line {line_no}: " if line_no is not None else ""
        shown = f" {text!r}" if text else ""
        super().__init__(f"{where}{message}{shown}")


class SerializationError(ValueError):
    """Raised when a document is too broken to write back as CoNLL-U."""


class FeatsError(ValueError):
    """Raised for a malformed FEATS string."""


def _check_feat_part(part: str, pair: str) -> None:
    if not part or "=" in part or "|" in part or any(c.isspace() for c in part):
        raise FeatsError(f"malformed feature pair {pair!r}")


class FeatureSet:
    """Mapping of feature names to values; serializes sorted case-insensitively."""

    __slots__ = ("_entries",)

    def __init__(self, entries: dict[str, str] | Iterable[tuple[str, str]] | None = None):
        self._entries: dict[str, str] = dict(entries) if entries else {}

    @classmethod
    def parse(cls, text: str) -> "FeatureSet":
        """Parse a FEATS column value; '_' or '' gives an empty set."""
        fs = cls()
        if text in (EMPTY, ""):
            return fs
        for pair in text.split("|"):
            name, eq, value = pair.partition("=")
            if not eq:
                raise FeatsError(f"feature pair without '=': {pair!r}")
            _check_feat_part(name, pair)
            _check_feat_part(value, pair)
            if name in fs._entries:
                raise FeatsError(f"duplicate feature name {name!r}")
            fs._entries[name] = value
        return fs

    def __str__(self) -> str:
        if not self._entries:
            return EMPTY
        ordered = sorted(self._entries, key=lambda n: (n.lower(), n))
        return "|".join(f"{n}={self._entries[n]}" for n in ordered)

    def __repr__(self) -> str:
        return f"FeatureSet({self._entries!r})"

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FeatureSet):
            return self._entries == other._entries
        return NotImplemented

    def get(self, name: str, default: str | None = None) -> str | None:
        return self._entries.get(name, default)

    def set(self, name: str, value: str) -> None:
        _check_feat_part(name, f"{name}={value}")
        _check_feat_part(value, f"{name}={value}")
        self._entries[name] = value

    def remove(self, name: str) -> None:
        self._entries.pop(name, None)

    def items(self) -> list[tuple[str, str]]:
        """Entries in canonical (sorted) order."""
        return [(n, self._entries[n]) for n in sorted(self._entries, key=lambda n: (n.lower(), n))]

    def pairs(self) -> set[str]:
        """Entries as 'Name=Value' strings, for pooled comparisons."""
        return {f"{n}={v}" for n, v in self._entries.items()}

    def copy(self) -> "FeatureSet":
        return FeatureSet(self._entries)


def parse_feats(text: str) -> FeatureSet:
    """Parse a FEATS column value into a FeatureSet."""
    return FeatureSet.parse(text)


@dataclass
class Token:
    """One token line.  id is an int for words, an (a, b) tuple for ranges."""

    id: int | tuple[int, int]
    form: str
    lemma: str | None = None
    upos: str | None = None
    xpos: str | None = None
    feats: FeatureSet = field(default_factory=FeatureSet)
    head: int | None = None
    deprel: str | None = None
    deps: str = EMPTY
    misc: list[str] = field(default_factory=list)

    @property
    def is_range(self) -> bool:
        return isinstance(self.id, tuple)

    @property
    def id_str(self) -> str:
        if isinstance(self.id, tuple):
            return f"{self.id[0]}-{self.id[1]}"
        return str(self.id)

    def to_conllu(self) -> str:
        cols = [
            self.id_str,
            self.form,
            self.lemma if self.lemma is not None else EMPTY,
            self.upos if self.upos is not None else EMPTY,
            self.xpos if self.xpos is not None else EMPTY,
            str(self.feats),
            str(self.head) if self.head is not None else EMPTY,
            self.deprel if self.deprel is not None else EMPTY,
            self.deps,
            "|".join(self.misc) if self.misc else EMPTY,
        ]
        return "\t".join(cols)

    def clone(self) -> "Token":
        return Token(
            id=self.id,
            form=self.form,
            lemma=self.lemma,
            upos=self.upos,
            xpos=self.xpos,
            feats=self.feats.copy(),
            head=self.head,
            deprel=self.deprel,
            deps=self.deps,
            misc=list(self.misc),
        )


@dataclass
class Sentence:
    """One sentence block: verbatim comment lines plus tokens in file order."""

    comments: list[str] = field(default_factory=list)
    tokens: list[Token] = field(default_factory=list)
    note: str | None = None  # sidecar annotation, never serialized to CoNLL-U

    def meta(self, key: str) -> str | None:
        """Value of the first '# key = value' comment with this key."""
        for line in self.comments:
            body = line[1:].strip() if line.startswith("#") else line
            name, eq, value = body.partition("=")
            if eq and name.strip() == key:
                return value.strip()
        return None

    @property
    def sent_id(self) -> str | None:
        return self.meta("sent_id")

    @property
    def text(self) -> str | None:
        return self.meta("text")

    def words(self) -> list[Token]:
        """Single-index tokens, in order."""
        return [t for t in self.tokens if not t.is_range]

    def ranges(self) -> list[Token]:
        return [t for t in self.tokens if t.is_range]

    def word(self, wid: int) -> Token:
        for t in self.tokens:
            if t.id == wid:
                return t
        raise KeyError(f"no token with id {wid}")

    def n_words(self) -> int:
        return sum(1 for t in self.tokens if not t.is_range)

    def n_tokens(self) -> int:
        """Surface tokens: range lines count once, covered words are skipped."""
        covered: set[int] = set()
        for t in self.tokens:
            if t.is_range:
                covered.update(range(t.id[0], t.id[1] + 1))
        return sum(1 for t in self.tokens if t.is_range or t.id not in covered)

    def clone(self) -> "Sentence":
        return Sentence(
            comments=list(self.comments),
            tokens=[t.clone() for t in self.tokens],
            note=self.note,
        )

    def to_conllu(self) -> str:
        check_sentence(self)
        lines = list(self.comments)
        lines.extend(t.to_conllu() for t in self.tokens)
        return "\n".join(lines) + "\n"


@dataclass
class Document:
    """An ordered collection of sentences, optionally tagged with a section."""

    sentences: list[Sentence] = field(default_factory=list)
    section: str | None = None
    source_path: str | None = None

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)

    def by_sent_id(self, sent_id: str) -> Sentence | None:
        for s in self.sentences:
            if s.sent_id == sent_id:
                return s
        return None

    def n_words(self) -> int:
        return sum(s.n_words() for s in self.sentences)

    def n_tokens(self) -> int:
        return sum(s.n_tokens() for s in self.sentences)


def check_sentence(sentence: Sentence) -> None:
    """Raise SerializationError unless tokens form a well-ordered block.

    Word ids must be exactly 1..n in order; every range a-b must sit directly
    before word a with a < b <= n and no overlap with other ranges.  Anything
    else would not survive a parse of the output.
    """
    expected = 1
    open_range_end = 0
    for t in sentence.tokens:
        if t.is_range:
            a, b = t.id
            if a != expected:
                raise SerializationError(f"range token {t.id_str} does not start at word {expected}")
            if b <= a:
                raise SerializationError(f"range token {t.id_str} is not a forward span")
            if a <= open_range_end:
                raise SerializationError(f"range token {t.id_str} overlaps a previous range")
            open_range_end = b
        else:
            if t.id != expected:
                raise SerializationError(f"token id {t.id_str} breaks the 1..n sequence (expected {expected})")
            if not t.form:
                raise SerializationError(f"token {t.id_str} has an empty FORM")
            expected += 1
    n = expected - 1
    if open_range_end > n:
        raise SerializationError(f"range token extends past the last word ({open_range_end} > {n})")
    if n == 0:
        raise SerializationError("sentence has no tokens")


def _parse_id(text: str, line_no: int, line: str) -> int | tuple[int, int]:
    if "-" in text:
        a_str, _, b_str = text.partition("-")
        if a_str.isdigit() and b_str.isdigit():
            a, b = int(a_str), int(b_str)
            if b <= a:
                raise ParseError(f"range ID {text} is not a forward span", line_no, line)
            return (a, b)
        raise ParseError(f"malformed ID {text!r}", line_no, line)
    if text.isdigit() and text != "0":
        return int(text)
    raise ParseError(f"malformed ID {text!r}", line_no, line)


def _parse_token(cols: list[str], line_no: int, line: str) -> Token:
    tid = _parse_id(cols[ID], line_no, line)
    head_text = cols[HEAD]
    if head_text == EMPTY:
        head = None
    elif head_text.isdigit():
        head = int(head_text)
    else:
        raise ParseError(f"malformed HEAD {head_text!r}", line_no, line)
    try:
        feats = FeatureSet.parse(cols[FEATS])
    except FeatsError as exc:
        raise ParseError(str(exc), line_no, line) from exc
    return Token(
        id=tid,
        form=cols[FORM],
        lemma=None if cols[LEMMA] == EMPTY else cols[LEMMA],
        upos=None if cols[UPOS] == EMPTY else cols[UPOS],
        xpos=None if cols[XPOS] == EMPTY else cols[XPOS],
        feats=feats,
        head=head,
        deprel=None if cols[DEPREL] == EMPTY else cols[DEPREL],
        deps=cols[DEPS],
        misc=[] if cols[MISC] == EMPTY else cols[MISC].split("|"),
    )


def parse_document(source: str | IO[str]) -> Document:
    """Parse CoNLL-U text (or a text stream) into a Document."""
    text = source if isinstance(source, str) else source.read()
    if text.startswith("﻿"):
        text = text[1:]
    text = text.replace("\r\n", "\n").replace("\r", "\n")

    doc = Document()
    comments: list[str] = []
    tokens: list[Token] = []
    expected = 1
    open_range_end = 0

    def flush(line_no: int) -> None:
        nonlocal comments, tokens, expected, open_range_end
        if not comments and not tokens:
            return
        if not tokens:
            raise ParseError("sentence block with comments but no tokens", line_no)
        if open_range_end >= expected:
            raise ParseError(
                f"range token extends past the last word ({open_range_end} > {expected - 1})", line_no
            )
        doc.sentences.append(Sentence(comments=comments, tokens=tokens))
        comments, tokens = [], []
        expected, open_range_end = 1, 0

    line_no = 0
    for line_no, line in enumerate(text.split("\n"), start=1):
        if not line.strip():
            flush(line_no)
            continue
        if line.startswith("#"):
            if tokens:
                raise ParseError("comment line inside a token block", line_no, line)
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(f"expected 10 columns, found {len(cols)}", line_no, line)
        for i, col in enumerate(cols):
            if col == "":
                raise ParseError(f"empty {COLUMN_NAMES[i]} column (use '_')", line_no, line)
        token = _parse_token(cols, line_no, line)
        if token.is_range:
            a, b = token.id
            if a != expected:
                raise ParseError(f"range token {token.id_str} does not start at word {expected}", line_no, line)
            if a <= open_range_end:
                raise ParseError(f"range token {token.id_str} overlaps a previous range", line_no, line)
            open_range_end = b
        else:
            if token.id != expected:
                raise ParseError(f"ID {token.id} out of sequence (expected {expected})", line_no, line)
            expected += 1
        tokens.append(token)
    flush(line_no + 1)
    return doc


def parse_file(path: str) -> Document:
    """Parse a CoNLL-U file from disk."""
    with open(path, encoding="utf-8") as fh:
        doc = parse_document(fh)
    doc.source_path = path
    return doc


def serialize_document(doc: Document) -> str:
    """Serialize a Document to canonical CoNLL-U text."""
    return "".join(s.to_conllu() + "\n" for s in doc.sentences)


def write_file(doc: Document, path: str) -> int:
    """Write a Document to disk; returns the byte count written."""
    data = serialize_document(doc).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)

"""HTTP service exposing a document for browsing, editing and note taking.

The service holds one parsed document in memory.  Edits go through the
editing module one sentence at a time, guarded by a revision counter so a
stale client cannot clobber a newer state.  The document is written back
only on an explicit save; notes go to a sidecar file immediately.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Literal, Union

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from treekit.analytics import infer_section
from treekit.conllu import Document, Sentence, Token, parse_file, serialize_document
from treekit.editing import EditError, join_tokens, set_field, split_token
from treekit.validation import DEFAULT_SCHEMA, Schema, validate_sentence


class TokenPayload(BaseModel):
    id: str
    form: str
    lemma: str | None
    upos: str | None
    xpos: str | None
    feats: str
    head: int | None
    deprel: str | None
    deps: str | None
    misc: str


class IssuePayload(BaseModel):
    sentence: str
    token: str | None
    code: str
    message: str


class SentencePayload(BaseModel):
    ref: str
    index: int
    sent_id: str | None
    comments: list[str]
    tokens: list[TokenPayload]
    note: str | None
    issues: list[IssuePayload]
    revision: int


class DocumentSummary(BaseModel):
    path: str
    sentences: int
    words: int
    tokens: int
    sections: list[str]
    sent_ids: list[str | None]
    revision: int
    dirty: bool


class SetFieldEdit(BaseModel):
    op: Literal["set_field"]
    token_id: int
    field: str
    value: str = ""


class SplitEdit(BaseModel):
    op: Literal["split"]
    token_id: int
    first: str
    second: str
    allow_mismatch: bool = False


class JoinEdit(BaseModel):
    op: Literal["join"]
    token_id: int


Edit = Union[SetFieldEdit, SplitEdit, JoinEdit]


class EditRequest(BaseModel):
    revision: int
    edit: Edit = Field(discriminator="op")


class NoteRequest(BaseModel):
    text: str


class NotePayload(BaseModel):
    sent_id: str
    note: str | None


class SaveResult(BaseModel):
    path: str
    bytes_written: int
    revision: int
    dirty: bool


class SchemaPayload(BaseModel):
    upos: list[str]
    deprels: list[str]
    feature_values: dict[str, list[str] | None] | None


def _escape_note(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _unescape_note(text: str) -> str:
    out = []
    it = iter(text)
    for ch in it:
        if ch != "\\":
            out.append(ch)
            continue
        nxt = next(it, "")
        out.append({"n": "\n", "t": "\t", "\\": "\\"}.get(nxt, nxt))
    return "".join(out)


def _atomic_write(path: Path, data: bytes) -> int:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    tmp.replace(path)
    return len(data)


class DocumentSession:
    """One open document plus its note store and revision counter."""

    def __init__(self, path: str | Path, schema: Schema = DEFAULT_SCHEMA) -> None:
        self.path = Path(path)
        self.schema = schema
        self.document: Document = parse_file(str(self.path))
        self.notes_path = self.path.with_name(self.path.name + ".notes")
        self.notes: dict[str, str] = self._load_notes()
        self.revision = 0
        self.dirty = False
        self.lock = threading.Lock()

    def _load_notes(self) -> dict[str, str]:
        if not self.notes_path.exists():
            return {}
        notes: dict[str, str] = {}
        for line in self.notes_path.read_text(encoding="utf-8").splitlines():
            if not line:
                continue
            sent_id, _, rest = line.partition("\t")
            notes[_unescape_note(sent_id)] = _unescape_note(rest)
        return notes

    def _store_notes(self) -> None:
        lines = "".join(
            f"{_escape_note(sid)}\t{_escape_note(text)}\n" for sid, text in sorted(self.notes.items())
        )
        _atomic_write(self.notes_path, lines.encode("utf-8"))

    def resolve(self, ref: str) -> tuple[int, Sentence]:
        """Look a sentence up by sent_id first, then by 0-based index."""
        for i, sentence in enumerate(self.document.sentences):
            if sentence.sent_id == ref:
                return i, sentence
        if ref.isdigit():
            index = int(ref)
            if index < len(self.document.sentences):
                return index, self.document.sentences[index]
        raise HTTPException(status_code=404, detail=f"no sentence with id or index {ref!r}")

    def payload(self, index: int) -> SentencePayload:
        sentence = self.document.sentences[index]
        issues = validate_sentence(sentence, self.schema, index=index)
        sent_id = sentence.sent_id
        note = self.notes.get(sent_id) if sent_id else None
        return SentencePayload(
            ref=sent_id or str(index),
            index=index,
            sent_id=sent_id,
            comments=list(sentence.comments),
            tokens=[_token_payload(t) for t in sentence.tokens],
            note=note,
            issues=[
                IssuePayload(
                    sentence=i.sentence_ref, token=i.token, code=i.code, message=i.message
                )
                for i in issues
            ],
            revision=self.revision,
        )

    def summary(self) -> DocumentSummary:
        doc = self.document
        seen: list[str] = []
        for sentence in doc.sentences:
            label = infer_section(sentence)
            if label not in seen:
                seen.append(label)
        return DocumentSummary(
            path=str(self.path),
            sentences=len(doc.sentences),
            words=doc.n_words(),
            tokens=doc.n_tokens(),
            sections=seen,
            sent_ids=[s.sent_id for s in doc.sentences],
            revision=self.revision,
            dirty=self.dirty,
        )

    def apply(self, ref: str, request: EditRequest) -> SentencePayload:
        with self.lock:
            if request.revision != self.revision:
                raise HTTPException(
                    status_code=409,
                    detail=f"revision {request.revision} is stale, current is {self.revision}",
                )
            index, sentence = self.resolve(ref)
            edit = request.edit
            try:
                if isinstance(edit, SetFieldEdit):
                    updated = set_field(sentence, edit.token_id, edit.field, edit.value)
                elif isinstance(edit, SplitEdit):
                    updated = split_token(
                        sentence, edit.token_id, edit.first, edit.second,
                        allow_mismatch=edit.allow_mismatch,
                    )
                else:
                    updated = join_tokens(sentence, edit.token_id)
            except (EditError, ValueError) as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            self.document.sentences[index] = updated
            self.revision += 1
            self.dirty = True
            return self.payload(index)

    def save(self) -> SaveResult:
        with self.lock:
            data = serialize_document(self.document).encode("utf-8")
            written = _atomic_write(self.path, data)
            self.dirty = False
            return SaveResult(
                path=str(self.path), bytes_written=written,
                revision=self.revision, dirty=self.dirty,
            )

    def set_note(self, ref: str, text: str) -> NotePayload:
        with self.lock:
            _, sentence = self.resolve(ref)
            sent_id = sentence.sent_id
            if not sent_id:
                raise HTTPException(
                    status_code=422, detail="sentence has no sent_id to key the note on"
                )
            if text:
                self.notes[sent_id] = text
                sentence.note = text
            else:
                self.notes.pop(sent_id, None)
                sentence.note = None
            self._store_notes()
            return NotePayload(sent_id=sent_id, note=self.notes.get(sent_id))

    def get_note(self, ref: str) -> NotePayload:
        _, sentence = self.resolve(ref)
        sent_id = sentence.sent_id
        if not sent_id:
            raise HTTPException(
                status_code=422, detail="sentence has no sent_id to key the note on"
            )
        return NotePayload(sent_id=sent_id, note=self.notes.get(sent_id))


def _token_payload(token: Token) -> TokenPayload:
    return TokenPayload(
        id=token.id_str,
        form=token.form,
        lemma=token.lemma,
        upos=token.upos,
        xpos=token.xpos,
        feats=str(token.feats) if token.feats else "",
        head=token.head,
        deprel=token.deprel,
        deps=token.deps,
        misc="|".join(token.misc),
    )


def create_app(
    path: str | Path,
    schema: Schema = DEFAULT_SCHEMA,
    static_dir: str | Path | None = None,
) -> FastAPI:
    """Build the application serving the document at path."""
    session = DocumentSession(path, schema)
    app = FastAPI(title="treekit", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.session = session

    @app.get("/document", response_model=DocumentSummary)
    def document() -> DocumentSummary:
        return session.summary()

    @app.get("/sentence/{ref}", response_model=SentencePayload)
    def sentence(ref: str) -> SentencePayload:
        index, _ = session.resolve(ref)
        return session.payload(index)

    @app.post("/sentence/{ref}/edit", response_model=SentencePayload)
    def edit(ref: str, request: EditRequest) -> SentencePayload:
        return session.apply(ref, request)

    @app.post("/save", response_model=SaveResult)
    def save() -> SaveResult:
        return session.save()

    @app.get("/sentence/{ref}/note", response_model=NotePayload)
    def get_note(ref: str) -> NotePayload:
        return session.get_note(ref)

    @app.put("/sentence/{ref}/note", response_model=NotePayload)
    def put_note(ref: str, request: NoteRequest) -> NotePayload:
        return session.set_note(ref, request.text)

    @app.get("/schema", response_model=SchemaPayload)
    def schema_payload() -> SchemaPayload:
        return SchemaPayload(
            upos=sorted(session.schema.upos),
            deprels=sorted(session.schema.deprels),
            feature_values={
                k: sorted(v) if v is not None else None
                for k, v in session.schema.feature_values.items()
            }
            if session.schema.feature_values is not None
            else None,
        )

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app

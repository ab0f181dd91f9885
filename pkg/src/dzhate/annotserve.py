"""HTTP service for manually validating auto-labeled documents.

One session reviews one corpus: documents are served lowest-index-first,
each decision (confirm / correct / skip) is appended to a JSON-lines event
log before it is applied, and state is always derivable by replaying the
log, so a crashed or restarted session resumes where it stopped.
"""

from __future__ import annotations

import io
import json
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .autolabel import Lexicon, highlight_matches, load_lexicon
from .corpus import Corpus, load_corpus, write_csv

ACTIONS = ("confirm", "correct", "skip")
STATES = ("pending", "confirmed", "corrected", "skipped")

_ACTION_STATE = {"confirm": "confirmed", "correct": "corrected", "skip": "skipped"}


@dataclass(frozen=True)
class ReviewEvent:
    doc_id: str
    action: str
    label: int | None
    annotator: str = ""

    def to_json(self) -> str:
        return json.dumps(
            {"id": self.doc_id, "action": self.action, "label": self.label,
             "annotator": self.annotator}
        )

    @staticmethod
    def from_json(line: str) -> "ReviewEvent":
        row = json.loads(line)
        return ReviewEvent(row["id"], row["action"], row.get("label"), row.get("annotator", ""))


class AnnotationSession:
    """Review state for one corpus; submissions are serialized through a lock."""

    def __init__(self, corpus: Corpus, lexicon: Lexicon, log_path, output_path=None,
                 annotator_id: str = "default"):
        for doc in corpus:
            if doc.label_source != "auto":
                raise ValueError(
                    f"document {doc.id} has label_source={doc.label_source!r}; "
                    "the session needs an auto-annotated corpus"
                )
        self.corpus = corpus
        self.lexicon = lexicon
        self.annotator_id = annotator_id
        self.log_path = Path(log_path)
        self.output_path = Path(output_path) if output_path else None
        self._lock = threading.Lock()
        self._by_id = {doc.id: i for i, doc in enumerate(corpus)}
        self.states: dict[str, str] = {doc.id: "pending" for doc in corpus}
        self.final_labels: dict[str, int] = {}
        if self.log_path.exists():
            with open(self.log_path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        self._apply(ReviewEvent.from_json(line))

    # -- state transitions ---------------------------------------------------

    def _validate(self, event: ReviewEvent) -> None:
        if event.doc_id not in self._by_id:
            raise KeyError(f"unknown document id: {event.doc_id}")
        if self.states[event.doc_id] != "pending":
            raise ValueError(f"already reviewed: {event.doc_id}")
        if event.action not in ACTIONS:
            raise ValueError(f"unknown action: {event.action!r}")
        auto = self.corpus[self._by_id[event.doc_id]].label
        if event.action == "confirm":
            if event.label is None or event.label != auto:
                raise ValueError(
                    f"confirm label {event.label!r} does not match auto label {auto}"
                )
        elif event.action == "correct":
            if event.label not in (0, 1):
                raise ValueError("correct requires a label of 0 or 1")
            if event.label == auto:
                raise ValueError("corrected label equals the auto label; use confirm")

    def _apply(self, event: ReviewEvent) -> None:
        self._validate(event)
        self.states[event.doc_id] = _ACTION_STATE[event.action]
        if event.action in ("confirm", "correct"):
            self.final_labels[event.doc_id] = event.label

    def submit(self, doc_id: str, action: str, label: int | None) -> dict:
        event = ReviewEvent(doc_id, action, label, self.annotator_id)
        with self._lock:
            self._validate(event)
            # log first: state is derived from the log, never the other way
            with open(self.log_path, "a", encoding="utf-8") as fh:
                fh.write(event.to_json() + "\n")
            self._apply(event)
            return self.progress()

    # -- queries ---------------------------------------------------------------

    def next_pending(self):
        for doc in self.corpus:
            if self.states[doc.id] == "pending":
                return doc
        return None

    def progress(self) -> dict:
        counts = {state: 0 for state in STATES}
        for state in self.states.values():
            counts[state] += 1
        return counts

    def reviewed_count(self) -> int:
        return sum(1 for s in self.states.values() if s in ("confirmed", "corrected"))

    def export_corpus(self) -> Corpus:
        docs = tuple(
            doc.with_label(self.final_labels[doc.id], "manual")
            for doc in self.corpus
            if self.states[doc.id] in ("confirmed", "corrected")
        )
        return Corpus(docs, note=self.corpus.note)

    def export_csv(self) -> str:
        buf = io.StringIO()
        write_csv(self.export_corpus(), buf)
        return buf.getvalue()


class LabelRequest(BaseModel):
    id: str
    action: str
    label: int | None = None


def create_app(session: AnnotationSession, cors_origin: str = "*") -> FastAPI:
    app = FastAPI(title="dzhate annotation review")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cors_origin] if cors_origin != "*" else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.session = session

    @app.get("/next")
    def next_doc():
        doc = session.next_pending()
        if doc is None:
            return Response(status_code=204)
        return {
            "id": doc.id,
            "clean_text": doc.clean_text,
            "raw_text": doc.raw_text,
            "auto_label": doc.label,
            "highlights": highlight_matches(doc, session.lexicon) if doc.clean_text else [],
        }

    @app.post("/label")
    def label(req: LabelRequest):
        try:
            progress = session.submit(req.id, req.action, req.label)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None
        except ValueError as exc:
            status = 409 if "already reviewed" in str(exc) else 400
            raise HTTPException(status_code=status, detail=str(exc)) from None
        return {"ok": True, "progress": progress}

    @app.get("/progress")
    def progress():
        return session.progress()

    @app.get("/export")
    def export():
        if session.reviewed_count() == 0:
            raise HTTPException(status_code=409, detail="nothing reviewed yet")
        csv_text = session.export_csv()
        if session.output_path is not None:
            session.output_path.write_text(csv_text, encoding="utf-8")
        return Response(content=csv_text, media_type="text/csv; charset=utf-8")

    return app


def start_session(
    corpus_path,
    lexicon_path,
    output_path,
    host: str = "127.0.0.1",
    port: int = 8750,
    log_path=None,
    cors_origin: str = "*",
    annotator_id: str = "default",
):
    """Load the corpus, build the session and serve it (blocking)."""
    import uvicorn

    corpus = load_corpus(corpus_path)
    lexicon = load_lexicon(lexicon_path) if lexicon_path else load_lexicon()
    if log_path is None:
        log_path = str(output_path) + ".events.jsonl"
    session = AnnotationSession(corpus, lexicon, log_path, output_path, annotator_id)
    app = create_app(session, cors_origin=cors_origin)
    uvicorn.run(app, host=host, port=port, log_level="warning")

"""Document/corpus data model, CSV/JSONL round-trip I/O, stratified splitting.

Corpora are immutable after construction and safe to share across workers.
The interchange CSV carries id,text,label,source plus the bookkeeping
columns label_source and clean_text; external files only need id,text.
"""

from __future__ import annotations

import csv
import json
import math
import random
from dataclasses import dataclass, replace
from pathlib import Path

from .translit import detect_script

SOURCES = ("youtube", "twitter", "facebook", "external", "unknown")
LABEL_SOURCES = ("auto", "manual", "augmented", "predicted", "none")

_CSV_COLUMNS = ("id", "text", "label", "source", "label_source", "clean_text")

_BASIC_LATIN_LETTERS = tuple(range(0x41, 0x5B)) + tuple(range(0x61, 0x7B))


@dataclass(frozen=True)
class Document:
    """One social-media message.

    clean_text is the post-pipeline form; an empty cleaned string is
    canonicalized to None (nothing usable survived cleaning). label_source
    is "none" exactly when no label is present.
    """

    id: str
    raw_text: str
    source: str = "unknown"
    clean_text: str | None = None
    label: int | None = None
    label_source: str = "none"

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be non-empty")
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r} for document {self.id}")
        if self.label not in (None, 0, 1):
            raise ValueError(f"invalid label {self.label!r} for document {self.id}")
        if self.label_source not in LABEL_SOURCES:
            raise ValueError(f"unknown label_source {self.label_source!r}")
        if (self.label is None) != (self.label_source == "none"):
            raise ValueError(
                f"document {self.id}: label and label_source disagree "
                f"({self.label!r} / {self.label_source})"
            )
        if self.clean_text == "":
            object.__setattr__(self, "clean_text", None)
        if self.clean_text is not None:
            if any(ord(ch) in _BASIC_LATIN_LETTERS for ch in self.clean_text):
                raise ValueError(
                    f"document {self.id}: clean_text contains Basic Latin letters"
                )

    @property
    def script(self) -> str:
        return detect_script(self.raw_text)

    def with_clean_text(self, clean_text: str | None) -> "Document":
        return replace(self, clean_text=clean_text or None)

    def with_label(self, label: int, label_source: str) -> "Document":
        return replace(self, label=label, label_source=label_source)


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "documents", tuple(self.documents))
        seen = set()
        for doc in self.documents:
            if doc.id in seen:
                raise ValueError(f"duplicate document id: {doc.id}")
            seen.add(doc.id)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def __getitem__(self, i):
        return self.documents[i]

    def ids(self) -> list[str]:
        return [d.id for d in self.documents]

    def labels(self) -> list[int | None]:
        return [d.label for d in self.documents]


@dataclass(frozen=True)
class SplitSets:
    train: Corpus
    validation: Corpus
    test: Corpus
    seed: int
    ratios: tuple[float, float, float]


def _parse_label(value, where: str) -> int | None:
    if value is None or value == "":
        return None
    text = str(value).strip()
    if text == "":
        return None
    if text in ("0", "1"):
        return int(text)
    if isinstance(value, (int, float)) and value in (0, 1):
        return int(value)
    raise ValueError(f"invalid label at {where}: {value!r}")


def _row_to_document(row: dict, where: str) -> Document:
    label = _parse_label(row.get("label"), where)
    label_source = (row.get("label_source") or "").strip()
    if not label_source or label_source == "none":
        # externally supplied gold labels count as manually assigned
        label_source = "none" if label is None else "manual"
    source = (row.get("source") or "").strip() or "unknown"
    return Document(
        id=str(row["id"]),
        raw_text=row.get("text") or "",
        source=source,
        clean_text=row.get("clean_text") or None,
        label=label,
        label_source=label_source,
    )


def load_corpus(path, format: str = "csv") -> Corpus:
    """Load a corpus file. CSV needs a header with at least id,text."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"corpus file not found: {path}")
    if format == "csv":
        return _load_csv(path)
    if format == "jsonl":
        return _load_jsonl(path)
    raise ValueError(f"unknown corpus format: {format!r}")


def _load_csv(path: Path) -> Corpus:
    docs = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, header row required") from None
        if "id" not in header or "text" not in header:
            raise ValueError(f"{path}: header must contain id and text columns")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(
                    f"{path}: malformed row {lineno}: expected "
                    f"{len(header)} columns, got {len(row)}"
                )
            docs.append(_row_to_document(dict(zip(header, row)), f"row {lineno}"))
    return Corpus(tuple(docs))


def _load_jsonl(path: Path) -> Corpus:
    docs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: malformed JSON at line {lineno}: {exc}") from None
            if "id" not in row or "text" not in row:
                raise ValueError(f"{path}: line {lineno} missing id or text")
            docs.append(_row_to_document(row, f"line {lineno}"))
    return Corpus(tuple(docs))


def _doc_row(doc: Document) -> dict:
    return {
        "id": doc.id,
        "text": doc.raw_text,
        "label": "" if doc.label is None else doc.label,
        "source": doc.source,
        "label_source": doc.label_source,
        "clean_text": doc.clean_text or "",
    }


def write_csv(corpus: Corpus, fh) -> None:
    writer = csv.writer(fh, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for doc in corpus:
        row = _doc_row(doc)
        writer.writerow([row[col] for col in _CSV_COLUMNS])


def save_corpus(corpus: Corpus, path, format: str = "csv") -> None:
    """Write a corpus re-loadable by load_corpus to an equal value."""
    path = Path(path)
    if format == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            write_csv(corpus, fh)
    elif format == "jsonl":
        with open(path, "w", encoding="utf-8") as fh:
            for doc in corpus:
                row = _doc_row(doc)
                row["label"] = doc.label  # JSON null, not empty string
                row["clean_text"] = doc.clean_text
                fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    else:
        raise ValueError(f"unknown corpus format: {format!r}")


def _split_counts(n_class: int, ratios: tuple[float, ...]) -> list[int]:
    """Apportion n_class documents: floors first, leftovers to the largest
    fractional shares, ties favoring the earlier split (train first)."""
    exact = [r * n_class for r in ratios]
    counts = [math.floor(e) for e in exact]
    leftover = n_class - sum(counts)
    order = sorted(range(len(ratios)), key=lambda i: (-(exact[i] - counts[i]), i))
    for i in order[:leftover]:
        counts[i] += 1
    return counts


def stratified_split(
    corpus: Corpus, ratios: tuple[float, float, float], seed: int
) -> SplitSets:
    """Deterministic per-class split into train/validation/test.

    Every document must be labeled; each class is shuffled with its own
    seed-keyed permutation and sliced, so identical inputs give identical
    splits. Per-split class counts stay within one document of exact
    proportionality.
    """
    if len(ratios) != 3:
        raise ValueError("exactly three split ratios required")
    if any(r <= 0 for r in ratios):
        raise ValueError("split ratios must be positive")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"split ratios must sum to 1, got {sum(ratios)}")

    unlabeled = [d.id for d in corpus if d.label is None]
    if unlabeled:
        raise ValueError("unlabeled documents present: " + ", ".join(unlabeled))

    by_class: dict[int, list[int]] = {0: [], 1: []}
    for i, doc in enumerate(corpus):
        by_class[doc.label].append(i)
    for cls in (0, 1):
        if len(by_class[cls]) < 3:
            raise ValueError(f"class {cls} has {len(by_class[cls])} documents; need at least 3")

    assignment: list[list[int]] = [[], [], []]
    rng = random.Random(seed)
    for cls in (0, 1):
        indices = list(by_class[cls])
        rng.shuffle(indices)
        counts = _split_counts(len(indices), ratios)
        start = 0
        for part, count in enumerate(counts):
            assignment[part].extend(indices[start : start + count])
            start += count

    parts = []
    for idxs in assignment:
        docs = tuple(corpus[i] for i in sorted(idxs))
        parts.append(Corpus(docs, note=corpus.note))
    return SplitSets(parts[0], parts[1], parts[2], seed=seed, ratios=tuple(ratios))

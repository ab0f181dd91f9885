"""Keyword-lexicon annotation: automatic binary labels, label remapping for
merged external corpora, and match highlighting for the review UI."""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .corpus import Corpus, Document
from .textprep import normalize_arabic

_TOKEN_RE = re.compile(r"\S+")

EXTERNAL_LABEL_MAP = {"offensive": 1, "abusive": 1, "normal": 0}


@dataclass(frozen=True)
class Lexicon:
    """Set of normalized hateful keywords."""

    entries: frozenset[str]
    name: str = "lexicon"

    @property
    def size(self) -> int:
        return len(self.entries)


def load_lexicon(path=None, name: str | None = None) -> Lexicon:
    """Load a one-keyword-per-line lexicon; entries are normalized and deduplicated.

    Without a path the bundled demonstrative seed list is used.
    """
    if path is None:
        content = resources.files("dzhate.data").joinpath("lexicon_seed.txt").read_text("utf-8")
        name = name or "seed"
    else:
        content = Path(path).read_text(encoding="utf-8")
        name = name or Path(path).stem
    entries = set()
    for line in content.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        normalized = normalize_arabic(line)
        if normalized:
            entries.add(normalized)
    if not entries:
        raise ValueError(f"empty lexicon: {path}")
    return Lexicon(frozenset(entries), name=name)


def _matches(clean_text: str, lexicon: Lexicon, mode: str) -> bool:
    if mode == "token":
        return any(tok in lexicon.entries for tok in clean_text.split())
    if mode == "substring":
        return any(entry in clean_text for entry in lexicon.entries)
    raise ValueError(f"unknown match mode: {mode!r}")


def auto_annotate(corpus: Corpus, lexicon: Lexicon, mode: str = "token") -> Corpus:
    """Label 1 any document whose clean text contains a lexicon keyword, else 0.

    Matching is token-exact by default (mode="substring" opts into raw
    containment). Returns a new corpus; the input is untouched.
    """
    missing = [d.id for d in corpus if d.clean_text is None]
    if missing:
        raise ValueError("documents missing clean_text: " + ", ".join(missing))
    labeled = tuple(
        doc.with_label(1 if _matches(doc.clean_text, lexicon, mode) else 0, "auto")
        for doc in corpus
    )
    return Corpus(labeled, note=corpus.note)


def remap_external(labels: list[str]) -> list[int]:
    """offensive/abusive -> 1, normal -> 0, order preserved."""
    out = []
    for value in labels:
        key = str(value).strip().lower()
        if key not in EXTERNAL_LABEL_MAP:
            raise ValueError(f"unknown external label: {value!r}")
        out.append(EXTERNAL_LABEL_MAP[key])
    return out


def highlight_matches(doc: Document, lexicon: Lexicon) -> list[tuple[int, int]]:
    """Code-point spans of clean_text tokens that equal lexicon entries."""
    if doc.clean_text is None:
        raise ValueError(f"document {doc.id} has no clean_text")
    spans = []
    for m in _TOKEN_RE.finditer(doc.clean_text):
        if m.group(0) in lexicon.entries:
            spans.append((m.start(), m.end()))
    return spans

"""TF-IDF vectorization over whitespace-tokenized clean text.

The weighting is the smoothed formula idf(t) = ln((1+N)/(1+df(t))) + 1 with
L2-normalized document vectors, implemented directly rather than behind a
third-party vectorizer so the numbers are pinned by this module.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from dataclasses import dataclass

FORMULA_ID = "ln((1+n)/(1+df))+1;l2"


@dataclass
class SparseVector:
    indices: list[int]
    values: list[float]

    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise ValueError("indices and values must have equal length")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError("indices must be strictly increasing")

    def norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.values))


def _tokens(text: str, ngram_range: tuple[int, int]) -> list[str]:
    unigrams = text.split()
    lo, hi = ngram_range
    if (lo, hi) == (1, 1):
        return unigrams
    out = []
    for n in range(lo, hi + 1):
        if n == 1:
            out.extend(unigrams)
        else:
            out.extend(
                " ".join(unigrams[i : i + n]) for i in range(len(unigrams) - n + 1)
            )
    return out


@dataclass
class TfIdfModel:
    vocabulary: dict[str, int]
    idf: list[float]
    n_docs: int
    min_df: int = 1
    ngram_range: tuple[int, int] = (1, 1)

    @property
    def n_features(self) -> int:
        return len(self.vocabulary)

    def fingerprint(self) -> str:
        """Stable id used to pair classifiers with the vectorizer they expect."""
        payload = json.dumps(
            [sorted(self.vocabulary.items()), [round(v, 12) for v in self.idf]],
            ensure_ascii=False,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def fit(docs: list[str], min_df: int = 1, ngram_range: tuple[int, int] = (1, 1)) -> TfIdfModel:
    """Build vocabulary (tokens in >= min_df documents, lexicographic index
    order) and smoothed idf weights."""
    if not docs:
        raise ValueError("cannot fit on an empty document list")
    df: Counter[str] = Counter()
    for doc in docs:
        df.update(set(_tokens(doc, ngram_range)))
    terms = sorted(t for t, count in df.items() if count >= min_df)
    if not terms:
        raise ValueError("all documents are empty; nothing to fit")
    vocabulary = {t: i for i, t in enumerate(terms)}
    n = len(docs)
    idf = [math.log((1 + n) / (1 + df[t])) + 1.0 for t in terms]
    return TfIdfModel(vocabulary, idf, n_docs=n, min_df=min_df, ngram_range=tuple(ngram_range))


def transform(model: TfIdfModel, doc: str) -> SparseVector:
    """tf x idf weights, L2-normalized; out-of-vocabulary tokens are ignored
    and an empty/all-OOV document maps to the zero vector."""
    counts = Counter(_tokens(doc, model.ngram_range))
    pairs = sorted(
        (model.vocabulary[t], c * model.idf[model.vocabulary[t]])
        for t, c in counts.items()
        if t in model.vocabulary
    )
    if not pairs:
        return SparseVector([], [])
    norm = math.sqrt(sum(w * w for _, w in pairs))
    return SparseVector([i for i, _ in pairs], [w / norm for _, w in pairs])


def transform_many(model: TfIdfModel, docs: list[str]) -> list[SparseVector]:
    return [transform(model, doc) for doc in docs]


def save_model(model: TfIdfModel, path, extra: dict | None = None) -> None:
    payload = {
        "format": "dzhate-tfidf-v1",
        "formula": FORMULA_ID,
        "n_docs": model.n_docs,
        "min_df": model.min_df,
        "ngram_range": list(model.ngram_range),
        "vocabulary": model.vocabulary,
        "idf": model.idf,
        "fingerprint": model.fingerprint(),
    }
    if extra:
        payload.update(extra)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False)


def load_model(path) -> TfIdfModel:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != "dzhate-tfidf-v1":
        raise ValueError(f"not a tf-idf model file: {path}")
    return TfIdfModel(
        vocabulary=payload["vocabulary"],
        idf=payload["idf"],
        n_docs=payload["n_docs"],
        min_df=payload.get("min_df", 1),
        ngram_range=tuple(payload.get("ngram_range", (1, 1))),
    )

"""Training-free classification by Normalized Compression Distance + KNN.

C(.) is the byte length of a raw DEFLATE (RFC 1951) stream so the numbers
don't depend on container headers; zlib/gzip/bz2/lzma are available as
alternative compressors. Distances, tie-breaking and vote rules are pinned
so one (index, query, k) always produces the same answer.
"""

from __future__ import annotations

import bz2
import lzma
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .corpus import Corpus

SEPARATOR = b" "
DEFAULT_LEVEL = 6
COMPRESSORS = ("deflate", "zlib", "gzip", "bz2", "lzma")


def compressed_len(data: bytes, compressor: str = "deflate", level: int = DEFAULT_LEVEL) -> int:
    """Length in bytes of the compressed form of `data`."""
    if compressor == "deflate":
        c = zlib.compressobj(level, zlib.DEFLATED, -zlib.MAX_WBITS)
        return len(c.compress(data)) + len(c.flush())
    if compressor == "zlib":
        return len(zlib.compress(data, level))
    if compressor == "gzip":
        # gzip payload is the same deflate stream plus a fixed 18-byte container
        c = zlib.compressobj(level, zlib.DEFLATED, -zlib.MAX_WBITS)
        return len(c.compress(data)) + len(c.flush()) + 18
    if compressor == "bz2":
        return len(bz2.compress(data, level))
    if compressor == "lzma":
        return len(lzma.compress(data))
    raise ValueError(f"unknown compressor: {compressor!r}")


def ncd(x: bytes, y: bytes, compressor: str = "deflate", level: int = DEFAULT_LEVEL) -> float:
    """(C(x||sep||y) - min(C(x), C(y))) / max(C(x), C(y)), clamped below at 0."""
    if not x and not y:
        raise ValueError("ncd undefined for two empty inputs")
    cx = compressed_len(x, compressor, level)
    cy = compressed_len(y, compressor, level)
    cxy = compressed_len(x + SEPARATOR + y, compressor, level)
    return max(0.0, (cxy - min(cx, cy)) / max(cx, cy))


@dataclass(frozen=True)
class IndexEntry:
    doc_id: str
    data: bytes
    label: int
    c_len: int


@dataclass(frozen=True)
class NcdIndex:
    entries: tuple[IndexEntry, ...]
    compressor: str = "deflate"
    level: int = DEFAULT_LEVEL

    def __len__(self) -> int:
        return len(self.entries)


def build_index(train: Corpus, compressor: str = "deflate", level: int = DEFAULT_LEVEL) -> NcdIndex:
    """Cache compressed lengths of every training document once."""
    if len(train) == 0:
        raise ValueError("cannot build an index from an empty corpus")
    entries = []
    for doc in train:
        if doc.label is None:
            raise ValueError(f"unlabeled document in training corpus: {doc.id}")
        if doc.clean_text is None:
            raise ValueError(f"document missing clean_text: {doc.id}")
        data = doc.clean_text.encode("utf-8")
        entries.append(IndexEntry(doc.id, data, doc.label, compressed_len(data, compressor, level)))
    return NcdIndex(tuple(entries), compressor, level)


@dataclass(frozen=True)
class KnnResult:
    label: int
    neighbor_ids: tuple[str, ...]
    distances: tuple[float, ...]


def _distance(query: bytes, c_query: int, entry: IndexEntry, compressor: str, level: int) -> float:
    # concatenation order is (query, train-doc); deflate NCD is mildly asymmetric
    cxy = compressed_len(query + SEPARATOR + entry.data, compressor, level)
    return max(0.0, (cxy - min(c_query, entry.c_len)) / max(c_query, entry.c_len))


def knn_classify(index: NcdIndex, query: str, k: int = 3, workers: int = 1) -> KnnResult:
    """Majority vote over the k NCD-nearest training documents.

    Distance ties break on the smaller doc_id; vote ties on the smaller
    summed distance, then on label 0. Distances may be computed in
    parallel; results are merged in a fixed order so worker count never
    changes the answer.
    """
    if not query:
        raise ValueError("empty document")
    if k < 1 or k > len(index.entries):
        raise ValueError(f"k must be in [1, {len(index.entries)}], got {k}")
    data = query.encode("utf-8")
    c_query = compressed_len(data, index.compressor, index.level)

    def dist(entry: IndexEntry) -> float:
        return _distance(data, c_query, entry, index.compressor, index.level)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            distances = list(pool.map(dist, index.entries))
    else:
        distances = [dist(e) for e in index.entries]

    ranked = sorted(zip(distances, (e.doc_id for e in index.entries), (e.label for e in index.entries)))
    top = ranked[:k]
    votes = {0: 0, 1: 0}
    sums = {0: 0.0, 1: 0.0}
    for d, _, label in top:
        votes[label] += 1
        sums[label] += d
    if votes[1] > votes[0]:
        label = 1
    elif votes[0] > votes[1]:
        label = 0
    else:
        label = 1 if sums[1] < sums[0] else 0
    return KnnResult(
        label=label,
        neighbor_ids=tuple(doc_id for _, doc_id, _ in top),
        distances=tuple(d for d, _, _ in top),
    )


def sweep_k(index: NcdIndex, validation: Corpus, ks=(1, 3, 5, 7), workers: int = 1) -> tuple[int, dict[int, float]]:
    """Pick k by validation accuracy (first k wins ties, favoring small k)."""
    scores: dict[int, float] = {}
    usable = [k for k in ks if 1 <= k <= len(index.entries)]
    if not usable:
        raise ValueError("no usable k values for this index size")
    queries = [(d.clean_text, d.label) for d in validation if d.clean_text and d.label is not None]
    if not queries:
        raise ValueError("validation corpus has no labeled, non-empty documents")
    for k in usable:
        correct = sum(
            1 for text, label in queries if knn_classify(index, text, k, workers).label == label
        )
        scores[k] = correct / len(queries)
    best = max(usable, key=lambda k: (scores[k], -k))
    return best, scores

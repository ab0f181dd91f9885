import gzip
import random
import zlib

import pytest

from dzhate import ncdknn
from dzhate.corpus import Corpus, Document
from dzhate.ncdknn import build_index, compressed_len, knn_classify, ncd, sweep_k

from conftest import arabic_word


def labeled_doc(id, clean, label):
    return Document(id=id, raw_text="x", clean_text=clean, label=label, label_source="auto")


def disjoint_vocab_corpus(n_per_class: int, seed: int = 12) -> Corpus:
    """Two classes drawn from disjoint word sets; within-class NCD is smaller
    than cross-class NCD by construction."""
    rng = random.Random(seed)
    vocab_a = [arabic_word(rng, 3, 6) for _ in range(15)]
    vocab_b = [arabic_word(rng, 3, 6) for _ in range(15)]
    docs = []
    for i in range(n_per_class):
        docs.append(labeled_doc(f"a{i:03d}", " ".join(rng.choices(vocab_a, k=12)), 0))
        docs.append(labeled_doc(f"b{i:03d}", " ".join(rng.choices(vocab_b, k=12)), 1))
    return Corpus(tuple(docs))


class TestCompressedLen:
    def test_repetitive_input_compresses_hard(self):
        assert compressed_len(b"\xaa" * 1000) < 50

    def test_empty_input_header_length(self):
        # frozen fixture: an empty raw DEFLATE stream is exactly 2 bytes
        assert compressed_len(b"") == 2

    def test_matches_reference_deflate_implementations(self, fixture_lines):
        # oracle: the zlib container is the same stream + 2-byte header +
        # 4-byte checksum; gzip adds a fixed 18-byte container
        for line in fixture_lines:
            data = line.encode("utf-8")
            assert compressed_len(data) == len(zlib.compress(data, 6)) - 6
            assert compressed_len(data) == len(gzip.compress(data, 6)) - 18

    def test_never_blows_up_much(self):
        rng = random.Random(1)
        for _ in range(100):
            data = bytes(rng.randrange(256) for _ in range(rng.randint(0, 300)))
            assert compressed_len(data) <= len(data) + 16

    def test_deterministic(self):
        data = "نص تجريبي للضغط".encode("utf-8")
        assert compressed_len(data) == compressed_len(data)

    def test_other_compressors(self):
        data = b"hello world " * 20
        for name in ("zlib", "gzip", "bz2", "lzma"):
            assert compressed_len(data, name) > 0
        with pytest.raises(ValueError, match="unknown compressor"):
            compressed_len(data, "zip")


class TestNcd:
    def test_self_distance_small(self, fixture_lines):
        for line in fixture_lines:
            data = line.encode("utf-8")
            if len(data) >= 100:
                assert ncd(data, data) <= 0.15

    def test_related_below_unrelated(self):
        rng = random.Random(3)
        words = [arabic_word(rng, 3, 7) for _ in range(30)]
        related = unrelated = 0.0
        n = 100
        for _ in range(n):
            x = " ".join(rng.choices(words[:15], k=20)).encode("utf-8")
            x2 = " ".join(rng.choices(words[:15], k=20)).encode("utf-8")
            y = " ".join(rng.choices(words[15:], k=20)).encode("utf-8")
            related += ncd(x, x2)
            unrelated += ncd(x, y)
        assert related / n < unrelated / n

    def test_self_close_to_lower_bound_vs_unrelated(self, fixture_lines):
        rng = random.Random(9)
        for line in fixture_lines[:10]:
            x = line.encode("utf-8")
            y = " ".join(arabic_word(rng, 3, 7) for _ in range(20)).encode("utf-8")
            assert ncd(x, y) >= ncd(x, x) - 0.05

    def test_clamped_at_zero(self, monkeypatch):
        # force a negative raw value: C(x||sep||y) < min(C(x), C(y))
        fake = {b"x": 10, b"y": 12, b"x y": 5}
        monkeypatch.setattr(ncdknn, "compressed_len", lambda data, c, l: fake[data])
        assert ncd(b"x", b"y") == 0.0

    def test_both_empty_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            ncd(b"", b"")

    def test_bounded_on_fixture_pairs(self, fixture_lines):
        data = [line.encode("utf-8") for line in fixture_lines]
        for x in data[:8]:
            for y in data[:8]:
                assert 0.0 <= ncd(x, y) <= 1.2


class TestBuildIndex:
    def test_entries_cache_compressed_len(self):
        corp = Corpus(tuple(labeled_doc(f"d{i}", f"نص رقم {arabic_word(random.Random(i), 4, 6)}", i % 2)
                            for i in range(3)))
        index = build_index(corp)
        assert len(index) == 3
        for entry, doc in zip(index.entries, corp):
            assert entry.data == doc.clean_text.encode("utf-8")
            assert entry.c_len == compressed_len(entry.data)

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError, match="empty corpus"):
            build_index(Corpus(()))

    def test_unlabeled_rejected(self):
        doc = Document(id="d1", raw_text="x", clean_text="نص")
        with pytest.raises(ValueError, match="unlabeled"):
            build_index(Corpus((doc,)))

    def test_rebuild_identical(self):
        corp = disjoint_vocab_corpus(5)
        assert build_index(corp) == build_index(corp)


class TestKnnClassify:
    def test_self_query_k1(self):
        corp = disjoint_vocab_corpus(5)
        index = build_index(corp)
        for doc in list(corp)[:4]:
            res = knn_classify(index, doc.clean_text, k=1)
            assert res.label == doc.label

    def test_disjoint_vocab_loo_small(self):
        corp = disjoint_vocab_corpus(15)
        correct = 0
        for held in range(len(corp)):
            train = Corpus(tuple(d for j, d in enumerate(corp) if j != held))
            res = knn_classify(build_index(train), corp[held].clean_text, k=3)
            correct += res.label == corp[held].label
        assert correct / len(corp) >= 0.9

    def test_distances_sorted_and_k_neighbors(self):
        corp = disjoint_vocab_corpus(6)
        index = build_index(corp)
        res = knn_classify(index, corp[0].clean_text, k=5)
        assert len(res.neighbor_ids) == 5 and len(res.distances) == 5
        assert list(res.distances) == sorted(res.distances)

    def test_full_index_tie_is_reproducible(self):
        corp = disjoint_vocab_corpus(4)  # balanced labels
        index = build_index(corp)
        first = knn_classify(index, corp[1].clean_text, k=len(index))
        for _ in range(3):
            assert knn_classify(index, corp[1].clean_text, k=len(index)) == first

    def test_vote_tie_breaks_to_smaller_distance_sum(self):
        a = labeled_doc("a", "كلمة كلمة كلمة كلمة", 0)
        b = labeled_doc("b", "عبارة اخرى مختلفة تماما هنا", 1)
        index = build_index(Corpus((a, b)))
        res = knn_classify(index, a.clean_text, k=2)
        assert res.label == 0  # its own class is strictly nearer

    def test_distance_tie_breaks_on_doc_id(self):
        text = "نفس النص تماما"
        twin_b = labeled_doc("b", text, 1)
        twin_a = labeled_doc("a", text, 0)
        index = build_index(Corpus((twin_b, twin_a)))
        res = knn_classify(index, text, k=1)
        assert res.neighbor_ids == ("a",)

    def test_parallel_equals_sequential(self):
        corp = disjoint_vocab_corpus(10)
        index = build_index(corp)
        for doc in list(corp)[:5]:
            seq = knn_classify(index, doc.clean_text, k=3, workers=1)
            par = knn_classify(index, doc.clean_text, k=3, workers=4)
            assert seq == par

    def test_errors(self):
        index = build_index(disjoint_vocab_corpus(3))
        with pytest.raises(ValueError, match="empty document"):
            knn_classify(index, "", k=1)
        with pytest.raises(ValueError, match="k must be"):
            knn_classify(index, "نص", k=0)
        with pytest.raises(ValueError, match="k must be"):
            knn_classify(index, "نص", k=7)


class TestSweepK:
    def test_picks_reasonable_k(self):
        corp = disjoint_vocab_corpus(10)
        train = Corpus(tuple(list(corp)[:16]))
        val = Corpus(tuple(list(corp)[16:]))
        best, scores = sweep_k(build_index(train), val, ks=(1, 3, 5, 7))
        assert best in (1, 3, 5, 7)
        assert scores[best] == max(scores.values())

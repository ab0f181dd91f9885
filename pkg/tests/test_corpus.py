import math
import random

import pytest

from dzhate.corpus import (
    Corpus,
    Document,
    load_corpus,
    save_corpus,
    stratified_split,
)

from conftest import make_corpus


def write_csv(path, rows, header="id,text,label"):
    path.write_text("\n".join([header] + rows) + "\n", encoding="utf-8")


class TestDocument:
    def test_label_source_consistency(self):
        with pytest.raises(ValueError, match="disagree"):
            Document(id="a", raw_text="نص", label=1, label_source="none")
        with pytest.raises(ValueError, match="disagree"):
            Document(id="a", raw_text="نص", label=None, label_source="auto")

    def test_clean_text_must_be_latin_free(self):
        with pytest.raises(ValueError, match="Basic Latin"):
            Document(id="a", raw_text="نص", clean_text="نص lol")

    def test_empty_clean_text_canonicalized(self):
        assert Document(id="a", raw_text="نص", clean_text="").clean_text is None

    def test_script_derived(self):
        assert Document(id="a", raw_text="salam").script == "latin"
        assert Document(id="b", raw_text="سلام").script == "arabic"


class TestLoadSave:
    def test_basic_csv(self, tmp_path):
        path = tmp_path / "c.csv"
        write_csv(path, ['d1,"نص",1', 'd2,"نص آخر",0'])
        corp = load_corpus(path, "csv")
        assert len(corp) == 2
        assert [d.label for d in corp] == [1, 0]
        assert corp[0].raw_text == "نص"

    def test_invalid_label_names_row(self, tmp_path):
        path = tmp_path / "c.csv"
        write_csv(path, ["d1,نص,1", "d2,نص,2"])
        with pytest.raises(ValueError, match="invalid label at row 3"):
            load_corpus(path, "csv")

    def test_malformed_row_names_row(self, tmp_path):
        path = tmp_path / "c.csv"
        write_csv(path, ["d1,نص,1", "d2,نص"])
        with pytest.raises(ValueError, match="row 3"):
            load_corpus(path, "csv")

    def test_duplicate_id_rejected(self, tmp_path):
        path = tmp_path / "c.csv"
        write_csv(path, ["d1,نص,1", "d1,آخر,0"])
        with pytest.raises(ValueError, match="duplicate"):
            load_corpus(path, "csv")

    def test_missing_label_means_unlabeled(self, tmp_path):
        path = tmp_path / "c.csv"
        write_csv(path, ["d1,نص,"])
        doc = load_corpus(path, "csv")[0]
        assert doc.label is None and doc.label_source == "none"

    def test_jsonl_round_trip_five_records(self, tmp_path):
        docs = [
            Document(id=f"d{i}", raw_text=f"نص رقم {i}", source="youtube",
                     clean_text=f"نص رقم", label=i % 2, label_source="auto")
            for i in range(5)
        ]
        original = Corpus(tuple(docs), note="round trip")
        path = tmp_path / "c.jsonl"
        save_corpus(original, path, "jsonl")
        loaded = load_corpus(path, "jsonl")
        # field-by-field oracle
        assert len(loaded) == len(original)
        for a, b in zip(original, loaded):
            assert (a.id, a.raw_text, a.source, a.clean_text, a.label, a.label_source) == (
                b.id, b.raw_text, b.source, b.clean_text, b.label, b.label_source)

    def test_csv_round_trip(self, tmp_path):
        corp = make_corpus(20, ones=8, seed=4)
        path = tmp_path / "c.csv"
        save_corpus(corp, path, "csv")
        assert load_corpus(path, "csv").documents == corp.documents

    def test_empty_corpus_header_only(self, tmp_path):
        path = tmp_path / "c.csv"
        save_corpus(Corpus(()), path, "csv")
        assert path.read_text(encoding="utf-8") == "id,text,label,source,label_source,clean_text\n"

    def test_arabic_preserved_byte_exact(self, tmp_path):
        text = "كرهت من هادي الميزيرية"
        corp = Corpus((Document(id="d1", raw_text=text),))
        path = tmp_path / "c.csv"
        save_corpus(corp, path, "csv")
        assert text.encode("utf-8") in path.read_bytes()

    def test_double_save_byte_identical(self, tmp_path):
        corp = make_corpus(15, ones=5, seed=9)
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        save_corpus(corp, first, "csv")
        save_corpus(load_corpus(first, "csv"), second, "csv")
        assert first.read_bytes() == second.read_bytes()

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_corpus(tmp_path / "nope.csv", "csv")


class TestStratifiedSplit:
    def test_counting_example(self):
        corp = make_corpus(100, ones=40)
        s = stratified_split(corp, (0.8, 0.1, 0.1), seed=1)

        def by_class(part):
            return (sum(1 for d in part if d.label == 1), sum(1 for d in part if d.label == 0))

        assert by_class(s.train) == (32, 48)
        assert by_class(s.validation) == (4, 6)
        assert by_class(s.test) == (4, 6)

    def test_deterministic(self):
        corp = make_corpus(50, ones=21)
        a = stratified_split(corp, (0.8, 0.1, 0.1), seed=7)
        b = stratified_split(corp, (0.8, 0.1, 0.1), seed=7)
        assert a.train.ids() == b.train.ids()
        assert a.validation.ids() == b.validation.ids()
        assert a.test.ids() == b.test.ids()

    def test_degenerate_class(self):
        docs = tuple(Document(id=f"d{i}", raw_text="نص", label=0, label_source="manual") for i in range(10))
        with pytest.raises(ValueError, match="class 1 has 0 documents"):
            stratified_split(Corpus(docs), (0.8, 0.1, 0.1), seed=0)

    def test_unlabeled_listed(self):
        docs = (
            Document(id="ok", raw_text="نص", label=0, label_source="manual"),
            Document(id="bad1", raw_text="نص"),
            Document(id="bad2", raw_text="نص"),
        )
        with pytest.raises(ValueError, match="bad1, bad2"):
            stratified_split(Corpus(docs), (0.8, 0.1, 0.1), seed=0)

    def test_ratio_validation(self):
        corp = make_corpus(20, ones=10)
        with pytest.raises(ValueError, match="sum to 1"):
            stratified_split(corp, (0.8, 0.1, 0.2), seed=0)
        with pytest.raises(ValueError, match="positive"):
            stratified_split(corp, (1.1, -0.05, -0.05), seed=0)

    def test_partition_and_proportionality_property(self):
        rng = random.Random(2024)
        for _ in range(50):
            n = rng.randint(10, 400)
            ones = rng.randint(3, n - 3)
            r1 = rng.uniform(0.5, 0.85)
            r2 = rng.uniform(0.05, (1 - r1) / 2)
            ratios = (r1, r2, 1 - r1 - r2)
            corp = make_corpus(n, ones=ones, seed=rng.randint(0, 10**6))
            s = stratified_split(corp, ratios, seed=rng.randint(0, 10**6))
            parts = [s.train, s.validation, s.test]
            ids = [set(p.ids()) for p in parts]
            # pairwise disjoint, union = input
            assert ids[0] | ids[1] | ids[2] == set(corp.ids())
            assert sum(len(i) for i in ids) == n
            # per-class deviation from exact proportionality <= 1
            for cls, total in ((1, ones), (0, n - ones)):
                for part, ratio in zip(parts, ratios):
                    got = sum(1 for d in part if d.label == cls)
                    assert abs(got - ratio * total) <= 1.0 + 1e-9

    def test_seed_changes_assignment(self):
        corp = make_corpus(30, ones=12)
        base = stratified_split(corpus=corp, ratios=(0.8, 0.1, 0.1), seed=0)
        changed = any(
            stratified_split(corp, (0.8, 0.1, 0.1), seed=s).train.ids() != base.train.ids()
            for s in range(1, 21)
        )
        assert changed

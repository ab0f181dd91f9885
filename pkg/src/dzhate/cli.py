"""Subcommand front-end wiring the modules into one workflow:

    preprocess -> annotate-auto -> serve-annotation -> split -> train-svm
    -> predict / evaluate / report

Each subcommand is one batch step reading and writing files; every artifact
records the run configuration hash so results from different pipeline
settings are never compared silently.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import autolabel, corpus as corpus_io, metrics, ncdknn, svm, textprep, translit, vectorize

CONFIG_ENV_VAR = "DZHATE_CONFIG"


@dataclass
class RunConfig:
    """Everything that influences artifact content, in one serializable blob."""

    lexicon: str | None = None
    stopwords: list[str] = field(default_factory=list)  # extra stop-word files
    emoticons: str | None = None
    rules: str | None = None
    min_token_len: int = 2
    steps: list[str] | None = None  # pipeline step override, default order if None
    match_mode: str = "token"
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1)
    seed: int = 42
    lam: float = 1e-4
    epochs: int = 30
    min_df: int = 1
    ngram_max: int = 1
    class_weight: str | None = "balanced"
    compressor: str = "deflate"
    level: int = 6
    k: int = 3

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["ratios"] = list(self.ratios)
        return d

    def hash(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def load_run_config(path: str | None, overrides: dict) -> RunConfig:
    """Config file (JSON) plus flag overrides; flags win."""
    data: dict = {}
    path = path or os.environ.get(CONFIG_ENV_VAR)
    if path:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        unknown = set(data) - {f.name for f in dataclasses.fields(RunConfig)}
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    if "ratios" in data and not isinstance(data["ratios"], tuple):
        data["ratios"] = tuple(data["ratios"])
    return RunConfig(**data)


def _pipeline_config(cfg: RunConfig) -> textprep.PipelineConfig:
    base = textprep.default_config()
    stop_words = base.stop_words
    if cfg.stopwords:
        stop_words = textprep.load_stopwords(*cfg.stopwords)
    emoticon_map = base.emoticon_map
    if cfg.emoticons:
        emoticon_map = textprep.load_emoticon_map(cfg.emoticons)
    return textprep.PipelineConfig(
        stop_words=stop_words,
        emoticon_map=emoticon_map,
        min_token_len=cfg.min_token_len,
        steps=tuple(cfg.steps) if cfg.steps else textprep.DEFAULT_STEPS,
    )


def _write_sidecar(artifact_path, cfg: RunConfig, **extra) -> None:
    meta = {"config_hash": cfg.hash(), "run_config": cfg.to_dict(), **extra}
    Path(str(artifact_path) + ".meta.json").write_text(
        json.dumps(meta, ensure_ascii=False, indent=2), encoding="utf-8"
    )


def _load_lexicon(cfg: RunConfig) -> autolabel.Lexicon:
    return autolabel.load_lexicon(cfg.lexicon) if cfg.lexicon else autolabel.load_lexicon()


def _rule_table(cfg: RunConfig) -> translit.RuleTable:
    return translit.load_rules(cfg.rules) if cfg.rules else translit.default_rules()


# ---------------------------------------------------------------------------
# subcommands

def cmd_preprocess(args) -> int:
    cfg = load_run_config(args.config, {
        "stopwords": args.stopwords or None,
        "emoticons": args.emoticons,
        "min_token_len": args.min_token_len,
    })
    pipeline = _pipeline_config(cfg)
    corp = corpus_io.load_corpus(args.input, args.format)
    cleaned = corpus_io.Corpus(
        tuple(d.with_clean_text(textprep.apply_pipeline(d.raw_text, pipeline)) for d in corp),
        note=corp.note,
    )
    corpus_io.save_corpus(cleaned, args.output, args.format)
    _write_sidecar(args.output, cfg, step="preprocess", documents=len(cleaned))
    print(f"preprocessed {len(cleaned)} documents -> {args.output}")
    return 0


def cmd_translit(args) -> int:
    cfg = load_run_config(args.config, {"rules": args.rules})
    table = _rule_table(cfg)
    if args.text is not None:
        print(translit.transliterate(args.text, table).text)
        return 0
    corp = corpus_io.load_corpus(args.input, args.format)
    converted = []
    for doc in corp:
        if doc.script in ("latin", "mixed"):
            doc = dataclasses.replace(doc, raw_text=translit.transliterate(doc.raw_text, table).text)
        converted.append(doc)
    out = corpus_io.Corpus(tuple(converted), note=corp.note)
    corpus_io.save_corpus(out, args.output, args.format)
    _write_sidecar(args.output, cfg, step="translit", documents=len(out))
    print(f"transliterated {len(out)} documents -> {args.output}")
    return 0


def cmd_annotate_auto(args) -> int:
    cfg = load_run_config(args.config, {"lexicon": args.lexicon, "match_mode": args.mode})
    corp = corpus_io.load_corpus(args.input, args.format)
    lexicon = _load_lexicon(cfg)
    labeled = autolabel.auto_annotate(corp, lexicon, mode=cfg.match_mode)
    corpus_io.save_corpus(labeled, args.output, args.format)
    ones = sum(1 for d in labeled if d.label == 1)
    _write_sidecar(args.output, cfg, step="annotate-auto", documents=len(labeled),
                   hateful=ones, lexicon_size=lexicon.size)
    print(f"annotated {len(labeled)} documents ({ones} hateful) -> {args.output}")
    return 0


def cmd_serve_annotation(args) -> int:
    from . import annotserve

    annotserve.start_session(
        corpus_path=args.corpus,
        lexicon_path=args.lexicon,
        output_path=args.output,
        host=args.host,
        port=args.port,
        log_path=args.log,
        cors_origin=args.cors_origin,
        annotator_id=args.annotator,
    )
    return 0


def cmd_split(args) -> int:
    overrides = {"seed": args.seed}
    if args.ratios:
        overrides["ratios"] = tuple(float(r) for r in args.ratios.split(","))
    cfg = load_run_config(args.config, overrides)
    corp = corpus_io.load_corpus(args.input, args.format)
    splits = corpus_io.stratified_split(corp, cfg.ratios, cfg.seed)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, part in (("train", splits.train), ("validation", splits.validation), ("test", splits.test)):
        path = out_dir / f"{name}.csv"
        corpus_io.save_corpus(part, path, "csv")
        _write_sidecar(path, cfg, step="split", part=name, documents=len(part))
        print(f"{name}: {len(part)} documents -> {path}")
    return 0


def cmd_train_svm(args) -> int:
    cfg = load_run_config(args.config, {
        "lam": args.lam, "epochs": args.epochs, "seed": args.seed,
        "min_df": args.min_df, "ngram_max": 2 if args.bigrams else None,
    })
    corp = corpus_io.load_corpus(args.train, args.format)
    docs, labels = [], []
    for d in corp:
        if d.clean_text is None or d.label is None:
            raise ValueError(f"document {d.id} lacks clean_text or label; run preprocess/annotate first")
        docs.append(d.clean_text)
        labels.append(d.label)
    tfidf = vectorize.fit(docs, min_df=cfg.min_df, ngram_range=(1, cfg.ngram_max))
    X = vectorize.transform_many(tfidf, docs)
    params = svm.SvmParams(lam=cfg.lam, epochs=cfg.epochs, seed=cfg.seed, class_weight=cfg.class_weight)
    model = svm.train_svm(X, labels, params, n_features=tfidf.n_features)
    model.vectorizer_id = tfidf.fingerprint()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    meta = {"run_config": cfg.to_dict(), "config_hash": cfg.hash()}
    vec_path, model_path = out_dir / "tfidf.json", out_dir / "svm.json"
    vectorize.save_model(tfidf, vec_path, extra=meta)
    svm.save_model(model, model_path, extra=meta)
    train_acc = sum(
        1 for x, y in zip(X, labels) if svm.predict_svm(model, x)[0] == y
    ) / len(labels)
    print(f"trained on {len(labels)} documents, |V|={tfidf.n_features}, "
          f"train accuracy {train_acc:.4f}")
    print(f"vectorizer -> {vec_path}\nmodel -> {model_path}")
    return 0


def _clean_for_inference(raw_text: str, cfg: RunConfig, pipeline, table) -> str:
    # Latin/Arabizi input is transliterated to Arabic script before cleaning
    if translit.detect_script(raw_text) in ("latin", "mixed"):
        raw_text = translit.transliterate(raw_text, table).text
    return textprep.apply_pipeline(raw_text, pipeline)


def cmd_predict(args) -> int:
    cfg = load_run_config(args.config, {"rules": args.rules, "k": args.k})
    pipeline = _pipeline_config(cfg)
    table = _rule_table(cfg)

    if args.method == "svm":
        if not args.model or not args.vectorizer:
            raise ValueError("--model and --vectorizer are required for --method svm")
        tfidf = vectorize.load_model(args.vectorizer)
        model = svm.load_model(args.model)
        if model.vectorizer_id and model.vectorizer_id != tfidf.fingerprint():
            raise ValueError(
                "incompatible model/vectorizer pair: model was trained with a different vectorizer"
            )

        def classify(clean: str) -> dict:
            label, margin = svm.predict_svm(model, vectorize.transform(tfidf, clean))
            return {"label": label, "margin": margin}
    else:
        if not args.train_corpus:
            raise ValueError("--train-corpus is required for --method ncd")
        train = corpus_io.load_corpus(args.train_corpus, args.format)
        index = ncdknn.build_index(train, cfg.compressor, cfg.level)

        def classify(clean: str) -> dict:
            res = ncdknn.knn_classify(index, clean, cfg.k, workers=args.workers)
            return {"label": res.label, "neighbor_ids": list(res.neighbor_ids),
                    "distances": list(res.distances)}

    if args.text is not None:
        clean = _clean_for_inference(args.text, cfg, pipeline, table)
        if not clean:
            raise ValueError("text is empty after preprocessing")
        result = classify(clean)
        result["clean_text"] = clean
        print(json.dumps(result, ensure_ascii=False))
        return 0

    corp = corpus_io.load_corpus(args.input, args.format)
    predicted = []
    for doc in corp:
        clean = _clean_for_inference(doc.raw_text, cfg, pipeline, table)
        label = classify(clean)["label"] if clean else 0
        predicted.append(
            dataclasses.replace(doc, clean_text=clean or None, label=label, label_source="predicted")
        )
    out = corpus_io.Corpus(tuple(predicted), note=corp.note)
    corpus_io.save_corpus(out, args.output, args.format)
    _write_sidecar(args.output, cfg, step="predict", method=args.method, documents=len(out))
    print(f"predicted {len(out)} documents -> {args.output}")
    return 0


def cmd_evaluate(args) -> int:
    cfg = load_run_config(args.config, {})
    gold = corpus_io.load_corpus(args.gold, args.format)
    pred = corpus_io.load_corpus(args.pred, args.format)
    pred_by_id = {d.id: d for d in pred}
    golds, preds = [], []
    for doc in gold:
        if doc.label is None:
            raise ValueError(f"gold document {doc.id} is unlabeled")
        if doc.id not in pred_by_id:
            raise ValueError(f"no prediction for document {doc.id}")
        p = pred_by_id[doc.id]
        if p.label is None:
            raise ValueError(f"prediction for document {doc.id} is unlabeled")
        golds.append(doc.label)
        preds.append(p.label)
    report = metrics.compute_metrics(metrics.confusion(golds, preds))
    named = [(args.name, report)]
    print(metrics.render_report(named, per_class=args.per_class))
    if args.out:
        Path(args.out).write_text(
            metrics.report_json(named, extra={"config_hash": cfg.hash(),
                                              "run_config": cfg.to_dict()}),
            encoding="utf-8",
        )
        print(f"metrics -> {args.out}")
    return 0


def cmd_report(args) -> int:
    named = []
    hashes = {}
    for path in args.metrics:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        meta = payload.pop("_meta", {})
        hashes[path] = meta.get("config_hash")
        for name, values in payload.items():
            rep = metrics.MetricsReport(
                accuracy=values["accuracy"],
                precision=(values["per_class"]["0"]["precision"], values["per_class"]["1"]["precision"]),
                recall=(values["per_class"]["0"]["recall"], values["per_class"]["1"]["recall"]),
                f1=(values["per_class"]["0"]["f1"], values["per_class"]["1"]["f1"]),
                support=(values["per_class"]["0"]["support"], values["per_class"]["1"]["support"]),
                undefined=tuple(values.get("undefined", ())),
            )
            named.append((name, rep))
    distinct = {h for h in hashes.values() if h is not None}
    if len(distinct) > 1 and not args.force:
        detail = "; ".join(f"{Path(p).name}={h}" for p, h in hashes.items())
        raise ValueError(f"metrics come from different pipeline configs ({detail}); pass --force to compare anyway")
    print(metrics.render_report(named, per_class=args.per_class))
    return 0


# ---------------------------------------------------------------------------
# argument parsing

def _add_common(p, config=True, fmt=True):
    if config:
        p.add_argument("--config", help=f"run config JSON (default: ${CONFIG_ENV_VAR})")
    if fmt:
        p.add_argument("--format", choices=("csv", "jsonl"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dzhate",
        description="Hate-speech detection workflow for Algerian-dialect Arabic text.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="run the cleaning pipeline over a corpus")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--stopwords", action="append", help="stop-word file (repeatable, replaces bundled lists)")
    p.add_argument("--emoticons", help="emoticon map file (key<TAB>emoji)")
    p.add_argument("--min-token-len", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("translit", help="transliterate Arabizi text to Arabic script")
    p.add_argument("--in", dest="input")
    p.add_argument("--out", dest="output")
    p.add_argument("--text", help="transliterate a single string and print it")
    p.add_argument("--rules", help="rule table TSV")
    _add_common(p)
    p.set_defaults(func=cmd_translit)

    p = sub.add_parser("annotate-auto", help="keyword-lexicon automatic labeling")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--lexicon", help="keyword file, one per line (default: bundled seed)")
    p.add_argument("--mode", choices=("token", "substring"), default=None)
    _add_common(p)
    p.set_defaults(func=cmd_annotate_auto)

    p = sub.add_parser("serve-annotation", help="run the manual review HTTP service")
    p.add_argument("--corpus", required=True, help="auto-annotated corpus CSV")
    p.add_argument("--lexicon")
    p.add_argument("--out", dest="output", required=True, help="validated corpus CSV")
    p.add_argument("--log", help="event log path (default: <out>.events.jsonl)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8750)
    p.add_argument("--cors-origin", default="*")
    p.add_argument("--annotator", default="default", help="annotator id recorded in the event log")
    p.set_defaults(func=cmd_serve_annotation)

    p = sub.add_parser("split", help="stratified train/validation/test split")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--ratios", help="three comma-separated fractions, e.g. 0.8,0.1,0.1")
    p.add_argument("--seed", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("train-svm", help="fit TF-IDF and train the linear classifier")
    p.add_argument("--train", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--lam", type=float, default=None)
    p.add_argument("--epochs", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--min-df", type=int, default=None)
    p.add_argument("--bigrams", action="store_true", help="add bigram features")
    _add_common(p)
    p.set_defaults(func=cmd_train_svm)

    p = sub.add_parser("predict", help="classify text or a corpus file")
    p.add_argument("--method", choices=("svm", "ncd"), default="svm")
    p.add_argument("--model", help="svm model JSON")
    p.add_argument("--vectorizer", help="tf-idf model JSON")
    p.add_argument("--train-corpus", help="training corpus for --method ncd")
    p.add_argument("--k", type=int, default=None, help="neighbors for --method ncd")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--text", help="classify a single string")
    p.add_argument("--in", dest="input")
    p.add_argument("--out", dest="output")
    p.add_argument("--rules", help="transliteration rule table TSV")
    _add_common(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="score predictions against gold labels")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--out", help="write metrics JSON here")
    p.add_argument("--name", default="model")
    p.add_argument("--per-class", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("report", help="combined table from metrics JSON files")
    p.add_argument("--metrics", nargs="+", required=True)
    p.add_argument("--per-class", action="store_true")
    p.add_argument("--force", action="store_true", help="compare runs with different configs")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "predict" and args.text is None and (not args.input or not args.output):
        parser.error("predict needs --text or both --in and --out")
    if args.command == "translit" and args.text is None and (not args.input or not args.output):
        parser.error("translit needs --text or both --in and --out")
    try:
        return args.func(args)
    except (ValueError, KeyError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Hate-speech detection toolkit for Algerian-dialect Arabic text."""

from .corpus import Corpus, Document, SplitSets, load_corpus, save_corpus, stratified_split
from .textprep import PipelineConfig, apply_pipeline, default_config, normalize_arabic
from .translit import RuleTable, detect_script, transliterate
from .autolabel import Lexicon, auto_annotate, highlight_matches, load_lexicon, remap_external
from .vectorize import SparseVector, TfIdfModel
from .svm import LinearModel, SvmParams, predict_svm, train_svm
from .ncdknn import NcdIndex, build_index, compressed_len, knn_classify, ncd
from .metrics import ConfusionMatrix, MetricsReport, compute_metrics, confusion, render_report

__version__ = "0.1.0"

__all__ = [
    "Corpus", "Document", "SplitSets", "load_corpus", "save_corpus", "stratified_split",
    "PipelineConfig", "apply_pipeline", "default_config", "normalize_arabic",
    "RuleTable", "detect_script", "transliterate",
    "Lexicon", "auto_annotate", "highlight_matches", "load_lexicon", "remap_external",
    "SparseVector", "TfIdfModel",
    "LinearModel", "SvmParams", "predict_svm", "train_svm",
    "NcdIndex", "build_index", "compressed_len", "knn_classify", "ncd",
    "ConfusionMatrix", "MetricsReport", "compute_metrics", "confusion", "render_report",
    "__version__",
]

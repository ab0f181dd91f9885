"""Confusion-matrix metrics (accuracy, per-class precision/recall/F1) and
plain-text / JSON result tables."""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    precision: tuple[float, float]  # (class 0, class 1)
    recall: tuple[float, float]
    f1: tuple[float, float]
    support: tuple[int, int]
    undefined: tuple[str, ...] = ()  # metrics that hit 0/0 and were set to 0

    @property
    def macro_precision(self) -> float:
        return (self.precision[0] + self.precision[1]) / 2

    @property
    def macro_recall(self) -> float:
        return (self.recall[0] + self.recall[1]) / 2

    @property
    def macro_f1(self) -> float:
        return (self.f1[0] + self.f1[1]) / 2

    def _weighted(self, values: tuple[float, float]) -> float:
        n = sum(self.support)
        return (values[0] * self.support[0] + values[1] * self.support[1]) / n

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "per_class": {
                str(c): {
                    "precision": self.precision[c],
                    "recall": self.recall[c],
                    "f1": self.f1[c],
                    "support": self.support[c],
                }
                for c in (0, 1)
            },
            "macro": {
                "precision": self.macro_precision,
                "recall": self.macro_recall,
                "f1": self.macro_f1,
            },
            "weighted": {
                "precision": self._weighted(self.precision),
                "recall": self._weighted(self.recall),
                "f1": self._weighted(self.f1),
            },
            "undefined": list(self.undefined),
        }


def confusion(golds: list[int], preds: list[int]) -> ConfusionMatrix:
    """Count tp/fp/tn/fn with class 1 as positive."""
    if len(golds) != len(preds):
        raise ValueError(f"length mismatch: {len(golds)} golds vs {len(preds)} preds")
    if not golds:
        raise ValueError("cannot build a confusion matrix from zero pairs")
    tp = fp = tn = fn = 0
    for g, p in zip(golds, preds):
        if g not in (0, 1) or p not in (0, 1):
            raise ValueError(f"labels must be 0 or 1, got gold={g!r} pred={p!r}")
        if g == 1 and p == 1:
            tp += 1
        elif g == 0 and p == 1:
            fp += 1
        elif g == 0 and p == 0:
            tn += 1
        else:
            fn += 1
    return ConfusionMatrix(tp, fp, tn, fn)


def _ratio(num: int, den: int, name: str, undefined: list[str]) -> float:
    if den == 0:
        undefined.append(name)
        return 0.0
    return num / den


def compute_metrics(cm: ConfusionMatrix) -> MetricsReport:
    """Accuracy plus per-class precision/recall/F1; 0/0 ratios become 0 and
    are flagged in `undefined` instead of propagating NaN."""
    if cm.total == 0:
        raise ValueError("empty confusion matrix")
    undefined: list[str] = []
    p1 = _ratio(cm.tp, cm.tp + cm.fp, "precision_1", undefined)
    r1 = _ratio(cm.tp, cm.tp + cm.fn, "recall_1", undefined)
    p0 = _ratio(cm.tn, cm.tn + cm.fn, "precision_0", undefined)
    r0 = _ratio(cm.tn, cm.tn + cm.fp, "recall_0", undefined)
    f1_1 = _ratio_f1(p1, r1, "f1_1", undefined)
    f1_0 = _ratio_f1(p0, r0, "f1_0", undefined)
    return MetricsReport(
        accuracy=(cm.tp + cm.tn) / cm.total,
        precision=(p0, p1),
        recall=(r0, r1),
        f1=(f1_0, f1_1),
        support=(cm.tn + cm.fp, cm.tp + cm.fn),
        undefined=tuple(undefined),
    )


def _ratio_f1(p: float, r: float, name: str, undefined: list[str]) -> float:
    if p + r == 0:
        undefined.append(name)
        return 0.0
    return 2 * p * r / (p + r)


def _cell(value: float, per_class: tuple[float, float] | None) -> str:
    if per_class is None:
        return f"{value:.2f}"
    return f"{per_class[0]:.2f}(Class0); {per_class[1]:.2f}(Class1)"


def render_report(named_reports: list[tuple[str, MetricsReport]], per_class: bool = False) -> str:
    """Fixed-column text table (Accuracy, Precision, Recall, F1), 2-decimal
    values, optionally expanded per class."""
    if not named_reports:
        raise ValueError("at least one report required")
    rows = [("Model", "Accuracy", "Precision", "Recall", "F1 Score")]
    for name, rep in named_reports:
        if not name:
            raise ValueError("model name must be non-empty")
        rows.append(
            (
                name,
                f"{rep.accuracy:.2f}",
                _cell(rep.macro_precision, rep.precision if per_class else None),
                _cell(rep.macro_recall, rep.recall if per_class else None),
                _cell(rep.macro_f1, rep.f1 if per_class else None),
            )
        )
    widths = [max(len(row[c]) for row in rows) for c in range(5)]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(widths[c]) for c, cell in enumerate(row)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def report_json(named_reports: list[tuple[str, MetricsReport]], extra: dict | None = None) -> str:
    payload = {name: rep.to_dict() for name, rep in named_reports}
    if extra:
        payload["_meta"] = extra
    return json.dumps(payload, ensure_ascii=False, indent=2)

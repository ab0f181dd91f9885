"""Linear hinge-loss classifier trained by Pegasos-style stochastic
subgradient descent over sparse TF-IDF vectors.

Training is bit-deterministic for a fixed seed: one shuffle schedule per
epoch, learning rate 1/(lambda*t), optional projection onto the
1/sqrt(lambda) ball to tame the early iterates.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .vectorize import SparseVector


@dataclass(frozen=True)
class SvmParams:
    lam: float = 1e-4
    epochs: int = 30
    seed: int = 0
    class_weight: str | None = "balanced"  # "balanced", None, or explicit below
    weights_by_class: tuple[float, float] | None = None
    project: bool = True


@dataclass
class LinearModel:
    weights: np.ndarray
    bias: float
    params: SvmParams
    vectorizer_id: str = ""
    loss_history: list[float] = field(default_factory=list)

    @property
    def n_features(self) -> int:
        return int(self.weights.shape[0])


def _class_weights(y: list[int], params: SvmParams) -> tuple[float, float]:
    if params.weights_by_class is not None:
        return params.weights_by_class
    if params.class_weight == "balanced":
        n = len(y)
        n1 = sum(y)
        n0 = n - n1
        return (n / (2.0 * n0), n / (2.0 * n1))
    return (1.0, 1.0)


def _check_features(X: list[SparseVector]) -> int:
    n_features = 0
    for i, x in enumerate(X):
        for v in x.values:
            if not math.isfinite(v):
                raise ValueError(f"non-finite feature value in sample {i}")
        if x.indices:
            n_features = max(n_features, x.indices[-1] + 1)
    return n_features


def _margin(w: np.ndarray, b: float, x: SparseVector) -> float:
    total = b
    for i, v in zip(x.indices, x.values):
        total += w[i] * v
    return float(total)


def objective(
    w: np.ndarray,
    b: float,
    X: list[SparseVector],
    y: list[int],
    lam: float,
    class_weights: tuple[float, float] = (1.0, 1.0),
) -> float:
    """lam/2 ||w||^2 + mean weighted hinge loss, labels mapped to {-1,+1}."""
    hinge = 0.0
    for x, label in zip(X, y):
        sign = 1.0 if label == 1 else -1.0
        hinge += class_weights[label] * max(0.0, 1.0 - sign * _margin(w, b, x))
    return 0.5 * lam * float(w @ w) + hinge / len(X)


def subgradient(
    w: np.ndarray,
    b: float,
    X: list[SparseVector],
    y: list[int],
    lam: float,
    class_weights: tuple[float, float] = (1.0, 1.0),
) -> tuple[np.ndarray, float]:
    """Analytic subgradient of `objective` at (w, b)."""
    gw = lam * w.copy()
    gb = 0.0
    n = len(X)
    for x, label in zip(X, y):
        sign = 1.0 if label == 1 else -1.0
        if sign * _margin(w, b, x) < 1.0:
            coeff = class_weights[label] * sign / n
            for i, v in zip(x.indices, x.values):
                gw[i] -= coeff * v
            gb -= coeff
    return gw, gb


def train_svm(
    X: list[SparseVector],
    y: list[int],
    params: SvmParams = SvmParams(),
    n_features: int | None = None,
) -> LinearModel:
    """Fit the hinge-loss linear classifier; same (data, params) in, same
    weights out, bit for bit."""
    if len(X) != len(y) or len(X) < 2:
        raise ValueError("need matching X and y with at least 2 samples")
    if any(label not in (0, 1) for label in y):
        raise ValueError("labels must be 0 or 1")
    if len(set(y)) < 2:
        raise ValueError("training data contains a single class")
    inferred = _check_features(X)
    if n_features is None:
        n_features = inferred
    elif inferred > n_features:
        raise ValueError(f"feature index {inferred - 1} exceeds n_features={n_features}")

    cw = _class_weights(y, params)
    lam = params.lam
    w = np.zeros(n_features, dtype=np.float64)
    b = 0.0
    radius = 1.0 / math.sqrt(lam) if params.project else None

    rng = np.random.RandomState(params.seed)
    signs = np.where(np.asarray(y) == 1, 1.0, -1.0)
    t = 0
    # the SGD iterates oscillate, so the kept model is the best epoch-end
    # checkpoint by objective; history records the kept model's loss
    best_obj = math.inf
    best_w, best_b = w.copy(), b
    history = []
    for _ in range(params.epochs):
        for i in rng.permutation(len(X)):
            t += 1
            eta = 1.0 / (lam * t)
            x = X[i]
            active = signs[i] * _margin(w, b, x) < 1.0
            w *= 1.0 - eta * lam
            b *= 1.0 - eta * lam
            if active:
                step = eta * cw[y[i]] * signs[i]
                for j, v in zip(x.indices, x.values):
                    w[j] += step * v
                b += step
            if radius is not None:
                norm = math.sqrt(float(w @ w) + b * b)
                if norm > radius:
                    scale = radius / norm
                    w *= scale
                    b *= scale
        epoch_obj = objective(w, b, X, y, lam, cw)
        if epoch_obj < best_obj:
            best_obj, best_w, best_b = epoch_obj, w.copy(), b
        history.append(best_obj)
    return LinearModel(weights=best_w, bias=best_b, params=params, loss_history=history)


def predict_svm(model: LinearModel, x: SparseVector) -> tuple[int, float]:
    """(label, margin) with margin = w.x + b; ties (margin == 0) go to 0."""
    if x.indices and x.indices[-1] >= model.n_features:
        raise ValueError(
            f"feature index {x.indices[-1]} out of range for model with "
            f"{model.n_features} features"
        )
    margin = _margin(model.weights, model.bias, x)
    return (1 if margin > 0 else 0, margin)


def save_model(model: LinearModel, path, extra: dict | None = None) -> None:
    payload = {
        "format": "dzhate-svm-v1",
        "weights": model.weights.tolist(),
        "bias": model.bias,
        "params": {
            "lam": model.params.lam,
            "epochs": model.params.epochs,
            "seed": model.params.seed,
            "class_weight": model.params.class_weight,
            "weights_by_class": model.params.weights_by_class,
            "project": model.params.project,
        },
        "vectorizer_id": model.vectorizer_id,
        "loss_history": model.loss_history,
    }
    if extra:
        payload.update(extra)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)


def load_model(path) -> LinearModel:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != "dzhate-svm-v1":
        raise ValueError(f"not an svm model file: {path}")
    p = payload["params"]
    params = SvmParams(
        lam=p["lam"],
        epochs=p["epochs"],
        seed=p["seed"],
        class_weight=p["class_weight"],
        weights_by_class=tuple(p["weights_by_class"]) if p["weights_by_class"] else None,
        project=p["project"],
    )
    return LinearModel(
        weights=np.asarray(payload["weights"], dtype=np.float64),
        bias=payload["bias"],
        params=params,
        vectorizer_id=payload.get("vectorizer_id", ""),
        loss_history=payload.get("loss_history", []),
    )

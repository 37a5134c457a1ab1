"""Weighted logistic regression trained by mini-batch SGD.

The objective is sum_i w_i * L(y_i, score_i) with L the cross-entropy;
callers are expected to pass weights that sum to 1, so the uniform case
(w_i = 1/m) equals the plain mean cross-entropy. Each mini-batch step uses
the batch's weighted gradient sum scaled by m / batch_size, which makes
the expected step equal the full-objective gradient and keeps the step
magnitude independent of batch size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SCORE_EPS = 1e-12  # clamp distance from {0, 1} inside the log


class TrainingError(RuntimeError):
    """Raised when training encounters a non-finite loss or gradient."""


@dataclass
class ModelParams:
    coefficients: np.ndarray
    intercept: float

    def __post_init__(self):
        self.coefficients = np.asarray(self.coefficients, dtype=np.float64)
        if not (np.all(np.isfinite(self.coefficients)) and np.isfinite(self.intercept)):
            raise ValueError("model parameters must be finite")

    def copy(self) -> "ModelParams":
        return ModelParams(self.coefficients.copy(), self.intercept)

    def to_dict(self, feature_names=None) -> dict:
        return {
            "coefficients": self.coefficients.tolist(),
            "intercept": self.intercept,
            "feature_names": list(feature_names) if feature_names else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelParams":
        return cls(np.asarray(d["coefficients"]), float(d["intercept"]))


@dataclass
class TrainSettings:
    epochs: int = 200
    learning_rate: float = 0.1
    batch_size: int = 1000
    seed: int = 0
    shuffle: bool = True

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be positive")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")


def init_params(dim: int, seed: int, scale: float = 0.01) -> ModelParams:
    """Small symmetric random coefficients, zero intercept.

    ``scale=0`` gives exact zero initialization for reproducible tests.
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if scale == 0.0:
        return ModelParams(np.zeros(dim), 0.0)
    rng = np.random.default_rng(seed)
    return ModelParams(scale * rng.standard_normal(dim), 0.0)


_SIGMOID_LO = np.finfo(np.float64).tiny
_SIGMOID_HI = 1.0 - np.finfo(np.float64).epsneg


def _sigmoid(z: np.ndarray) -> np.ndarray:
    # stable: never exponentiates a large positive argument; clipped into
    # the open interval so saturated scores stay strictly inside (0, 1)
    out = np.empty_like(z, dtype=np.float64)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return np.clip(out, _SIGMOID_LO, _SIGMOID_HI)


def predict_scores(params: ModelParams, X: np.ndarray) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if X.shape[1] != len(params.coefficients):
        raise ValueError(
            f"dimension mismatch: {X.shape[1]} columns vs "
            f"{len(params.coefficients)} coefficients"
        )
    return _sigmoid(X @ params.coefficients + params.intercept)


def predict_score(params: ModelParams, row) -> float:
    return float(predict_scores(params, np.asarray(row).reshape(1, -1))[0])


def predict_labels(scores, d: float = 0.5) -> np.ndarray:
    """Threshold scores at d; a score exactly equal to d maps to 1."""
    if not 0.0 < d < 1.0:
        raise ValueError(f"decision boundary d must be in (0, 1), got {d}")
    return (np.asarray(scores) >= d).astype(np.int64)


def predict_label(score: float, d: float = 0.5) -> int:
    return int(predict_labels(np.asarray([score]), d)[0])


def _check_weights(weights: np.ndarray, m: int):
    if len(weights) != m:
        raise ValueError(f"weights length {len(weights)} != m {m}")
    if np.any(weights < 0):
        raise ValueError("weights must be nonnegative")


def weighted_loss(params: ModelParams, X: np.ndarray, y: np.ndarray, weights) -> float:
    """sum_i w_i * cross_entropy(y_i, score_i), scores clamped by 1e-12."""
    weights = np.asarray(weights, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_weights(weights, len(y))
    s = np.clip(predict_scores(params, X), SCORE_EPS, 1.0 - SCORE_EPS)
    return float(np.sum(weights * -(y * np.log(s) + (1.0 - y) * np.log(1.0 - s))))


def gradient(
    params: ModelParams, X: np.ndarray, y: np.ndarray, weights
) -> tuple[np.ndarray, float]:
    """Analytic gradient of the weighted cross-entropy over these rows.

    Returns (d/d coefficients, d/d intercept).
    """
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    y = np.asarray(y, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    _check_weights(weights, len(y))
    s = predict_scores(params, X)
    residual = weights * (s - y)
    return X.T @ residual, float(residual.sum())


def train_weighted(
    params: ModelParams,
    ds,
    weights,
    settings: TrainSettings,
    rng: np.random.Generator | None = None,
) -> ModelParams:
    """Mini-batch SGD on the weighted objective, warm-starting from params.

    The shuffle order is drawn from ``rng`` when given (so an outer loop can
    keep one stream across repeated calls), else from ``settings.seed``.
    """
    X, y = ds.features, ds.labels
    m = len(y)
    weights = np.asarray(weights, dtype=np.float64)
    _check_weights(weights, m)
    if rng is None:
        rng = np.random.default_rng(settings.seed)

    params = params.copy()
    coef, intercept = params.coefficients, params.intercept
    lr = settings.learning_rate
    bs = settings.batch_size
    for epoch in range(settings.epochs):
        order = rng.permutation(m) if settings.shuffle else np.arange(m)
        for start in range(0, m, bs):
            batch = order[start : start + bs]
            g_coef, g_int = gradient(
                ModelParams(coef, intercept), X[batch], y[batch], weights[batch]
            )
            scale = lr * (m / len(batch))
            coef = coef - scale * g_coef
            intercept = intercept - scale * g_int
            if not (np.all(np.isfinite(coef)) and np.isfinite(intercept)):
                raise TrainingError(
                    f"non-finite parameters at epoch {epoch}, batch {start // bs}"
                )
    return ModelParams(coef, intercept)

"""Adaptive priority reweighing: subgroup-ratio weight updates plus a
margin softmax that concentrates weight near the decision boundary.

The outer loop alternates: train the weighted scorer, score every row,
update the four subgroup weights by the ratio of expected to observed cell
probability (damped by alpha), then redistribute each subgroup's mass over
its rows with softmax(-eta * margin). Subgroup membership for the
redistribution step uses the true labels; the demographic-parity ratio
counts use the current predictions.

Sample weights are renormalized to sum to 1 after every update so the
inner objective's scale does not drift across iterations; relative weights
are unchanged by this.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, subgroup_stats
from .metrics import FairnessReport, fairness_report
from .model import (
    ModelParams,
    TrainSettings,
    init_params,
    predict_labels,
    predict_scores,
    train_weighted,
    weighted_loss,
)

CELLS = [(y, a) for y in (0, 1) for a in (0, 1)]


class FairnessCriterion(enum.Enum):
    DEMOGRAPHIC_PARITY = "dp"
    EQUALIZED_ODDS = "eo"
    EQUAL_OPPORTUNITY = "eop"


class ReweighError(ValueError):
    """Raised for undefined subgroup ratios or invalid configuration."""


@dataclass
class WeightState:
    subgroup_weights: dict          # (y, a) -> W_{y,a} > 0
    sample_weights: np.ndarray      # length m, positive, sums to 1
    margins: np.ndarray             # length m, in [0, max(d, 1-d)]
    iteration: int


@dataclass
class ReweighConfig:
    criterion: FairnessCriterion = FairnessCriterion.DEMOGRAPHIC_PARITY
    alpha: float = 0.0
    eta: float = 1.0
    d: float = 0.5
    outer_iterations: int = 200
    inner: TrainSettings = field(
        default_factory=lambda: TrainSettings(epochs=1, learning_rate=0.1)
    )
    early_stop_gap: float | None = None

    def __post_init__(self):
        if not 0.0 < self.d < 1.0:
            raise ReweighError(f"d must be in (0, 1), got {self.d}")
        if self.alpha < 0:
            raise ReweighError("alpha must be nonnegative")
        if self.eta < 0:
            raise ReweighError("eta must be nonnegative")
        if self.outer_iterations < 1:
            raise ReweighError("outer_iterations must be positive")


@dataclass
class TraceRecord:
    iteration: int
    subgroup_weights: dict
    train_report: FairnessReport
    weighted_loss: float

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "subgroup_weights": {f"{y},{a}": w for (y, a), w in self.subgroup_weights.items()},
            "train_report": self.train_report.to_dict(),
            "weighted_loss": self.weighted_loss,
        }


@dataclass
class TrainTrace:
    records: list[TraceRecord] = field(default_factory=list)

    def to_json_lines(self) -> str:
        import json

        return "\n".join(json.dumps(r.to_dict()) for r in self.records)


def compute_margins(scores, d: float) -> np.ndarray:
    """Absolute distance of each score from the decision boundary."""
    if not 0.0 < d < 1.0:
        raise ReweighError(f"d must be in (0, 1), got {d}")
    return np.abs(np.asarray(scores, dtype=np.float64) - d)


def _ratio(num_count: float, den_count: float, alpha: float) -> float:
    """(num_count + alpha) / (den_count + alpha); alpha=inf pins the ratio to 1."""
    if math.isinf(alpha):
        return 1.0
    den = den_count + alpha
    if den == 0:
        raise ReweighError("zero denominator in subgroup update (empty cell, alpha=0)")
    return (num_count + alpha) / den


def update_subgroup_weights_dp(W_prev: dict, preds, sensitive, alpha: float) -> dict:
    """Demographic-parity ratio update over the four (pred, sensitive) cells."""
    preds = np.asarray(preds, dtype=np.int64)
    sensitive = np.asarray(sensitive, dtype=np.int64)
    m = len(preds)
    out = {}
    for y, a in CELLS:
        n_pred = int(np.sum(preds == y))
        n_sens = int(np.sum(sensitive == a))
        n_cell = int(np.sum((preds == y) & (sensitive == a)))
        out[(y, a)] = W_prev[(y, a)] * _ratio(n_pred * n_sens, m * n_cell, alpha)
    return out


def update_subgroup_weights_eo(W_prev: dict, preds, labels, sensitive, alpha: float) -> dict:
    """Equalized-odds update: per label class, ratio of expected to observed
    correct predictions within each sensitive group."""
    preds = np.asarray(preds, dtype=np.int64)
    labels = np.asarray(labels, dtype=np.int64)
    sensitive = np.asarray(sensitive, dtype=np.int64)
    out = {}
    for y, a in CELLS:
        correct_y = (preds == y) & (labels == y)
        n_correct = int(np.sum(correct_y))
        n_class_group = int(np.sum((labels == y) & (sensitive == a)))
        n_cell = int(np.sum(correct_y & (sensitive == a)))
        m_y = int(np.sum(labels == y))
        out[(y, a)] = W_prev[(y, a)] * _ratio(
            n_correct * n_class_group, m_y * n_cell, alpha
        )
    return out


def update_subgroup_weights_eop(W_prev: dict, preds, labels, sensitive, alpha: float) -> dict:
    """Equal-opportunity update: the equalized-odds rule restricted to y=1;
    negative-class weights are carried through unchanged."""
    eo = update_subgroup_weights_eo(W_prev, preds, labels, sensitive, alpha)
    return {
        (1, 0): eo[(1, 0)],
        (1, 1): eo[(1, 1)],
        (0, 0): W_prev[(0, 0)],
        (0, 1): W_prev[(0, 1)],
    }


def compute_sample_weights(
    W: dict,
    stats,
    margins: np.ndarray,
    labels,
    sensitive,
    eta: float,
    criterion: FairnessCriterion,
) -> np.ndarray:
    """Distribute subgroup mass over rows by the margin softmax.

    Each row in subgroup (y, a) gets
    (W_{y,a} / sum W) * p_{y,a} * softmax(-eta * margin within the subgroup);
    for equal opportunity, y=0 rows instead get the uniform 1/(m * sum W).
    The result is renormalized to sum to exactly 1.
    """
    if eta < 0:
        raise ReweighError("eta must be nonnegative")
    labels = np.asarray(labels, dtype=np.int64)
    sensitive = np.asarray(sensitive, dtype=np.int64)
    margins = np.asarray(margins, dtype=np.float64)
    m = stats.m
    if len(margins) != m:
        raise ReweighError(f"margins length {len(margins)} != m {m}")
    w_total = sum(W[cell] for cell in CELLS)
    w = np.empty(m, dtype=np.float64)
    for y, a in CELLS:
        idx = np.flatnonzero((labels == y) & (sensitive == a))
        if len(idx) == 0:
            if W[(y, a)] > 0 and stats.proportions[(y, a)] > 0:
                raise ReweighError(f"empty subgroup y={y}, a={a} assigned mass")
            continue
        if criterion is FairnessCriterion.EQUAL_OPPORTUNITY and y == 0:
            w[idx] = 1.0 / (m * w_total)
            continue
        phi = margins[idx]
        shares = np.exp(-eta * (phi - phi.min()))  # shift is softmax-invariant
        shares /= shares.sum()
        w[idx] = (W[(y, a)] / w_total) * stats.proportions[(y, a)] * shares
    return w / w.sum()


_UPDATES = {
    FairnessCriterion.DEMOGRAPHIC_PARITY: lambda W, preds, labels, sens, alpha: update_subgroup_weights_dp(
        W, preds, sens, alpha
    ),
    FairnessCriterion.EQUALIZED_ODDS: update_subgroup_weights_eo,
    FairnessCriterion.EQUAL_OPPORTUNITY: update_subgroup_weights_eop,
}


def _criterion_gap(report: FairnessReport, criterion: FairnessCriterion) -> float | None:
    return {
        FairnessCriterion.DEMOGRAPHIC_PARITY: report.delta_dp,
        FairnessCriterion.EQUALIZED_ODDS: report.delta_eo,
        FairnessCriterion.EQUAL_OPPORTUNITY: report.delta_eop,
    }[criterion]


def train_fair(
    ds: Dataset, cfg: ReweighConfig, seed: int
) -> tuple[ModelParams, TrainTrace]:
    """Run the full outer reweighing loop for the configured criterion.

    Iteration 0 trains with uniform weights; each later iteration rescores
    the training rows, updates the subgroup and sample weights, and
    continues training from the previous parameters (warm start).
    """
    if len(np.unique(ds.sensitive)) < 2 or len(np.unique(ds.labels)) < 2:
        raise ReweighError("dataset must contain both sensitive groups and both labels")
    m = ds.m
    stats = subgroup_stats(ds.labels, ds.sensitive)
    rng = np.random.default_rng(seed)
    params = init_params(ds.n_features, seed)
    W = {cell: 1.0 for cell in CELLS}
    weights = np.full(m, 1.0 / m)

    params = train_weighted(params, ds, weights, cfg.inner, rng=rng)
    trace = TrainTrace()
    for t in range(1, cfg.outer_iterations + 1):
        scores = predict_scores(params, ds.features)
        preds = predict_labels(scores, cfg.d)
        margins = compute_margins(scores, cfg.d)
        W = _UPDATES[cfg.criterion](W, preds, ds.labels, ds.sensitive, cfg.alpha)
        weights = compute_sample_weights(
            W, stats, margins, ds.labels, ds.sensitive, cfg.eta, cfg.criterion
        )
        params = train_weighted(params, ds, weights, cfg.inner, rng=rng)

        report = fairness_report(predict_labels(predict_scores(params, ds.features), cfg.d), ds.labels, ds.sensitive)
        trace.records.append(
            TraceRecord(
                iteration=t,
                subgroup_weights=dict(W),
                train_report=report,
                weighted_loss=weighted_loss(params, ds.features, ds.labels, weights),
            )
        )
        gap = _criterion_gap(report, cfg.criterion)
        if (
            cfg.early_stop_gap is not None
            and gap is not None
            and gap <= cfg.early_stop_gap
        ):
            break
    return params, trace

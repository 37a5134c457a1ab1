"""Accuracy and group-fairness gaps for binary predictions.

All gaps are fractions in [0, 1]; the harness multiplies by 100 when
rendering percentage tables. Single-metric functions raise when a needed
conditional is undefined (empty group/cell); the aggregate report marks
such metrics absent instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class MetricError(ValueError):
    """Raised when a requested rate is undefined on the given data."""


@dataclass
class FairnessReport:
    accuracy: float
    delta_dp: float | None
    delta_eo: float | None
    delta_eop: float | None
    group_rates: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "delta_dp": self.delta_dp,
            "delta_eo": self.delta_eo,
            "delta_eop": self.delta_eop,
            "group_rates": {str(k): v for k, v in self.group_rates.items()},
        }


def _as_binary(name: str, x) -> np.ndarray:
    arr = np.asarray(x, dtype=np.int64)
    if arr.ndim != 1:
        raise MetricError(f"{name} must be 1-D")
    return arr


def _check_lengths(**vectors):
    lengths = {k: len(v) for k, v in vectors.items()}
    if len(set(lengths.values())) > 1:
        raise MetricError(f"length mismatch: {lengths}")
    if next(iter(lengths.values())) == 0:
        raise MetricError("empty input")


def accuracy(preds, labels) -> float:
    preds = _as_binary("preds", preds)
    labels = _as_binary("labels", labels)
    _check_lengths(preds=preds, labels=labels)
    return float(np.mean(preds == labels))


def _positive_rate(preds: np.ndarray, mask: np.ndarray, cell: str) -> float:
    n = int(mask.sum())
    if n == 0:
        raise MetricError(f"empty cell: {cell}")
    return float(preds[mask].sum() / n)


def delta_dp(preds, sensitive) -> float:
    """|P(pred=1 | a=0) - P(pred=1 | a=1)| with empirical frequencies."""
    preds = _as_binary("preds", preds)
    sensitive = _as_binary("sensitive", sensitive)
    _check_lengths(preds=preds, sensitive=sensitive)
    r0 = _positive_rate(preds, sensitive == 0, "a=0")
    r1 = _positive_rate(preds, sensitive == 1, "a=1")
    return abs(r0 - r1)


def delta_eop(preds, labels, sensitive) -> float:
    """Between-group true-positive-rate gap (the y=1 conditional)."""
    preds = _as_binary("preds", preds)
    labels = _as_binary("labels", labels)
    sensitive = _as_binary("sensitive", sensitive)
    _check_lengths(preds=preds, labels=labels, sensitive=sensitive)
    r0 = _positive_rate(preds, (labels == 1) & (sensitive == 0), "y=1,a=0")
    r1 = _positive_rate(preds, (labels == 1) & (sensitive == 1), "y=1,a=1")
    return abs(r0 - r1)


def delta_eo(preds, labels, sensitive) -> float:
    """Max over label classes of the between-group positive-rate gap."""
    preds = _as_binary("preds", preds)
    labels = _as_binary("labels", labels)
    sensitive = _as_binary("sensitive", sensitive)
    _check_lengths(preds=preds, labels=labels, sensitive=sensitive)
    gaps = []
    for y in (0, 1):
        r0 = _positive_rate(preds, (labels == y) & (sensitive == 0), f"y={y},a=0")
        r1 = _positive_rate(preds, (labels == y) & (sensitive == 1), f"y={y},a=1")
        gaps.append(abs(r0 - r1))
    return max(gaps)


def fairness_report(preds, labels, sensitive) -> FairnessReport:
    """All computable metrics; gaps with empty cells are reported as None."""
    preds = _as_binary("preds", preds)
    labels = _as_binary("labels", labels)
    sensitive = _as_binary("sensitive", sensitive)
    _check_lengths(preds=preds, labels=labels, sensitive=sensitive)

    rates: dict = {}
    for a in (0, 1):
        mask = sensitive == a
        if mask.any():
            rates[("any", a)] = _positive_rate(preds, mask, f"a={a}")
        for y in (0, 1):
            cell = (labels == y) & (sensitive == a)
            if cell.any():
                rates[(f"y={y}", a)] = _positive_rate(preds, cell, f"y={y},a={a}")

    def _try(fn, *args):
        try:
            return fn(*args)
        except MetricError:
            return None

    return FairnessReport(
        accuracy=accuracy(preds, labels),
        delta_dp=_try(delta_dp, preds, sensitive),
        delta_eo=_try(delta_eo, preds, labels, sensitive),
        delta_eop=_try(delta_eop, preds, labels, sensitive),
        group_rates=rates,
    )

"""Reference trainers: unweighted ERM, group-size cutting, and static
reweighing with the expected/observed label-group ratio.
"""

from __future__ import annotations

import numpy as np

from .data import Dataset, subgroup_stats
from .model import ModelParams, TrainSettings, init_params, train_weighted


def train_erm(ds: Dataset, settings: TrainSettings, seed: int) -> ModelParams:
    """Uniform-weight training; the plain logistic-regression baseline."""
    params = init_params(ds.n_features, seed)
    weights = np.full(ds.m, 1.0 / ds.m)
    return train_weighted(params, ds, weights, settings, rng=np.random.default_rng(seed))


def cut_to_balance(ds: Dataset, seed: int) -> Dataset:
    """Subsample the larger sensitive group down to the smaller one's size."""
    idx0 = np.flatnonzero(ds.sensitive == 0)
    idx1 = np.flatnonzero(ds.sensitive == 1)
    if len(idx0) == 0 or len(idx1) == 0:
        raise ValueError("both sensitive groups must be nonempty")
    rng = np.random.default_rng(seed)
    target = min(len(idx0), len(idx1))
    keep = np.concatenate(
        [
            rng.choice(idx0, size=target, replace=False),
            rng.choice(idx1, size=target, replace=False),
        ]
    )
    return ds.take(np.sort(keep))


def train_cutting(ds: Dataset, settings: TrainSettings, seed: int) -> ModelParams:
    """ERM on a subsample with equal-size sensitive groups."""
    return train_erm(cut_to_balance(ds, seed), settings, seed)


def fixed_reweighing_weights(ds: Dataset) -> np.ndarray:
    """Static per-sample weights W_{y,a} = (m_{y,*} m_{*,a}) / (m m_{y,a})
    from the true labels, uniform within each subgroup, normalized to sum 1."""
    stats = subgroup_stats(ds.labels, ds.sensitive)
    w = np.empty(ds.m, dtype=np.float64)
    for y in (0, 1):
        for a in (0, 1):
            idx = np.flatnonzero((ds.labels == y) & (ds.sensitive == a))
            if len(idx) == 0:
                raise ValueError(f"empty subgroup y={y}, a={a}")
            W = (stats.row_totals[y] * stats.col_totals[a]) / (
                stats.m * stats.counts[(y, a)]
            )
            w[idx] = W
    return w / w.sum()


def train_fixed_reweighing(ds: Dataset, settings: TrainSettings, seed: int) -> ModelParams:
    """One-shot weighted training with the static subgroup weights."""
    weights = fixed_reweighing_weights(ds)
    params = init_params(ds.n_features, seed)
    return train_weighted(params, ds, weights, settings, rng=np.random.default_rng(seed))

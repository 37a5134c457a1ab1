"""Experiment orchestration: configs, replicated runs, grid search with
training-set cross-validation, and result rendering.

Config files are flat ``key = value`` text (``#`` comments); the full key
list is documented in the README. Gaps are stored as fractions and
rendered as percentages (two decimals) in tables.
"""

from __future__ import annotations

import csv as csv_mod
import io
import json
import time
from dataclasses import dataclass, field, asdict

import numpy as np

from . import baselines
from .data import Dataset, DatasetSchema, generate_synthetic, load_csv, split, standardize
from .metrics import FairnessReport, fairness_report
from .model import TrainSettings, predict_labels, predict_scores
from .reweigh import FairnessCriterion, ReweighConfig, train_fair

SCHEMA_VERSION = 1
METRIC_FIELDS = ("accuracy", "delta_dp", "delta_eo", "delta_eop")
METHODS = ("erm", "cutting", "fixed_reweigh", "adaptive")

# default tolerance (in gap fraction, 0.005 = 0.5 percentage points) for
# "minimal fairness violation" during grid-search selection
SELECTION_TOLERANCE = 0.005


class ConfigError(ValueError):
    """Raised for invalid or incomplete experiment configuration."""


@dataclass
class ExperimentConfig:
    # dataset source: "synthetic" or "csv"
    dataset: str = "synthetic"
    csv_path: str | None = None
    schema: DatasetSchema | None = None
    synthetic_n: int = 4000
    synthetic_bias: float = 0.8

    method: str = "erm"
    criterion: FairnessCriterion = FairnessCriterion.DEMOGRAPHIC_PARITY
    alpha: float = 0.0
    eta: float = 1.0
    d: float = 0.5
    outer_iterations: int = 200
    inner_epochs: int = 1
    early_stop_gap: float | None = None

    epochs: int = 200
    learning_rate: float = 0.1
    batch_size: int = 1000

    test_fraction: float = 0.3
    seed: int = 0
    replications: int = 3

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.dataset not in ("synthetic", "csv"):
            raise ConfigError(f"unknown dataset source {self.dataset!r}")
        if self.dataset == "csv" and (self.csv_path is None or self.schema is None):
            raise ConfigError("csv dataset requires csv_path and schema columns")
        if self.replications < 1:
            raise ConfigError("replications must be >= 1")

    def train_settings(self, seed: int) -> TrainSettings:
        return TrainSettings(
            epochs=self.epochs,
            learning_rate=self.learning_rate,
            batch_size=self.batch_size,
            seed=seed,
        )

    def reweigh_config(self, seed: int, alpha=None, eta=None) -> ReweighConfig:
        return ReweighConfig(
            criterion=self.criterion,
            alpha=self.alpha if alpha is None else alpha,
            eta=self.eta if eta is None else eta,
            d=self.d,
            outer_iterations=self.outer_iterations,
            inner=TrainSettings(
                epochs=self.inner_epochs,
                learning_rate=self.learning_rate,
                batch_size=self.batch_size,
                seed=seed,
            ),
            early_stop_gap=self.early_stop_gap,
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["criterion"] = self.criterion.value
        if self.schema is not None:
            d["schema"] = asdict(self.schema)
        return d


@dataclass
class ResultRecord:
    config: dict
    train_reports: list[FairnessReport]
    test_reports: list[FairnessReport]
    aggregates: dict        # metric -> {"train_mean", "train_std", "test_mean", "test_std"}
    generalization_gaps: dict  # metric -> test_mean - train_mean (or None)
    wall_seconds: float
    load_report: dict | None = None

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "train_reports": [r.to_dict() for r in self.train_reports],
            "test_reports": [r.to_dict() for r in self.test_reports],
            "aggregates": self.aggregates,
            "generalization_gaps": self.generalization_gaps,
            "wall_seconds": self.wall_seconds,
            "load_report": self.load_report,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ResultRecord":
        def _report(rd):
            return FairnessReport(
                accuracy=rd["accuracy"],
                delta_dp=rd["delta_dp"],
                delta_eo=rd["delta_eo"],
                delta_eop=rd["delta_eop"],
                group_rates=rd.get("group_rates", {}),
            )

        return cls(
            config=d["config"],
            train_reports=[_report(r) for r in d["train_reports"]],
            test_reports=[_report(r) for r in d["test_reports"]],
            aggregates=d["aggregates"],
            generalization_gaps=d["generalization_gaps"],
            wall_seconds=d["wall_seconds"],
            load_report=d.get("load_report"),
        )


def load_dataset(cfg: ExperimentConfig) -> Dataset:
    if cfg.dataset == "synthetic":
        return generate_synthetic(cfg.synthetic_n, cfg.synthetic_bias, cfg.seed)
    return load_csv(cfg.csv_path, cfg.schema)


def _metric_values(reports: list[FairnessReport], metric: str) -> list[float]:
    return [getattr(r, metric) for r in reports if getattr(r, metric) is not None]


def aggregate_reports(
    train_reports: list[FairnessReport], test_reports: list[FairnessReport]
) -> tuple[dict, dict]:
    aggregates, gaps = {}, {}
    for metric in METRIC_FIELDS:
        tr = _metric_values(train_reports, metric)
        te = _metric_values(test_reports, metric)
        aggregates[metric] = {
            "train_mean": float(np.mean(tr)) if tr else None,
            "train_std": float(np.std(tr)) if tr else None,
            "test_mean": float(np.mean(te)) if te else None,
            "test_std": float(np.std(te)) if te else None,
        }
        if tr and te:
            gaps[metric] = float(np.mean(te) - np.mean(tr))
        else:
            gaps[metric] = None
    return aggregates, gaps


def train_method(cfg: ExperimentConfig, train_ds: Dataset, seed: int):
    if cfg.method == "erm":
        return baselines.train_erm(train_ds, cfg.train_settings(seed), seed)
    if cfg.method == "cutting":
        return baselines.train_cutting(train_ds, cfg.train_settings(seed), seed)
    if cfg.method == "fixed_reweigh":
        return baselines.train_fixed_reweighing(train_ds, cfg.train_settings(seed), seed)
    params, _trace = train_fair(train_ds, cfg.reweigh_config(seed), seed)
    return params


def evaluate(params, ds: Dataset, d: float = 0.5) -> FairnessReport:
    preds = predict_labels(predict_scores(params, ds.features), d)
    return fairness_report(preds, ds.labels, ds.sensitive)


def run_experiment(cfg: ExperimentConfig, dataset: Dataset | None = None) -> ResultRecord:
    """Run replications seeds (cfg.seed + r), aggregate mean/std and gaps."""
    start = time.perf_counter()
    ds = dataset if dataset is not None else load_dataset(cfg)
    train_reports, test_reports = [], []
    for r in range(cfg.replications):
        seed_r = cfg.seed + r
        train_ds, test_ds = split(ds, cfg.test_fraction, seed_r)
        train_ds, test_ds = standardize(train_ds, test_ds)
        params = train_method(cfg, train_ds, seed_r)
        train_reports.append(evaluate(params, train_ds, cfg.d))
        test_reports.append(evaluate(params, test_ds, cfg.d))
    aggregates, gaps = aggregate_reports(train_reports, test_reports)
    return ResultRecord(
        config=cfg.to_dict(),
        train_reports=train_reports,
        test_reports=test_reports,
        aggregates=aggregates,
        generalization_gaps=gaps,
        wall_seconds=time.perf_counter() - start,
        load_report=ds.load_report.to_dict() if ds.load_report else None,
    )


def _fold_indices(m: int, folds: int, seed: int) -> list[np.ndarray]:
    perm = np.random.default_rng(seed).permutation(m)
    return [np.sort(chunk) for chunk in np.array_split(perm, folds)]


def grid_search(
    cfg: ExperimentConfig,
    train_ds: Dataset,
    alpha_grid,
    eta_grid,
    folds: int = 3,
) -> tuple[ReweighConfig, list[dict]]:
    """Pick (alpha, eta) by k-fold cross-validation on the training split.

    Selection: among grid points whose mean validation gap is within
    SELECTION_TOLERANCE of the minimum, take the highest mean validation
    accuracy; ties break to lower alpha, then lower eta. The held-out test
    split is never passed in, so it cannot be touched here.
    """
    if cfg.method != "adaptive":
        raise ConfigError("grid_search applies to the adaptive method only")
    if folds < 2:
        raise ConfigError("folds must be >= 2")
    alpha_grid = list(alpha_grid)
    eta_grid = list(eta_grid)
    if not alpha_grid or not eta_grid:
        raise ConfigError("grids must be nonempty")

    fold_idx = _fold_indices(train_ds.m, folds, cfg.seed)
    all_idx = np.arange(train_ds.m)
    results = []
    for alpha in alpha_grid:
        for eta in eta_grid:
            gap_vals, acc_vals, skipped = [], [], 0
            for k, val_idx in enumerate(fold_idx):
                fit_idx = np.setdiff1d(all_idx, val_idx)
                fit_ds, val_ds = train_ds.take(fit_idx), train_ds.take(val_idx)
                try:
                    fit_ds, val_ds = standardize(fit_ds, val_ds)
                    rw = cfg.reweigh_config(cfg.seed + k, alpha=alpha, eta=eta)
                    params, _ = train_fair(fit_ds, rw, cfg.seed + k)
                    report = evaluate(params, val_ds, cfg.d)
                except (ValueError, RuntimeError):
                    skipped += 1
                    continue
                gap = {
                    FairnessCriterion.DEMOGRAPHIC_PARITY: report.delta_dp,
                    FairnessCriterion.EQUALIZED_ODDS: report.delta_eo,
                    FairnessCriterion.EQUAL_OPPORTUNITY: report.delta_eop,
                }[cfg.criterion]
                if gap is None:
                    skipped += 1
                    continue
                gap_vals.append(gap)
                acc_vals.append(report.accuracy)
            if len(gap_vals) < 2:
                raise ConfigError(
                    f"grid point alpha={alpha}, eta={eta}: fewer than 2 usable folds"
                )
            results.append(
                {
                    "alpha": alpha,
                    "eta": eta,
                    "mean_val_gap": float(np.mean(gap_vals)),
                    "mean_val_accuracy": float(np.mean(acc_vals)),
                    "folds_used": len(gap_vals),
                    "folds_skipped": skipped,
                }
            )

    min_gap = min(r["mean_val_gap"] for r in results)
    candidates = [r for r in results if r["mean_val_gap"] <= min_gap + SELECTION_TOLERANCE]
    best = min(
        candidates,
        key=lambda r: (-r["mean_val_accuracy"], r["alpha"], r["eta"]),
    )
    return cfg.reweigh_config(cfg.seed, alpha=best["alpha"], eta=best["eta"]), results


# ---------------------------------------------------------------------------
# config file parsing


_BOOL = {"true": True, "false": False, "yes": True, "no": False}


def parse_config_text(text: str) -> ExperimentConfig:
    """Parse the flat ``key = value`` config format."""
    kv: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        kv[key] = value

    def pop(key, cast, default):
        if key not in kv:
            return default
        raw = kv.pop(key)
        try:
            return cast(raw)
        except (ValueError, KeyError) as e:
            raise ConfigError(f"bad value for {key}: {raw!r}") from e

    def _csv_list(raw):
        return [s.strip() for s in raw.split(",") if s.strip()]

    dataset = pop("dataset", str, "synthetic")
    schema = None
    csv_path = kv.pop("csv_path", None)
    if dataset == "csv":
        try:
            schema = DatasetSchema(
                label_column=kv.pop("label_column"),
                sensitive_column=kv.pop("sensitive_column"),
                positive_label_value=kv.pop("positive_label_value"),
                privileged_group_value=kv.pop("privileged_group_value"),
                categorical_columns=_csv_list(kv.pop("categorical_columns", "")),
                numeric_columns=_csv_list(kv.pop("numeric_columns", "")),
                include_sensitive_feature=_BOOL[
                    kv.pop("include_sensitive_feature", "true").lower()
                ],
            )
        except KeyError as e:
            raise ConfigError(f"csv dataset requires config key {e.args[0]}") from None

    cfg = ExperimentConfig(
        dataset=dataset,
        csv_path=csv_path,
        schema=schema,
        synthetic_n=pop("synthetic_n", int, 4000),
        synthetic_bias=pop("synthetic_bias", float, 0.8),
        method=pop("method", str, "erm"),
        criterion=pop("criterion", FairnessCriterion, FairnessCriterion.DEMOGRAPHIC_PARITY),
        alpha=pop("alpha", float, 0.0),
        eta=pop("eta", float, 1.0),
        d=pop("d", float, 0.5),
        outer_iterations=pop("outer_iterations", int, 200),
        inner_epochs=pop("inner_epochs", int, 1),
        early_stop_gap=pop("early_stop_gap", float, None),
        epochs=pop("epochs", int, 200),
        learning_rate=pop("learning_rate", float, 0.1),
        batch_size=pop("batch_size", int, 1000),
        test_fraction=pop("test_fraction", float, 0.3),
        seed=pop("seed", int, 0),
        replications=pop("replications", int, 3),
    )
    if kv:
        raise ConfigError(f"unknown config keys: {sorted(kv)}")
    return cfg


def parse_config_file(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as f:
        return parse_config_text(f.read())


# ---------------------------------------------------------------------------
# result rendering


def _pct(x) -> str:
    return "-" if x is None else f"{100.0 * x:.2f}"


def render_markdown(records: list[ResultRecord]) -> str:
    lines = [
        "| Method | Accuracy↑ | Δ_DP↓ | Δ_EO↓ | Δ_EOP↓ |",
        "|---|---|---|---|---|",
    ]
    for rec in records:
        agg = rec.aggregates
        cells = [rec.config.get("method", "?")]
        acc = agg["accuracy"]
        cells.append(f"{_pct(acc['test_mean'])}±{_pct(acc['test_std'])}")
        for metric in ("delta_dp", "delta_eo", "delta_eop"):
            a = agg[metric]
            if a["test_mean"] is None:
                cells.append("-")
            else:
                cells.append(f"{_pct(a['test_mean'])}±{_pct(a['test_std'])}")
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def render_csv(records: list[ResultRecord]) -> str:
    buf = io.StringIO()
    writer = csv_mod.writer(buf)
    header = ["method"]
    for metric in METRIC_FIELDS:
        header += [
            f"{metric}_train_mean",
            f"{metric}_train_std",
            f"{metric}_test_mean",
            f"{metric}_test_std",
            f"{metric}_gap",
        ]
    writer.writerow(header)
    for rec in records:
        row = [rec.config.get("method", "?")]
        for metric in METRIC_FIELDS:
            a = rec.aggregates[metric]
            row += [
                a["train_mean"],
                a["train_std"],
                a["test_mean"],
                a["test_std"],
                rec.generalization_gaps[metric],
            ]
        writer.writerow(row)
    return buf.getvalue()


def render_json(records: list[ResultRecord]) -> str:
    return json.dumps(
        {"schema_version": SCHEMA_VERSION, "records": [r.to_dict() for r in records]},
        indent=2,
    )


def load_records(path) -> list[ResultRecord]:
    with open(path, encoding="utf-8") as f:
        payload = json.load(f)
    if payload.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(
            f"unsupported schema_version {payload.get('schema_version')!r}"
        )
    return [ResultRecord.from_dict(d) for d in payload["records"]]


def emit_results(records: list[ResultRecord], fmt: str, path=None) -> str:
    if not records:
        raise ConfigError("no records to emit")
    renderers = {"json": render_json, "csv": render_csv, "markdown": render_markdown}
    if fmt not in renderers:
        raise ConfigError(f"unknown format {fmt!r}; expected one of {sorted(renderers)}")
    text = renderers[fmt](records)
    if path is not None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    return text

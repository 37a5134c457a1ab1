"""Dataset loading, encoding, splitting, and subgroup bookkeeping.

Conventions (fixed so results are reproducible):

* Categorical columns are one-hot encoded in schema order, category values
  in sorted string order; encoded columns are named ``col=value``.
* The sensitive attribute is appended as the last feature column by default
  (the scorer takes both the covariates and the sensitive attribute as
  input); set ``include_sensitive_feature=False`` on the schema to exclude it.
* Standardization uses the population variance (divide by m, not m-1).
* Rows with missing values (empty cell, ``?``, or NaN) in any used column
  are dropped and counted in the load report.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import pandas as pd

MISSING_TOKENS = {"", "?", "nan", "NaN", "NA"}

SENSITIVE_FEATURE_NAME = "__sensitive__"


class DataError(ValueError):
    """Raised for malformed input data or schema violations."""


@dataclass
class LoadReport:
    rows_read: int
    rows_dropped: int
    final_m: int

    def to_dict(self) -> dict:
        return {
            "rows_read": self.rows_read,
            "rows_dropped": self.rows_dropped,
            "final_m": self.final_m,
        }


@dataclass
class Dataset:
    """Binary-classification data with a binary sensitive attribute."""

    features: np.ndarray          # (m, n_features) float64
    sensitive: np.ndarray         # (m,) int, values in {0, 1}
    labels: np.ndarray            # (m,) int, values in {0, 1}
    feature_names: list[str]
    load_report: LoadReport | None = field(default=None, compare=False)

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        self.sensitive = np.asarray(self.sensitive, dtype=np.int64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.features.ndim != 2:
            raise DataError("features must be a 2-D matrix")
        m = self.features.shape[0]
        if m < 1:
            raise DataError("dataset must contain at least one row")
        if len(self.sensitive) != m or len(self.labels) != m:
            raise DataError(
                f"row-count mismatch: features {m}, sensitive "
                f"{len(self.sensitive)}, labels {len(self.labels)}"
            )
        for name, vec in (("sensitive", self.sensitive), ("labels", self.labels)):
            bad = set(np.unique(vec)) - {0, 1}
            if bad:
                raise DataError(f"{name} contains non-binary values {sorted(bad)}")
        if len(self.feature_names) != self.features.shape[1]:
            raise DataError("feature_names length does not match feature columns")

    @property
    def m(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def take(self, idx: np.ndarray) -> "Dataset":
        """Row-subset view as a new Dataset."""
        return Dataset(
            self.features[idx],
            self.sensitive[idx],
            self.labels[idx],
            list(self.feature_names),
        )


@dataclass
class SubgroupStats:
    """Counts and proportions over the four (outcome, sensitive) cells."""

    m: int
    counts: dict          # (y, a) -> m_{y,a}
    row_totals: dict      # y -> m_{y,*}
    col_totals: dict      # a -> m_{*,a}
    proportions: dict     # (y, a) -> p_{y,a}


@dataclass
class DatasetSchema:
    label_column: str
    sensitive_column: str
    positive_label_value: str
    privileged_group_value: str
    categorical_columns: list[str] = field(default_factory=list)
    numeric_columns: list[str] = field(default_factory=list)
    include_sensitive_feature: bool = True

    def __post_init__(self):
        if self.label_column == self.sensitive_column:
            raise DataError("label_column and sensitive_column must differ")


def subgroup_stats(outcomes, sensitive) -> SubgroupStats:
    """Tabulate the four (outcome, sensitive) cells.

    ``outcomes`` may be true labels or predictions; both uses occur in the
    reweighing update rules.
    """
    outcomes = np.asarray(outcomes, dtype=np.int64)
    sensitive = np.asarray(sensitive, dtype=np.int64)
    if len(outcomes) != len(sensitive):
        raise DataError(
            f"length mismatch: outcomes {len(outcomes)}, sensitive {len(sensitive)}"
        )
    m = len(outcomes)
    if m == 0:
        raise DataError("empty input")
    counts = {
        (y, a): int(np.sum((outcomes == y) & (sensitive == a)))
        for y in (0, 1)
        for a in (0, 1)
    }
    row_totals = {y: counts[(y, 0)] + counts[(y, 1)] for y in (0, 1)}
    col_totals = {a: counts[(0, a)] + counts[(1, a)] for a in (0, 1)}
    proportions = {cell: c / m for cell, c in counts.items()}
    return SubgroupStats(m, counts, row_totals, col_totals, proportions)


def split(ds: Dataset, test_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Deterministic shuffled train/test partition.

    Test size is round-half-up of ``test_fraction * m``; errors if either
    side would be empty.
    """
    if not 0.0 < test_fraction < 1.0:
        raise DataError(f"test_fraction must be in (0, 1), got {test_fraction}")
    if ds.m < 2:
        raise DataError("need at least 2 rows to split")
    n_test = int(np.floor(test_fraction * ds.m + 0.5))
    if n_test == 0 or n_test == ds.m:
        raise DataError(
            f"test_fraction {test_fraction} yields an empty side for m={ds.m}"
        )
    rng = np.random.default_rng(seed)
    perm = rng.permutation(ds.m)
    return ds.take(perm[n_test:]), ds.take(perm[:n_test])


def standardize(train: Dataset, test: Dataset) -> tuple[Dataset, Dataset]:
    """Scale columns to mean 0, variance 1 using train statistics only.

    Population variance convention; constant columns are left unchanged.
    """
    if train.n_features != test.n_features or train.feature_names != test.feature_names:
        raise DataError("train and test column layouts differ")
    mean = train.features.mean(axis=0)
    std = train.features.std(axis=0)  # ddof=0
    scale = np.where(std == 0.0, 1.0, std)
    shift = np.where(std == 0.0, 0.0, mean)
    out = []
    for ds in (train, test):
        out.append(
            Dataset(
                (ds.features - shift) / scale,
                ds.sensitive,
                ds.labels,
                list(ds.feature_names),
            )
        )
    return out[0], out[1]


def generate_synthetic(n: int, bias: float, seed: int) -> Dataset:
    """Two-feature logistic generator with a tunable group gap.

    x1, x2 ~ N(0, 1) iid, a ~ Bernoulli(0.5), and
    P(y=1 | x, a) = sigmoid(x1 + x2 + bias * (2a - 1)),
    so the intercept shifts by +bias for a=1 and -bias for a=0. The
    sensitive attribute is also included as the last feature column.
    """
    if n < 4:
        raise DataError(f"n must be at least 4, got {n}")
    if not 0.0 <= bias <= 1.0:
        raise DataError(f"bias must be in [0, 1], got {bias}")
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, 2))
    a = rng.integers(0, 2, size=n)
    logits = x[:, 0] + x[:, 1] + bias * (2 * a - 1)
    p = 1.0 / (1.0 + np.exp(-logits))
    y = (rng.random(n) < p).astype(np.int64)
    features = np.column_stack([x, a.astype(np.float64)])
    return Dataset(features, a, y, ["x1", "x2", SENSITIVE_FEATURE_NAME])


def _to_binary(series: pd.Series, positive_value: str, what: str) -> np.ndarray:
    values = series.astype(str).str.strip()
    distinct = set(values.unique())
    if len(distinct) > 2:
        raise DataError(f"non-binary {what}: {len(distinct)} distinct values")
    if str(positive_value).strip() not in distinct and len(distinct) == 2:
        raise DataError(
            f"{what} positive value {positive_value!r} not found among {sorted(distinct)}"
        )
    return (values == str(positive_value).strip()).astype(np.int64).to_numpy()


def load_csv(path, schema: DatasetSchema) -> Dataset:
    """Load an RFC-4180 CSV with header into an encoded Dataset.

    Rows with missing values in any schema column are dropped and counted
    in the attached load report.
    """
    try:
        df = pd.read_csv(path, dtype=str, skipinitialspace=True, keep_default_na=False)
    except FileNotFoundError:
        raise DataError(f"file not found: {path}") from None
    rows_read = len(df)
    used = (
        [schema.label_column, schema.sensitive_column]
        + list(schema.categorical_columns)
        + list(schema.numeric_columns)
    )
    for col in used:
        if col not in df.columns:
            raise DataError(f"schema column {col!r} missing from CSV header")

    df = df[used].copy()
    missing = df.apply(lambda c: c.str.strip().isin(MISSING_TOKENS)).any(axis=1)
    for col in schema.numeric_columns:
        parsed = pd.to_numeric(df[col], errors="coerce")
        missing |= parsed.isna() & ~missing
        df[col] = parsed
    df = df[~missing]
    rows_dropped = rows_read - len(df)
    if len(df) == 0:
        raise DataError("zero usable rows after dropping missing values")

    labels = _to_binary(df[schema.label_column], schema.positive_label_value, "label")
    sensitive = _to_binary(
        df[schema.sensitive_column], schema.privileged_group_value, "sensitive attribute"
    )

    blocks: list[np.ndarray] = []
    names: list[str] = []
    for col in schema.numeric_columns:
        blocks.append(df[col].to_numpy(dtype=np.float64).reshape(-1, 1))
        names.append(col)
    for col in schema.categorical_columns:
        values = df[col].astype(str).str.strip()
        for cat in sorted(values.unique()):
            blocks.append((values == cat).to_numpy(dtype=np.float64).reshape(-1, 1))
            names.append(f"{col}={cat}")
    if schema.include_sensitive_feature:
        blocks.append(sensitive.astype(np.float64).reshape(-1, 1))
        names.append(SENSITIVE_FEATURE_NAME)
    if not blocks:
        raise DataError("schema selects no feature columns")

    ds = Dataset(np.hstack(blocks), sensitive, labels, names)
    ds.load_report = LoadReport(rows_read, rows_dropped, ds.m)
    return ds


def write_csv(ds: Dataset, path) -> None:
    """Write a Dataset back out as CSV (features + sensitive + label)."""
    df = pd.DataFrame(ds.features, columns=ds.feature_names)
    df["sensitive"] = ds.sensitive
    df["label"] = ds.labels
    df.to_csv(path, index=False)

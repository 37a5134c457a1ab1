#!/usr/bin/env python3
"""Download and prepare the Adult and COMPAS benchmark CSVs.

Writes data/adult.csv and data/compas.csv in the layout the acceptance
suite expects. Needs outbound network access (UCI archive and the
ProPublica GitHub mirror); run it once on a networked machine and copy
the data/ directory next to the repository root otherwise.
"""

import csv
import io
import sys
import urllib.request
from pathlib import Path

ADULT_COLUMNS = [
    "age", "workclass", "fnlwgt", "education", "education-num",
    "marital-status", "occupation", "relationship", "race", "sex",
    "capital-gain", "capital-loss", "hours-per-week", "native-country",
    "income",
]
ADULT_URLS = [
    "https://archive.ics.uci.edu/ml/machine-learning-databases/adult/adult.data",
    "https://archive.ics.uci.edu/ml/machine-learning-databases/adult/adult.test",
]
COMPAS_URL = (
    "https://raw.githubusercontent.com/propublica/compas-analysis/"
    "master/compas-scores-two-years.csv"
)
COMPAS_COLUMNS = [
    "sex", "age", "age_cat", "race", "juv_fel_count", "juv_misd_count",
    "juv_other_count", "priors_count", "c_charge_degree", "two_year_recid",
]


def fetch(url: str) -> str:
    print(f"fetching {url}")
    with urllib.request.urlopen(url, timeout=60) as resp:
        return resp.read().decode("utf-8", errors="replace")


def write_adult(out_dir: Path) -> None:
    rows = []
    for url in ADULT_URLS:
        text = fetch(url)
        for line in text.splitlines():
            line = line.strip().rstrip(".")  # adult.test labels end with '.'
            if not line or line.startswith("|"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != len(ADULT_COLUMNS):
                continue
            rows.append(parts)
    path = out_dir / "adult.csv"
    with path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(ADULT_COLUMNS)
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def write_compas(out_dir: Path) -> None:
    text = fetch(COMPAS_URL)
    reader = csv.DictReader(io.StringIO(text))
    rows = []
    for row in reader:
        # standard ProPublica filtering
        try:
            days = float(row["days_b_screening_arrest"])
        except (ValueError, KeyError):
            continue
        if not -30 <= days <= 30:
            continue
        if row["is_recid"] == "-1" or row["c_charge_degree"] == "O":
            continue
        if row["score_text"] == "N/A":
            continue
        if row["race"] not in ("African-American", "Caucasian"):
            continue
        rows.append([row[c] for c in COMPAS_COLUMNS])
    path = out_dir / "compas.csv"
    with path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(COMPAS_COLUMNS)
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def main() -> int:
    out_dir = Path(__file__).resolve().parent.parent / "data"
    out_dir.mkdir(exist_ok=True)
    write_adult(out_dir)
    write_compas(out_dir)
    return 0


if __name__ == "__main__":
    sys.exit(main())

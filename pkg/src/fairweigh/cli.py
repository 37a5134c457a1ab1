"""Command-line front end.

Subcommands: ``run`` (one experiment config), ``grid`` (config plus
alpha/eta grids), ``report`` (re-render saved JSON records), ``synth``
(emit a synthetic CSV). Default output directory comes from the
FAIRWEIGH_OUT_DIR environment variable; ``--out`` overrides it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .data import DataError, generate_synthetic, write_csv
from .harness import (
    ConfigError,
    emit_results,
    grid_search,
    load_dataset,
    load_records,
    parse_config_file,
    run_experiment,
    split,
    standardize,
)


def _out_path(name: str, out: str | None) -> Path:
    if out is not None:
        return Path(out)
    base = Path(os.environ.get("FAIRWEIGH_OUT_DIR", "."))
    base.mkdir(parents=True, exist_ok=True)
    return base / name


def _parse_grid(raw: str) -> list[float]:
    try:
        return [float(s) for s in raw.split(",") if s.strip()]
    except ValueError:
        raise ConfigError(f"bad grid {raw!r}; expected comma-separated numbers")


def _load_config(path: str, seed_override: int | None):
    if not Path(path).is_file():
        raise ConfigError(f"config file not found: {path}")
    cfg = parse_config_file(path)
    if seed_override is not None:
        cfg.seed = seed_override
    return cfg


def cmd_run(args) -> int:
    cfg = _load_config(args.config, args.seed)
    record = run_experiment(cfg)
    path = _out_path("results.json", args.out)
    emit_results([record], args.format, path)
    print(f"wrote {path}")
    return 0


def cmd_grid(args) -> int:
    cfg = _load_config(args.config, args.seed)
    ds = load_dataset(cfg)
    train_ds, _test_ds = split(ds, cfg.test_fraction, cfg.seed)
    best, grid_records = grid_search(
        cfg,
        train_ds,
        _parse_grid(args.alpha_grid),
        _parse_grid(args.eta_grid),
        folds=args.folds,
    )
    cfg.alpha, cfg.eta = best.alpha, best.eta
    record = run_experiment(cfg, dataset=ds)
    path = _out_path("grid_results.json", args.out)
    emit_results([record], "json", path)
    grid_path = path.with_suffix(".grid.json")
    grid_path.write_text(json.dumps(grid_records, indent=2), encoding="utf-8")
    print(f"selected alpha={best.alpha}, eta={best.eta}")
    print(f"wrote {path} and {grid_path}")
    return 0


def cmd_report(args) -> int:
    records = load_records(args.results)
    sys.stdout.write(emit_results(records, args.format))
    return 0


def cmd_synth(args) -> int:
    ds = generate_synthetic(args.n, args.bias, args.seed)
    path = _out_path("synthetic.csv", args.out)
    write_csv(ds, path)
    print(f"wrote {path} ({ds.m} rows)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairweigh",
        description="Fair-classification benchmark runner (adaptive priority reweighing).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one experiment config")
    run_p.add_argument("--config", required=True)
    run_p.add_argument("--out", default=None)
    run_p.add_argument("--format", default="json", choices=["json", "csv", "markdown"])
    run_p.add_argument("--seed", type=int, default=None)
    run_p.set_defaults(fn=cmd_run)

    grid_p = sub.add_parser("grid", help="grid search alpha/eta, then run the best")
    grid_p.add_argument("--config", required=True)
    grid_p.add_argument("--alpha-grid", required=True, help="comma-separated, e.g. 0,100,10000")
    grid_p.add_argument("--eta-grid", required=True, help="comma-separated, e.g. 0.5,1,2")
    grid_p.add_argument("--folds", type=int, default=3)
    grid_p.add_argument("--out", default=None)
    grid_p.add_argument("--seed", type=int, default=None)
    grid_p.set_defaults(fn=cmd_grid)

    rep_p = sub.add_parser("report", help="re-render saved results")
    rep_p.add_argument("results")
    rep_p.add_argument("--format", default="markdown", choices=["json", "csv", "markdown"])
    rep_p.set_defaults(fn=cmd_report)

    synth_p = sub.add_parser("synth", help="emit a synthetic biased CSV")
    synth_p.add_argument("--n", type=int, default=4000)
    synth_p.add_argument("--bias", type=float, default=0.8)
    synth_p.add_argument("--seed", type=int, default=0)
    synth_p.add_argument("--out", default=None)
    synth_p.set_defaults(fn=cmd_synth)
    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except (ConfigError, DataError, FileNotFoundError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # operational failures surface as exit 1
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()

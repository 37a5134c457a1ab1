"""Measure group fairness of a plain logistic-regression classifier.

Generates a synthetic dataset whose label leans toward the a=1 group,
trains an unweighted model, and prints accuracy plus the three gaps:
demographic parity, equalized odds, and equal opportunity.
"""

import numpy as np

from fairweigh import (
    TrainSettings,
    evaluate,
    generate_synthetic,
    split,
    standardize,
    train_erm,
)


def main():
    ds = generate_synthetic(n=4000, bias=0.8, seed=1)
    rate = {a: ds.labels[ds.sensitive == a].mean() for a in (0, 1)}
    print(f"base positive rates: a=0 {rate[0]:.3f}, a=1 {rate[1]:.3f}")

    train_ds, test_ds = split(ds, test_fraction=0.3, seed=0)
    train_ds, test_ds = standardize(train_ds, test_ds)

    params = train_erm(train_ds, TrainSettings(epochs=200, batch_size=2000), seed=0)
    report = evaluate(params, test_ds)

    print(f"test accuracy        {100 * report.accuracy:.2f}%")
    print(f"demographic parity   {100 * report.delta_dp:.2f}pp")
    print(f"equalized odds       {100 * report.delta_eo:.2f}pp")
    print(f"equal opportunity    {100 * report.delta_eop:.2f}pp")
    print("\npositive rate per group:")
    for (cond, a), r in sorted(report.group_rates.items(), key=str):
        print(f"  {cond}, a={a}: {r:.3f}")


if __name__ == "__main__":
    main()

"""Independent brute-force oracles used to check the library implementations.

Everything here is written as plain loops over rows and literal formula
evaluation, deliberately sharing no code with the package under test.
"""

import math


def contingency(preds, labels, sensitive):
    """Full 2x2x2 table: table[pred][label][sens] = count."""
    table = [[[0, 0], [0, 0]] for _ in range(2)]
    for p, y, a in zip(preds, labels, sensitive):
        table[p][y][a] += 1
    return table


def _rate(num, den):
    if den == 0:
        raise ZeroDivisionError("empty cell")
    return num / den


def brute_delta_dp(preds, sensitive):
    pos = [0, 0]
    tot = [0, 0]
    for p, a in zip(preds, sensitive):
        tot[a] += 1
        pos[a] += p
    return abs(_rate(pos[0], tot[0]) - _rate(pos[1], tot[1]))


def brute_rate_given(preds, labels, sensitive, y, a):
    num = den = 0
    for p, yy, aa in zip(preds, labels, sensitive):
        if yy == y and aa == a:
            den += 1
            num += p
    return _rate(num, den)


def brute_delta_eop(preds, labels, sensitive):
    return abs(
        brute_rate_given(preds, labels, sensitive, 1, 0)
        - brute_rate_given(preds, labels, sensitive, 1, 1)
    )


def brute_delta_eo(preds, labels, sensitive):
    gaps = []
    for y in (0, 1):
        gaps.append(
            abs(
                brute_rate_given(preds, labels, sensitive, y, 0)
                - brute_rate_given(preds, labels, sensitive, y, 1)
            )
        )
    return max(gaps)


def brute_update_dp(W_prev, preds, sensitive, alpha):
    m = len(preds)
    out = {}
    for y in (0, 1):
        for a in (0, 1):
            n_pred = sum(1 for p in preds if p == y)
            n_sens = sum(1 for s in sensitive if s == a)
            n_cell = sum(1 for p, s in zip(preds, sensitive) if p == y and s == a)
            num = n_pred * n_sens + alpha
            den = m * n_cell + alpha
            out[(y, a)] = W_prev[(y, a)] * num / den
    return out


def brute_update_eo(W_prev, preds, labels, sensitive, alpha):
    out = {}
    for y in (0, 1):
        m_y = sum(1 for yy in labels if yy == y)
        for a in (0, 1):
            n_correct = sum(1 for p, yy in zip(preds, labels) if p == y and yy == y)
            n_class_group = sum(
                1 for yy, s in zip(labels, sensitive) if yy == y and s == a
            )
            n_cell = sum(
                1
                for p, yy, s in zip(preds, labels, sensitive)
                if p == y and yy == y and s == a
            )
            num = n_correct * n_class_group + alpha
            den = m_y * n_cell + alpha
            out[(y, a)] = W_prev[(y, a)] * num / den
    return out


def brute_update_eop(W_prev, preds, labels, sensitive, alpha):
    eo = brute_update_eo(W_prev, preds, labels, sensitive, alpha)
    return {
        (1, 0): eo[(1, 0)],
        (1, 1): eo[(1, 1)],
        (0, 0): W_prev[(0, 0)],
        (0, 1): W_prev[(0, 1)],
    }


def brute_sample_weights(W, margins, labels, sensitive, eta, eop=False):
    """Literal per-row evaluation of the weighting formula, then a final
    renormalization to sum 1 (the package's documented convention)."""
    m = len(labels)
    w_total = sum(W.values())
    raw = [0.0] * m
    for y in (0, 1):
        for a in (0, 1):
            idx = [i for i in range(m) if labels[i] == y and sensitive[i] == a]
            if not idx:
                continue
            if eop and y == 0:
                for i in idx:
                    raw[i] = 1.0 / (m * w_total)
                continue
            p_ya = len(idx) / m
            denom = sum(math.exp(-eta * margins[i]) for i in idx)
            for i in idx:
                raw[i] = (W[(y, a)] / w_total) * p_ya * math.exp(-eta * margins[i]) / denom
    total = sum(raw)
    return [x / total for x in raw]


def numeric_gradient(loss_fn, coef, intercept, step=1e-6):
    """Central finite differences of loss_fn(coef, intercept)."""
    g_coef = []
    for j in range(len(coef)):
        up = list(coef)
        dn = list(coef)
        up[j] += step
        dn[j] -= step
        g_coef.append((loss_fn(up, intercept) - loss_fn(dn, intercept)) / (2 * step))
    g_int = (loss_fn(coef, intercept + step) - loss_fn(coef, intercept - step)) / (
        2 * step
    )
    return g_coef, g_int

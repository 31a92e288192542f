#!/usr/bin/env python3
"""Derivation of the synthetic-cohort constants frozen in threshmix.bench.

The benchmark cohort draws true risks from a three-component mixture:
two low-risk atoms plus a Beta bulk.  The atoms are what make the
ordering-agreement property measurable at n = 10^4: each adjacent pair of
near-treat-all policies (well-calibrated vs overestimating vs assume-all-
positive) differs on a low-risk band, and an atom inside that band gives
the pair a margin that dwarfs its sampling noise.  A pure Beta(mean 0.2)
risk distribution pinned to AUC 0.75 has only ~0.003 of net-benefit
headroom at the 5% threshold, so those pairs invert on roughly a third of
seeds at n = 10^4; the mixture lifts the worst adjacent-pair margin to
about 4.5 standard errors.

Running this script re-derives the Beta-bulk concentration (solving
AUC(well-calibrated) = 0.75), prints the infinite-population metric table
and the margin/noise ratio of every consecutive pair in both orderings,
and Monte-Carlo-checks the orderings over 256 seeds at n = 10^4.
"""

import numpy as np
from scipy import optimize
from scipy.stats import beta as beta_dist

PI = 0.2

# mixture skeleton: (weight, risk) atoms + Beta bulk carrying the rest
ATOM1 = (0.15, 0.03)
ATOM2 = (0.10, 0.01)

# archetype parameters under evaluation (the frozen defaults)
SHIFT_OVER = 0.95
SHIFT_UNDER = 1.9
SHIFT_SEVERE = 3.0
CUT_SENSITIVE = 0.23
CUT_SPECIFIC = 0.44

TAU, LO, HI = 0.05, 0.05, 0.20
N_REF = 10_000

NODES, WEIGHTS = np.polynomial.legendre.leggauss(3000)
RQ = 0.5 * (NODES + 1.0)
WQ = 0.5 * WEIGHTS


def bulk_mean():
    (w1, r1), (w2, r2) = ATOM1, ATOM2
    return (PI - w1 * r1 - w2 * r2) / (1 - w1 - w2)


def calibrated_auc(k2):
    """AUC of the true-risk score under the mixture, exact up to quadrature."""
    (w1, r1), (w2, r2) = ATOM1, ATOM2
    m2 = bulk_mean()
    wq = WQ * beta_dist(m2 * k2, (1 - m2) * k2).pdf(RQ)
    order = np.argsort(RQ)
    rs = RQ[order]
    pos_c = ((1 - w1 - w2) * RQ * wq / PI)[order]
    neg_c = ((1 - w1 - w2) * (1 - RQ) * wq / (1 - PI))[order]
    p1, n1 = w1 * r1 / PI, w1 * (1 - r1) / (1 - PI)
    p2, n2 = w2 * r2 / PI, w2 * (1 - r2) / (1 - PI)
    cum_neg = np.concatenate(([0.0], np.cumsum(neg_c)))[:-1]
    val = np.sum(pos_c * (cum_neg + n1 * (rs > r1) + n2 * (rs > r2)))
    val += p1 * (0.5 * n1 + n2)  # atom1 positives vs atom negatives
    val += p2 * 0.5 * n2
    return val


def solve_concentration(target=0.75):
    return optimize.brentq(lambda k: calibrated_auc(k) - target, 1.0, 500.0, xtol=1e-10)


def landscape(k2):
    (w1, r1), (w2, r2) = ATOM1, ATOM2
    m2 = bulk_mean()
    bulk_w = WQ * beta_dist(m2 * k2, (1 - m2) * k2).pdf(RQ) * (1 - w1 - w2)
    R = np.concatenate(([r1, r2], RQ))
    W = np.concatenate(([w1, w2], bulk_w))
    W0, W1 = W * (1 - R), W * R
    lg = np.log(R / (1 - R))
    sig = lambda x: 1 / (1 + np.exp(-x))

    score_maps = {
        "well-calibrated": R,
        "overestimating": sig(lg + SHIFT_OVER),
        "underestimating": sig(lg - SHIFT_UNDER),
        "severely-underestimating": sig(lg - SHIFT_SEVERE),
        "highly-sensitive": (R >= CUT_SENSITIVE).astype(float),
        "highly-specific": (R >= CUT_SPECIFIC).astype(float),
        "assume-all-positive": np.ones_like(R),
        "assume-all-negative": np.zeros_like(R),
    }

    def per_rows(s):
        pred = (s >= TAU).astype(float)
        cs = np.clip(s, LO, HI)
        nb = (pred * (-TAU / (1 - TAU)), pred)
        bb = ((cs**2 - LO**2) / (HI - LO), ((1 - cs) ** 2 - (1 - HI) ** 2) / (HI - LO))
        return nb, bb

    def mean(pr):
        return float(W0 @ pr[0] + W1 @ pr[1])

    def pair_z(pr_hi, pr_lo):
        d0, d1 = pr_hi[0] - pr_lo[0], pr_hi[1] - pr_lo[1]
        m = W0 @ d0 + W1 @ d1
        second = W0 @ (d0 * d0) + W1 @ (d1 * d1)
        return float(m / np.sqrt(max(second - m * m, 1e-300) / N_REF))

    rows = {n: per_rows(s) for n, s in score_maps.items()}
    nb5 = {n: mean(rows[n][0]) for n in rows}
    bb = {n: mean(rows[n][1]) for n in rows}
    order_nb = sorted(rows, key=lambda n: -nb5[n])
    order_bb = sorted(rows, key=lambda n: bb[n])

    print(f"{'archetype':26s} {'NB@5%':>9s} {'bounded[5,20]':>14s}")
    for n in order_nb:
        print(f"{n:26s} {nb5[n]:9.5f} {bb[n]:14.5f}")
    print("\nNB@5% order:    ", " > ".join(order_nb))
    print("bounded order:  ", " < ".join(order_bb))
    ex_nb = [n for n in order_nb if n != "assume-all-positive"]
    ex_bb = [n for n in order_bb if n != "assume-all-positive"]
    print("agree except assume-all-positive:", ex_nb == ex_bb)
    print(
        "assume-all-positive rank differs:",
        order_nb.index("assume-all-positive") != order_bb.index("assume-all-positive"),
    )
    print("\nconsecutive-pair margin/sigma at n=10^4:")
    for x, y in zip(ex_nb, ex_nb[1:]):
        print(f"  NB@5%    {x:26s} over {y:26s} z = {pair_z(rows[x][0], rows[y][0]):6.2f}")
    for x, y in zip(ex_bb, ex_bb[1:]):
        print(f"  bounded  {x:26s} over {y:26s} z = {pair_z(rows[y][1], rows[x][1]):6.2f}")


def monte_carlo(k2, seeds=256, n=10_000):
    from threshmix.bench import benchmark_table, orderings_agree_except_all_positive

    bad = [s for s in range(seeds) if not orderings_agree_except_all_positive(
        benchmark_table(n=n, seed=s))]
    print(f"\nMC: {seeds} seeds at n={n}: ordering failures = {bad}")


if __name__ == "__main__":
    k2 = solve_concentration()
    m2 = bulk_mean()
    print(f"bulk mean  = {m2!r}")
    print(f"bulk shape = alpha {m2 * k2!r}, beta {(1 - m2) * k2!r}")
    print(f"concentration k2 = {k2!r}  (AUC = {calibrated_auc(k2):.6f})\n")
    landscape(k2)
    try:
        monte_carlo(k2)
    except ImportError:
        print("threshmix not installed; skipping the Monte Carlo check")

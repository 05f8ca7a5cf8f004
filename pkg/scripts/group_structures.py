"""Enumerate every convergence structure on the small groups and classify it.

Prints, per group, how many of the 2^(n^2-n) structures make the group
pseudotopological, quasitopological, topological, and how many distinct
normal-subgroup coset relations occur among the pseudotopological ones.
Exhaustive up to order 4 (4096 structures); pass --max-order to change.
"""
import argparse

import numpy as np

from finconv import groups as gr
from finconv import spaces as sp


def structures(G):
    n = G.order
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for mask in range(1 << len(pairs)):
        adj = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(pairs):
            adj[i, j] = bool(mask >> k & 1)
        yield G.with_space(sp.PseudoSpace(G.space.points, adj))


def main() -> None:
    p = argparse.ArgumentParser()
    p.add_argument("--max-order", type=int, default=4)
    args = p.parse_args()
    print(f"{'group':6s} {'total':>6} {'pstop':>6} {'quasi':>6} {'top':>6} {'normal':>7}")
    for name, G in gr.small_groups(min(args.max_order, 6)):
        if G.order > 4:
            continue
        counts = dict.fromkeys(("total", "pstop", "quasi", "top"), 0)
        kernels = set()
        for H in structures(G):
            counts["total"] += 1
            ps = gr.is_pstop_group(H)
            counts["pstop"] += ps
            counts["quasi"] += gr.is_quasitop_group(H)
            counts["top"] += gr.is_top_group(H)
            if ps:
                kernels.add(frozenset(y for y in H.space.points if H.space.conv(G.unit, y)))
        print(f"{name:6s} {counts['total']:>6} {counts['pstop']:>6} {counts['quasi']:>6} "
              f"{counts['top']:>6} {len(kernels):>7}")


if __name__ == "__main__":
    main()

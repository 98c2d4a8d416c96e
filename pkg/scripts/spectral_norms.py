"""Exact commutator norms of multiplication families against their Lipschitz bound.

Prints the distribution of exact/bound ratios; a ratio of 1 means the bound
is attained on that family.
"""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from hsalgebra.rng import SplitMix64, random_phi, units_family
from hsalgebra.spectral import LambdaParams, comm_norm_mult


@dataclass
class NormsConfig:
    s: int = 2
    families: int = 200
    c1: Fraction = Fraction(1)
    c2: Fraction = Fraction(1)
    seed: int = 0


def run(cfg: NormsConfig):
    rng = SplitMix64(cfg.seed)
    p = LambdaParams(cfg.c1, cfg.c2)
    ratios = []
    for _ in range(cfg.families):
        phi = random_phi(rng, cfg.s, 20, 3)
        mn = comm_norm_mult(units_family(rng, cfg.s), p, phi)
        if mn.bound:
            ratios.append(mn.exact / mn.bound)
    ratios.sort()
    print(f"families with nonzero bound: {len(ratios)}")
    for q in (0, 0.25, 0.5, 0.75, 1):
        r = ratios[min(int(q * len(ratios)), len(ratios) - 1)]
        print(f"  quantile {q:4.2f}: exact/bound = {float(r):.4f}")
    print(f"bound attained: {sum(r == 1 for r in ratios)}; violated: {sum(r > 1 for r in ratios)}")
    return sum(r > 1 for r in ratios)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s", type=int, default=2)
    ap.add_argument("--families", type=int, default=200)
    ap.add_argument("--c1", type=Fraction, default=Fraction(1))
    ap.add_argument("--c2", type=Fraction, default=Fraction(1))
    ap.add_argument("--seed", type=int, default=0)
    raise SystemExit(1 if run(NormsConfig(**vars(ap.parse_args()))) else 0)

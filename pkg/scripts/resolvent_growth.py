"""Growth of the eigenvalue count #{Lambda <= R} of the Dirac operator.

The count grows linearly in R (slope sum|phi_y| / c1), so the resolvent is
compact but not of any summability degree below 1.
"""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from hsalgebra.khomology import HomT
from hsalgebra.spectral import LambdaParams, resolvent_count


@dataclass
class GrowthConfig:
    s: int = 2
    phi: str = "3:2,5:-1,11:1"
    c1: Fraction = Fraction(1)
    c2: Fraction = Fraction(1)
    decades: int = 5


def run(cfg: GrowthConfig):
    phi = HomT(cfg.s, {int(y): int(c) for y, c in (t.split(":") for t in cfg.phi.split(","))})
    p = LambdaParams(cfg.c1, cfg.c2)
    slope = sum(abs(c) for c in phi.coeffs.values()) / p.c1
    print(f"{'R':>10} {'count':>10} {'count/R':>10}   predicted slope {float(slope):.4f}")
    prev = 0
    for k in range(1, cfg.decades + 1):
        R = 10**k
        n = resolvent_count(phi, p, R)
        assert n >= prev
        prev = n
        print(f"{R:>10} {n:>10} {n / R:>10.4f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s", type=int, default=2)
    ap.add_argument("--phi", default="3:2,5:-1,11:1")
    ap.add_argument("--c1", type=Fraction, default=Fraction(1))
    ap.add_argument("--c2", type=Fraction, default=Fraction(1))
    ap.add_argument("--decades", type=int, default=5)
    run(GrowthConfig(**vars(ap.parse_args())))

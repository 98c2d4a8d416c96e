"""Sweep random homomorphisms and tabulate Fredholm indices against phi_x."""
import argparse
from dataclasses import dataclass

from hsalgebra.fredholm import index_pairing, pairing_identity
from hsalgebra.khomology import generator
from hsalgebra.rng import SplitMix64, T_members, random_phi


@dataclass
class SweepConfig:
    s: int = 2
    trials: int = 20
    hi: int = 60
    seed: int = 0


def run(cfg: SweepConfig):
    rng = SplitMix64(cfg.seed)
    mismatches = 0
    print(f"{'trial':>5} {'|supp|':>6} {'x':>4} {'phi_x':>5} {'index':>5} {'ker':>4} {'coker':>5}")
    for t in range(cfg.trials):
        phi = random_phi(rng, cfg.s, cfg.hi)
        assert pairing_identity(phi).index == 0
        for x in T_members(cfg.s, 2, cfg.hi):
            res = index_pairing(phi, generator(x, cfg.s))
            if res.index != phi[x]:
                mismatches += 1
            if phi[x]:
                print(f"{t:>5} {len(phi.coeffs):>6} {x:>4} {phi[x]:>5} {res.index:>5} "
                      f"{res.kernel_dim:>4} {res.cokernel_dim:>5}")
    print(f"mismatches: {mismatches}")
    return mismatches


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f, d in SweepConfig.__dataclass_fields__.items():
        ap.add_argument(f"--{f}", type=int, default=d.default)
    raise SystemExit(1 if run(SweepConfig(**vars(ap.parse_args()))) else 0)

"""Randomized experiment: irregularity, umbrella sizes and filter modes on sampled matrices."""

import argparse
import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from gkz_umbrella.multiplicity import char_cycle
from gkz_umbrella.sampling import SamplerConfig, matrices, random_weights
from gkz_umbrella.slopes import SlopeFamily, filter_pyramids, slopes_along
from gkz_umbrella.umbrella import compute_umbrella, is_L_homogeneous, order_weights


@dataclass(frozen=True)
class ExperimentConfig:
    count: int = 100
    seed: int = 0
    n_max: int = 5


def run(cfg: ExperimentConfig):
    rng = random.Random(cfg.seed)
    half = cfg.count // 2
    Ms = matrices(SamplerConfig(n_max=cfg.n_max, seed=cfg.seed), cfg.count - half)
    Ms += matrices(SamplerConfig(n_max=cfg.n_max, homogeneous=True, seed=cfg.seed), half)
    stats = Counter()
    for M in Ms:
        homogeneous = is_L_homogeneous(M, order_weights(M.n))
        irregular = any(
            slopes_along(SlopeFamily(M, v0=V), facets_only=True).slopes
            for k in range(1, M.n + 1)
            for V in combinations(range(M.n), k)
        )
        stats["homogeneous"] += homogeneous
        stats["irregular"] += irregular
        stats["mismatch"] += homogeneous == irregular

        L = random_weights(rng, M.n, allow_nonpositive=False)
        stats["faces"] += len(compute_umbrella(M, L))
        stats["degree"] += char_cycle(M, L).degree(M)

        vinf = set(rng.sample(range(M.n), rng.randint(1, M.n - 1)))
        fam = SlopeFamily(M, vinf=vinf)
        raw = slopes_along(fam)
        point = filter_pyramids(raw, fam, mode="pointwise").slopes
        lim = filter_pyramids(raw, fam, mode="limits").slopes
        stats["raw jumps"] += len(raw.slopes)
        stats["pointwise kept"] += len(point)
        stats["limits kept"] += len(lim)
    return stats


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=ExperimentConfig.count)
    parser.add_argument("--seed", type=int, default=ExperimentConfig.seed)
    args = parser.parse_args()
    cfg = ExperimentConfig(count=args.count, seed=args.seed)
    stats = run(cfg)
    print(f"matrices: {cfg.count} (seed {cfg.seed})")
    for key in ["homogeneous", "irregular", "mismatch", "faces", "degree", "raw jumps", "pointwise kept", "limits kept"]:
        print(f"  {key:15s} {stats[key]}")


if __name__ == "__main__":
    main()

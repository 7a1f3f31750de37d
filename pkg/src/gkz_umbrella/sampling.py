"""Seeded random toric matrices for property checks and experiments."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .umbrella import ToricMatrix, ValidationError


@dataclass(frozen=True)
class SamplerConfig:
    d_min: int = 2
    d_max: int = 3
    n_max: int = 6
    entry_max: int = 9
    allow_negative: bool = True
    homogeneous: bool = False  # first row all ones
    seed: int = 0


def random_matrix(rng: random.Random, cfg: SamplerConfig) -> ToricMatrix:
    """Rejection-sample a valid matrix (pointed, rank d, ``ZA = Z^d``)."""
    lo = -cfg.entry_max if cfg.allow_negative else 0
    while True:
        d = rng.randint(cfg.d_min, cfg.d_max)
        n = rng.randint(d + 1, max(d + 1, cfg.n_max))
        rows = [[rng.randint(lo, cfg.entry_max) for _ in range(n)] for _ in range(d)]
        if cfg.homogeneous:
            rows[0] = [1] * n
        try:
            return ToricMatrix.of(rows)
        except ValidationError:
            continue


def matrices(cfg: SamplerConfig, count: int):
    rng = random.Random(cfg.seed)
    return [random_matrix(rng, cfg) for _ in range(count)]


def random_weights(rng: random.Random, n: int, allow_nonpositive: bool = True) -> tuple[Fraction, ...]:
    lo = -3 if allow_nonpositive else 1
    return tuple(Fraction(rng.randint(lo, 6), rng.randint(1, 3)) for _ in range(n))


def random_unimodular(rng: random.Random, d: int, steps: int = 6) -> list[list[int]]:
    """Product of random elementary integer matrices (det +-1)."""
    g = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2) if d > 1 else (0, 0)
        if d > 1 and rng.random() < 0.8:
            c = rng.choice([-2, -1, 1, 2])
            g[i] = [a + c * b for a, b in zip(g[i], g[j])]
        elif d > 1:
            g[i], g[j] = g[j], g[i]
        else:
            g[0] = [-g[0][0]]
    return g


def act(g, A: ToricMatrix) -> ToricMatrix:
    rows = [[sum(g[i][k] * A.rows[k][j] for k in range(A.d)) for j in range(A.n)] for i in range(A.d)]
    return ToricMatrix.of(rows)

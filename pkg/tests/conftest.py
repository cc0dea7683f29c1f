"""Shared generators and naive oracles for the test suite."""

import random

from abelk import GroupElement, IntMatrix, Tower, push_to_stage


def rand_nonsingular(rng: random.Random, n: int, lo=-9, hi=9) -> IntMatrix:
    while True:
        m = IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(n)]
                                 for _ in range(n)])
        if m.det() != 0:
            return m


def rand_tower(rng: random.Random, rank: int, max_prefix=4,
               max_period=3) -> Tower:
    prefix = tuple(rand_nonsingular(rng, rank)
                   for _ in range(rng.randint(0, max_prefix)))
    period = tuple(rand_nonsingular(rng, rank)
                   for _ in range(rng.randint(0, max_period)))
    return Tower(rank, prefix, period)


def naive_divisible(t: Tower, e: GroupElement, m: int, depth: int) -> bool:
    """Unrolled oracle: e is m-divisible iff some pushed representative has
    all coordinates divisible by m (checked up to the given stage)."""
    for s in range(e.stage, depth + 1):
        cur = push_to_stage(t, e, s)
        if all(c % m == 0 for c in cur.coords):
            return True
    return False


def unroll_depth(t: Tower, periods: int = 4) -> int:
    return len(t.prefix) + periods * max(1, len(t.period))

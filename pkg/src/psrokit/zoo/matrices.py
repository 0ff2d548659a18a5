"""Benchmark matrix games and generators."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from psrokit.normal_form import NormalFormGame


def make_generalized_rps(n: int) -> NormalFormGame:
    """Cyclic n-action rock-paper-scissors.

    Action j beats action i when (j - i) mod n lies in 1..ceil((n-1)/2), so
    every action beats and loses to the same number of others; for even n the
    antipodal pair ties.  Payoffs are -1/0/+1 and uniform play is a Nash
    equilibrium.  n = 3 is the canonical game.
    """
    if n < 3:
        raise ValueError("generalized RPS needs at least 3 actions")
    idx = np.arange(n)
    diff = (idx[None, :] - idx[:, None]) % n
    half = (n - 1 + 1) // 2  # ceil((n - 1) / 2)
    payoffs = np.where(diff == 0, 0.0, np.where(diff <= half, -1.0, 1.0))
    if n % 2 == 0:
        payoffs[diff == n // 2] = 0.0
    return NormalFormGame(payoffs, name=f"generalized_rps_{n}")


def make_random_uniform(rows: int, cols: int, seed: int) -> NormalFormGame:
    """Random game with payoffs i.i.d. uniform on [0, 1) from numpy's seeded PCG64."""
    if rows < 1 or cols < 1:
        raise ValueError("matrix dimensions must be positive")
    rng = np.random.default_rng(seed)
    return NormalFormGame(rng.random((rows, cols)), name=f"random_uniform_{rows}x{cols}_s{seed}")


def blotto_allocations(coins: int, fields: int) -> list[tuple[int, ...]]:
    """All ordered splits of `coins` over `fields`, lexicographically sorted."""
    allocations = []
    for dividers in combinations(range(coins + fields - 1), fields - 1):
        previous = -1
        parts = []
        for d in dividers:
            parts.append(d - previous - 1)
            previous = d
        parts.append(coins + fields - 1 - previous - 1)
        allocations.append(tuple(parts))
    return sorted(allocations)


def make_blotto(coins: int, fields: int) -> NormalFormGame:
    """Symmetric Colonel Blotto: the payoff is the net number of fields won.

    Both players simultaneously split `coins` over `fields`; each field is
    worth +1 to whoever commits strictly more coins to it.
    """
    if fields < 1 or coins < fields:
        raise ValueError("blotto needs coins >= fields >= 1")
    allocations = blotto_allocations(coins, fields)
    table = np.array(allocations, dtype=float)
    # pairwise sign comparison per field, summed over fields
    payoffs = np.sign(table[:, None, :] - table[None, :, :]).sum(axis=2)
    labels = ["-".join(map(str, a)) for a in allocations]
    return NormalFormGame(payoffs, row_labels=labels, col_labels=labels, name=f"blotto_{coins}_{fields}")

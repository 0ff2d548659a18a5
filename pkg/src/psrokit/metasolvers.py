"""Distribution-over-arms solvers: no-regret updates (multiplicative weights,
Exp3) and exact solvers for zero-sum matrices (LP, fictitious play)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from psrokit.errors import LPSolverError
from psrokit.normal_form import NormalFormGame
from psrokit.strategies import MixedStrategy

logger = logging.getLogger(__name__)


@dataclass
class MWUState:
    """Multiplicative-weights iterate plus a running sum of its iterates.

    ``average()`` returns the time average of the post-update distributions,
    the quantity with the no-regret guarantee.
    """

    weights: np.ndarray
    learning_rate: float = 0.1
    iterate_sum: np.ndarray = field(default=None)  # type: ignore[assignment]
    num_updates: int = 0

    @classmethod
    def uniform(cls, num_arms: int, learning_rate: float = 0.1) -> "MWUState":
        if num_arms < 1:
            raise ValueError("need at least one arm")
        if learning_rate <= 0.0:
            raise ValueError("learning rate must be positive")
        return cls(np.full(num_arms, 1.0 / num_arms), learning_rate)

    def distribution(self) -> np.ndarray:
        return self.weights / self.weights.sum()

    def average(self) -> np.ndarray:
        if self.num_updates == 0:
            return self.distribution()
        return self.iterate_sum / self.num_updates


def mwu_update(state: MWUState, payoffs) -> MWUState:
    """Full-information exponential-weights step on per-arm payoffs."""
    payoffs = np.asarray(payoffs, dtype=float)
    if payoffs.shape != state.weights.shape:
        raise ValueError("payoff vector does not match the number of arms")
    if not np.all(np.isfinite(payoffs)):
        raise ValueError("payoffs must be finite")
    # subtracting the max is payoff-shift invariance used for stability
    scaled = state.learning_rate * payoffs
    weights = state.weights * np.exp(scaled - scaled.max())
    weights /= weights.sum()
    iterate_sum = weights.copy() if state.iterate_sum is None else state.iterate_sum + weights
    return MWUState(weights, state.learning_rate, iterate_sum, state.num_updates + 1)


@dataclass
class Exp3State:
    """Bandit-feedback exponential-weights iterate.

    Sampling mixes the weight distribution with uniform exploration; rewards
    are rescaled into [0, 1] by the supplied range before the importance
    weighted update.  The running sum tracks the post-update sampling
    distributions.
    """

    weights: np.ndarray
    learning_rate: float = 1.0
    exploration: float = 0.1
    reward_range: tuple[float, float] = (0.0, 1.0)
    iterate_sum: np.ndarray = field(default=None)  # type: ignore[assignment]
    num_updates: int = 0

    @classmethod
    def uniform(
        cls,
        num_arms: int,
        learning_rate: float = 1.0,
        exploration: float = 0.1,
        reward_range: tuple[float, float] = (0.0, 1.0),
    ) -> "Exp3State":
        if num_arms < 1:
            raise ValueError("need at least one arm")
        if learning_rate <= 0.0:
            raise ValueError("learning rate must be positive")
        if not 0.0 < exploration <= 1.0:
            raise ValueError("exploration rate must lie in (0, 1]")
        lo, hi = reward_range
        if not hi > lo:
            raise ValueError("reward range must have positive width")
        return cls(np.full(num_arms, 1.0 / num_arms), learning_rate, exploration, (float(lo), float(hi)))

    def sampling_distribution(self) -> np.ndarray:
        k = self.weights.size
        return (1.0 - self.exploration) * (self.weights / self.weights.sum()) + self.exploration / k

    def average(self) -> np.ndarray:
        if self.num_updates == 0:
            return self.sampling_distribution()
        return self.iterate_sum / self.num_updates


def exp3_sample(state: Exp3State, rng) -> int:
    probs = state.sampling_distribution()
    return int(rng.choice(probs.size, p=probs))


def exp3_update(state: Exp3State, arm: int, reward: float) -> Exp3State:
    """Importance-weighted update for the arm that was actually played."""
    k = state.weights.size
    if not 0 <= arm < k:
        raise ValueError(f"arm index {arm} out of range for {k} arms")
    lo, hi = state.reward_range
    scaled = (float(reward) - lo) / (hi - lo)
    if scaled < 0.0 or scaled > 1.0:
        logger.warning("reward %g outside declared range [%g, %g]; clamping", reward, lo, hi)
        scaled = min(max(scaled, 0.0), 1.0)
    probs = state.sampling_distribution()
    estimate = scaled / (k * probs[arm])
    weights = state.weights.copy()
    weights[arm] *= np.exp(state.learning_rate * state.exploration * estimate)
    weights /= weights.sum()
    nxt = Exp3State(weights, state.learning_rate, state.exploration, state.reward_range)
    sampled = nxt.sampling_distribution()
    nxt.iterate_sum = sampled if state.iterate_sum is None else state.iterate_sum + sampled
    nxt.num_updates = state.num_updates + 1
    return nxt


def _simplex_solve(A: np.ndarray, b: np.ndarray, c: np.ndarray):
    """Maximize c @ x subject to A x <= b, x >= 0, with b >= 0.

    Dense tableau simplex with Bland's rule.  Returns (x, duals, objective).
    """
    m, n = A.shape
    tableau = np.zeros((m + 1, n + m + 1))
    tableau[:m, :n] = A
    tableau[:m, n : n + m] = np.eye(m)
    tableau[:m, -1] = b
    tableau[m, :n] = -c
    basis = list(range(n, n + m))

    max_pivots = 50 * (m + n + 10)
    for _ in range(max_pivots):
        row_costs = tableau[m, : n + m]
        entering = -1
        for j in range(n + m):
            if row_costs[j] < -1e-12:
                entering = j
                break
        if entering < 0:
            break
        ratios = np.full(m, np.inf)
        col = tableau[:m, entering]
        positive = col > 1e-12
        ratios[positive] = tableau[:m, -1][positive] / col[positive]
        if not np.isfinite(ratios).any():
            raise LPSolverError("unbounded linear program")
        best = np.min(ratios)
        leaving = -1
        for i in range(m):
            if ratios[i] <= best + 1e-12 and (leaving < 0 or basis[i] < basis[leaving]):
                leaving = i
        pivot = tableau[leaving, entering]
        tableau[leaving] /= pivot
        for i in range(m + 1):
            if i != leaving and tableau[i, entering] != 0.0:
                tableau[i] -= tableau[i, entering] * tableau[leaving]
        basis[leaving] = entering
    else:
        raise LPSolverError("simplex failed to terminate")

    x = np.zeros(n + m)
    for i, var in enumerate(basis):
        x[var] = tableau[i, -1]
    duals = tableau[m, n : n + m].copy()
    return x[:n], duals, float(tableau[m, -1])


def exact_nash_zero_sum(game: NormalFormGame) -> tuple[MixedStrategy, MixedStrategy, float]:
    """Exact Nash equilibrium of a zero-sum matrix game by linear programming.

    Returns (row strategy, column strategy, game value to the row player).
    Raises LPSolverError if the solve breaks down or fails its certificates.
    """
    U = game.row_payoffs
    m, n = U.shape
    shift = 1.0 - float(U.min())
    P = U + shift  # strictly positive, so the game value after shifting is > 0

    # column player minimizes: find t >= 0 with P t <= 1 maximizing sum(t);
    # then value = 1 / sum(t) and the row strategy comes out of the duals
    x, duals, _ = _simplex_solve(P, np.ones(m), np.ones(n))
    total = x.sum()
    if not np.isfinite(total) or total <= 0.0:
        raise LPSolverError("degenerate optimum: zero scaling mass")
    value_shifted = 1.0 / total
    col = x * value_shifted
    row = duals * value_shifted
    # clean tiny negatives from pivoting noise, then renormalize
    row = np.where(np.abs(row) < 1e-12, np.maximum(row, 0.0), row)
    col = np.where(np.abs(col) < 1e-12, np.maximum(col, 0.0), col)
    if row.min() < -1e-9 or col.min() < -1e-9:
        raise LPSolverError("negative probability in recovered strategies")
    row = np.maximum(row, 0.0)
    col = np.maximum(col, 0.0)
    row /= row.sum()
    col /= col.sum()

    gap = abs(total - duals.sum())  # strong duality: primal == dual objective
    if gap > 1e-7 * (1.0 + abs(total)):
        raise LPSolverError(f"duality gap {gap:g} exceeds tolerance")

    value = value_shifted - shift
    # certificate: neither player can gain more than pivot noise by deviating
    row_dev = float((P @ col).max()) - value_shifted
    col_dev = value_shifted - float((row @ P).min())
    if row_dev > 1e-7 or col_dev > 1e-7:
        raise LPSolverError("equilibrium certificate failed")
    return MixedStrategy(row), MixedStrategy(col), float(value)


def fictitious_play(game: NormalFormGame, iterations: int = 2000) -> tuple[MixedStrategy, MixedStrategy, float]:
    """Simultaneous-update fictitious play from uniform initial counts.

    Returns the empirical strategies and the row player's value at them.
    """
    if iterations < 0:
        raise ValueError("iterations must be non-negative")
    m, n = game.shape
    row_counts = np.full(m, 1.0 / m)
    col_counts = np.full(n, 1.0 / n)
    U = game.row_payoffs
    for _ in range(iterations):
        row_avg = row_counts / row_counts.sum()
        col_avg = col_counts / col_counts.sum()
        row_counts[int(np.argmax(U @ col_avg))] += 1.0
        col_counts[int(np.argmax(-(U.T @ row_avg)))] += 1.0
    row = row_counts / row_counts.sum()
    col = col_counts / col_counts.sum()
    return MixedStrategy(row), MixedStrategy(col), float(row @ U @ col)

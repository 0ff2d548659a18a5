"""Strategy representations shared by matrix and extensive-form games."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from psrokit.errors import MissingPolicyError

SIMPLEX_TOL = 1e-9


def check_simplex(vec: np.ndarray, what: str) -> None:
    if vec.ndim != 1 or vec.size < 1:
        raise ValueError(f"{what} must be a non-empty 1-D vector")
    if np.any(vec < -1e-12):
        raise ValueError(f"{what} has negative entries")
    if abs(float(vec.sum()) - 1.0) > SIMPLEX_TOL:
        raise ValueError(f"{what} must sum to 1, got {vec.sum()!r}")


class MixedStrategy:
    """Probability distribution over the pure strategies of a matrix game."""

    __slots__ = ("probs",)

    def __init__(self, probs):
        vec = np.array(probs, dtype=float)
        check_simplex(vec, "mixed strategy")
        self.probs = vec

    def __len__(self):
        return self.probs.size

    def __repr__(self):
        return f"MixedStrategy({np.array2string(self.probs, precision=4)})"


class RestrictedDistribution(MixedStrategy):
    """Probability vector over one player's population entries."""

    def __repr__(self):
        return f"RestrictedDistribution({np.array2string(self.probs, precision=4)})"


@dataclass(frozen=True)
class PureStrategy:
    """Single pure strategy of a matrix game, identified by row or column index."""

    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("pure strategy index must be non-negative")


class BehaviorPolicy:
    """Tabular policy mapping information-set keys to action distributions.

    Vectors are indexed by position in the information set's legal-action
    list.  Lookups for unknown keys return a uniform distribution without
    touching the table, so a partially trained policy is always well defined
    and a frozen policy is never mutated by evaluation; construct with
    ``default_uniform=False`` to make missing keys an error instead.
    """

    def __init__(self, table=None, default_uniform=True):
        self.table: dict[bytes, np.ndarray] = {}
        self.default_uniform = default_uniform
        if table:
            for key, vec in table.items():
                self.set(key, vec)

    def probs(self, key: bytes, num_actions: int) -> np.ndarray:
        vec = self.table.get(key)
        if vec is None:
            if not self.default_uniform:
                raise MissingPolicyError(f"no policy entry for information set {key!r}")
            return np.full(num_actions, 1.0 / num_actions)
        if vec.size != num_actions:
            raise MissingPolicyError(
                f"policy entry for {key!r} has {vec.size} actions, expected {num_actions}"
            )
        return vec

    def set(self, key: bytes, probs) -> None:
        vec = np.array(probs, dtype=float)
        check_simplex(vec, f"policy entry for {key!r}")
        self.table[bytes(key)] = vec

    def copy(self) -> "BehaviorPolicy":
        out = BehaviorPolicy(default_uniform=self.default_uniform)
        out.table = {key: vec.copy() for key, vec in self.table.items()}
        return out

    def __len__(self):
        return len(self.table)

    def __repr__(self):
        return f"BehaviorPolicy({len(self.table)} information sets)"


def _family(strategy) -> str:
    if isinstance(strategy, (PureStrategy, MixedStrategy)):
        return "matrix"
    if isinstance(strategy, BehaviorPolicy):
        return "behavior"
    raise TypeError(f"not a population strategy: {type(strategy).__name__}")


class CheckpointMixture:
    """Finite weighted mixture of strategies from one game family.

    Nested mixtures are flattened at construction, so the stored nesting depth
    is always one.  Components must all be matrix-game strategies or all be
    behavior policies.
    """

    def __init__(self, weights, components):
        wvec = np.array(weights, dtype=float)
        if wvec.size != len(components):
            raise ValueError("one weight per component required")
        check_simplex(wvec, "mixture weights")
        flat_w: list[float] = []
        flat_c: list = []
        for w, comp in zip(wvec, components):
            if isinstance(comp, CheckpointMixture):
                flat_w.extend(float(w) * comp.weights)
                flat_c.extend(comp.components)
            else:
                flat_w.append(float(w))
                flat_c.append(comp)
        if len({_family(c) for c in flat_c}) > 1:
            raise ValueError("mixture components must share a game family")
        self.weights = np.array(flat_w, dtype=float)
        self.components = list(flat_c)

    def __len__(self):
        return len(self.components)

    def __repr__(self):
        return f"CheckpointMixture({len(self.components)} components)"


def effective_mixed_vector(strategy, num_pure: int) -> np.ndarray:
    """Collapse a matrix-game population strategy to one mixed vector.

    Exact for mixtures: a mixture of root-level lotteries is the weighted
    average of their probability vectors.
    """
    if isinstance(strategy, PureStrategy):
        if strategy.index >= num_pure:
            raise ValueError(f"pure strategy {strategy.index} out of range for {num_pure} actions")
        vec = np.zeros(num_pure)
        vec[strategy.index] = 1.0
        return vec
    if isinstance(strategy, MixedStrategy):
        if strategy.probs.size != num_pure:
            raise ValueError(f"mixed strategy has {strategy.probs.size} entries, expected {num_pure}")
        return strategy.probs.copy()
    if isinstance(strategy, CheckpointMixture):
        out = np.zeros(num_pure)
        for w, comp in zip(strategy.weights, strategy.components):
            out += w * effective_mixed_vector(comp, num_pure)
        return out
    raise TypeError(f"not a matrix-game strategy: {type(strategy).__name__}")


def behavior_components(strategy) -> tuple[np.ndarray, list]:
    """Flatten an extensive-form population strategy to (weights, policies)."""
    if isinstance(strategy, CheckpointMixture):
        if strategy.components and not isinstance(strategy.components[0], BehaviorPolicy):
            raise TypeError("mixture does not hold behavior policies")
        return strategy.weights.copy(), list(strategy.components)
    if hasattr(strategy, "probs") and callable(strategy.probs):
        return np.array([1.0]), [strategy]
    raise TypeError(f"not an extensive-form strategy: {type(strategy).__name__}")

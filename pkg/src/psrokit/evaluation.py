"""Exact evaluation: expected values, best-response gaps, empirical payoff
matrices over strategy populations."""

from __future__ import annotations

import numpy as np

from psrokit.extensive import CHANCE, ExtensiveGame
from psrokit.normal_form import NormalFormGame, expected_value_nfg
from psrokit.oracles import exact_br_efg, exact_br_nfg
from psrokit.strategies import (
    CheckpointMixture,
    MixedStrategy,
    behavior_components,
    effective_mixed_vector,
)


def expected_value(game, strategy0, strategy1) -> float:
    """Exact expected utility to player 0 under the given strategy profile.

    Works for both matrix games and extensive-form games; either strategy may
    be a single policy or a weighted mixture.
    """
    if isinstance(game, NormalFormGame):
        p = effective_mixed_vector(strategy0, game.shape[0])
        q = effective_mixed_vector(strategy1, game.shape[1])
        return expected_value_nfg(game, p, q)
    return _expected_value_efg(game, strategy0, strategy1)


def _expected_value_efg(game: ExtensiveGame, strategy0, strategy1) -> float:
    w0, comps0 = behavior_components(strategy0)
    w1, comps1 = behavior_components(strategy1)
    vectors = (w0.astype(float).copy(), w1.astype(float).copy())
    components = (comps0, comps1)
    total = 0.0
    # reach probabilities factor across players, so one pass with a
    # per-component reach vector per side covers the whole product mixture
    stack = [(game.initial_state(), vectors[0], vectors[1], 1.0)]
    while stack:
        state, vec0, vec1, chance = stack.pop()
        if state.is_terminal():
            total += chance * float(vec0.sum()) * float(vec1.sum()) * state.returns()[0]
            continue
        player = state.acting_player()
        if player == CHANCE:
            for action, prob in state.chance_outcomes():
                stack.append((state.child(action), vec0, vec1, chance * prob))
            continue
        key = state.infoset_key()
        actions = state.legal_actions()
        mat = np.stack([comp.probs(key, len(actions)) for comp in components[player]])
        vec = vec0 if player == 0 else vec1
        for col, action in enumerate(actions):
            child_vec = vec * mat[:, col]
            if child_vec.any():
                if player == 0:
                    stack.append((state.child(action), child_vec, vec1, chance))
                else:
                    stack.append((state.child(action), vec0, child_vec, chance))
    return total


def exploitability(game, strategy0, strategy1) -> float:
    """Sum over players of the gain a best responder gets against the profile.

    Zero exactly at a Nash equilibrium of a zero-sum game, positive elsewhere.
    """
    if isinstance(game, NormalFormGame):
        _, br0 = exact_br_nfg(game, strategy1, player=0)
        _, br1 = exact_br_nfg(game, strategy0, player=1)
        return br0 + br1
    _, br0 = exact_br_efg(game, strategy1, opponent_player=1)
    _, br1 = exact_br_efg(game, strategy0, opponent_player=0)
    return br0 + br1


def mixture_over(game, player: int, arms, probs):
    """Aggregate population arms under a distribution into one strategy.

    Matrix-game arms collapse into a single mixed vector; extensive-form arms
    become a weighted mixture evaluated exactly elsewhere.
    """
    probs = np.asarray(probs, dtype=float)
    if len(arms) != probs.size:
        raise ValueError("distribution length does not match the number of arms")
    if isinstance(game, NormalFormGame):
        num_pure = game.shape[player]
        vec = np.zeros(num_pure)
        for weight, arm in zip(probs, arms):
            if weight != 0.0:
                vec += weight * effective_mixed_vector(arm, num_pure)
        # guard against drift from summing many small weights
        return MixedStrategy(vec / vec.sum())
    return CheckpointMixture(probs, list(arms))


def empirical_matrix(game, arms0, arms1) -> NormalFormGame:
    """Matrix game whose entry (i, j) is arm i's exact payoff against arm j.

    This is the restricted game the metasolvers operate on.
    """
    out = np.empty((len(arms0), len(arms1)))
    for i, a0 in enumerate(arms0):
        for j, a1 in enumerate(arms1):
            out[i, j] = expected_value(game, a0, a1)
    return NormalFormGame(out, name=f"restricted_{getattr(game, 'name', 'game')}")


def arm_payoffs(game, player: int, arms, opponent_strategy) -> np.ndarray:
    """Expected utility of each arm for ``player`` against a fixed opponent."""
    values = np.empty(len(arms))
    for k, arm in enumerate(arms):
        if player == 0:
            values[k] = expected_value(game, arm, opponent_strategy)
        else:
            values[k] = -expected_value(game, opponent_strategy, arm)
    return values

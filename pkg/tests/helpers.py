"""Independent reference implementations used only by the tests.

Everything here recomputes quantities from first principles with a different
code shape than the package, so agreement is meaningful.
"""

import itertools

import numpy as np

from psrokit.extensive import CHANCE, enumerate_infosets
from psrokit.strategies import BehaviorPolicy


def random_simplex(rng, n):
    vec = rng.random(n) + 1e-3
    return vec / vec.sum()


def random_policy(game, player, rng):
    """Fully random behavior policy covering every information set."""
    pol = BehaviorPolicy()
    for key, actions in enumerate_infosets(game, player).items():
        pol.set(key, random_simplex(rng, len(actions)))
    return pol


def tree_expected_value(game, policy0, policy1):
    """Player 0's expected utility under two behavior policies.

    Plain recursion over histories; accepts anything with a
    ``probs(key, num_actions)`` method.
    """
    policies = (policy0, policy1)

    def walk(state):
        if state.is_terminal():
            return state.returns()[0]
        if state.acting_player() == CHANCE:
            return sum(p * walk(state.child(a)) for a, p in state.chance_outcomes())
        who = state.acting_player()
        actions = state.legal_actions()
        probs = policies[who].probs(state.infoset_key(), len(actions))
        return sum(p * walk(state.child(a)) for p, a in zip(probs, actions))

    return walk(game.initial_state())


def pure_plan_policies(game, player):
    """Every deterministic behavior policy of one player, as a list."""
    infosets = enumerate_infosets(game, player)
    keys = list(infosets)
    choices = [range(len(infosets[k])) for k in keys]
    plans = []
    for combo in itertools.product(*choices):
        pol = BehaviorPolicy()
        for key, pick in zip(keys, combo):
            row = np.zeros(len(infosets[key]))
            row[pick] = 1.0
            pol.set(key, row)
        plans.append(pol)
    return plans


def plan_best_response_value(game, opponent, opponent_player):
    """Best-response value by exhaustive search over deterministic plans."""
    responder = 1 - opponent_player
    best = -np.inf
    for plan in pure_plan_policies(game, responder):
        pols = (plan, opponent) if responder == 0 else (opponent, plan)
        value = tree_expected_value(game, *pols)
        if opponent_player == 0:
            value = -value
        best = max(best, value)
    return best


def brute_force_exploitability(payoffs, row_probs, col_probs):
    """Sum of both players' pure best-response gains over their profile values."""
    payoffs = np.asarray(payoffs, dtype=float)
    p = np.asarray(row_probs, dtype=float)
    q = np.asarray(col_probs, dtype=float)
    return float(np.max(payoffs @ q) - np.min(p @ payoffs))

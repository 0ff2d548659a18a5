"""Matrix games exposed through the extensive-form walker, and the reverse
conversion from a small extensive game to its induced normal form."""

from __future__ import annotations

from itertools import product

import numpy as np

from psrokit.extensive import CHANCE, ExtensiveGame, ExtensiveState, enumerate_infosets
from psrokit.normal_form import NormalFormGame


class OneShotGame(ExtensiveGame):
    """Two hidden plies: the row player moves, then the column player moves
    without observing it.  Keys are ``b"p0|"`` and ``b"p1|"``."""

    max_depth = 2

    def __init__(self, matrix_game: NormalFormGame):
        self.matrix = matrix_game
        self.name = f"one_shot_{matrix_game.name}"

    def initial_state(self):
        return _OneShotState(self, ())

    def utility_range(self):
        return self.matrix.utility_range()


class _OneShotState(ExtensiveState):
    __slots__ = ("game", "history")

    def __init__(self, game, history):
        self.game = game
        self.history = history

    def is_terminal(self):
        return len(self.history) == 2

    def acting_player(self):
        return len(self.history)

    def legal_actions(self):
        side = self.game.matrix.shape[len(self.history)]
        return tuple(range(side))

    def chance_outcomes(self):
        raise ValueError("one-shot games have no chance nodes")

    def infoset_key(self):
        return f"p{len(self.history)}|".encode()

    def returns(self):
        value = float(self.game.matrix.row_payoffs[self.history[0], self.history[1]])
        return (value, -value)

    def child(self, action):
        return _OneShotState(self.game, self.history + (action,))


def induced_normal_form(game: ExtensiveGame, max_pure_strategies: int = 4096) -> NormalFormGame:
    """Exact induced normal form of a small extensive-form game.

    A pure strategy fixes one action per information set (enumerated in
    first-visit order); entry (i, j) is the exact expected value of the plan
    pair with chance marginalized out.  Refuses games whose pure-strategy
    count exceeds ``max_pure_strategies``.
    """
    infosets = [enumerate_infosets(game, player) for player in (0, 1)]
    plan_lists = []
    for player in (0, 1):
        keys = list(infosets[player])
        count = 1
        for key in keys:
            count *= len(infosets[player][key])
            if count > max_pure_strategies:
                raise ValueError(
                    f"player {player} has more than {max_pure_strategies} pure strategies"
                )
        plans = [dict(zip(keys, choice)) for choice in product(*(infosets[player][k] for k in keys))]
        plan_lists.append(plans)

    def plan_value(state, plans):
        if state.is_terminal():
            return state.returns()[0]
        if state.acting_player() == CHANCE:
            return sum(p * plan_value(state.child(a), plans) for a, p in state.chance_outcomes())
        action = plans[state.acting_player()][state.infoset_key()]
        return plan_value(state.child(action), plans)

    root = game.initial_state()
    payoffs = np.empty((len(plan_lists[0]), len(plan_lists[1])))
    for i, plan0 in enumerate(plan_lists[0]):
        for j, plan1 in enumerate(plan_lists[1]):
            payoffs[i, j] = plan_value(root, (plan0, plan1))
    labels = [
        ["".join(str(p[k]) for k in infosets[player]) for p in plan_lists[player]]
        for player in (0, 1)
    ]
    return NormalFormGame(payoffs, row_labels=labels[0], col_labels=labels[1], name=f"{game.name}_nfg")

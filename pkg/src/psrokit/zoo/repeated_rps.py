"""Repeated rock-paper-scissors as a turn-based game with a hidden pending move.

Each stage player 0 commits a move that stays hidden until player 1 responds;
completed joint stages are public to both players.  Stage payoffs use the
standard -1/0/+1 matrix and accumulate into the terminal return.  Keys look
like ``b"p1|02,21|"``: player prefix, then comma-joined completed stages.
"""

from __future__ import annotations

from psrokit.extensive import ExtensiveGame, ExtensiveState

_STAGE = ((0, -1, 1), (1, 0, -1), (-1, 1, 0))


class RepeatedRPS(ExtensiveGame):
    def __init__(self, repetitions: int):
        if repetitions < 1:
            raise ValueError("need at least one repetition")
        self.repetitions = repetitions
        self.max_depth = 2 * repetitions
        self.name = f"repeated_rps_{repetitions}"

    def initial_state(self):
        return _RepeatedRPSState(self, ())

    def utility_range(self):
        return (-float(self.repetitions), float(self.repetitions))


class _RepeatedRPSState(ExtensiveState):
    __slots__ = ("game", "history")

    def __init__(self, game, history):
        self.game = game
        self.history = history

    def is_terminal(self):
        return len(self.history) == 2 * self.game.repetitions

    def acting_player(self):
        return len(self.history) % 2

    def legal_actions(self):
        return (0, 1, 2)

    def chance_outcomes(self):
        raise ValueError("repeated RPS has no chance nodes")

    def infoset_key(self):
        # both players see exactly the completed stages; player 1 never sees
        # player 0's pending move
        completed = len(self.history) // 2
        stages = ",".join(
            f"{self.history[2 * t]}{self.history[2 * t + 1]}" for t in range(completed)
        )
        return f"p{self.acting_player()}|{stages}|".encode()

    def returns(self):
        total = 0.0
        for t in range(self.game.repetitions):
            total += _STAGE[self.history[2 * t]][self.history[2 * t + 1]]
        return (total, -total)

    def child(self, action):
        return _RepeatedRPSState(self.game, self.history + (action,))

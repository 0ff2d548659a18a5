"""Three-card Kuhn poker.

Cards 0 < 1 < 2, one dealt to each player after a one-unit ante, then a single
betting round with actions 0 = pass/fold and 1 = bet/call.  Information-set
keys look like ``b"p1|c2|pb"``: player prefix, own card, public betting string.
"""

from __future__ import annotations

from itertools import permutations

from psrokit.extensive import CHANCE, ExtensiveGame, ExtensiveState

_DEALS = tuple(permutations((0, 1, 2), 2))
_BET_CHARS = "pb"


def _betting_over(bets: tuple[int, ...]) -> bool:
    if len(bets) < 2:
        return False
    if bets == (0, 1):
        return False  # player 0 facing a bet still acts
    return True


class KuhnPoker(ExtensiveGame):
    name = "kuhn_poker"
    max_depth = 4  # deal plus at most three betting actions

    def initial_state(self):
        return _KuhnState(())

    def utility_range(self):
        return (-2.0, 2.0)


class _KuhnState(ExtensiveState):
    __slots__ = ("history",)

    def __init__(self, history):
        self.history = history

    def _bets(self):
        return self.history[1:]

    def is_terminal(self):
        return len(self.history) > 1 and _betting_over(self._bets())

    def acting_player(self):
        if not self.history:
            return CHANCE
        return len(self._bets()) % 2

    def legal_actions(self):
        return (0, 1)

    def chance_outcomes(self):
        return tuple((i, 1.0 / len(_DEALS)) for i in range(len(_DEALS)))

    def infoset_key(self):
        player = self.acting_player()
        card = _DEALS[self.history[0]][player]
        bets = "".join(_BET_CHARS[a] for a in self._bets())
        return f"p{player}|c{card}|{bets}".encode()

    def returns(self):
        cards = _DEALS[self.history[0]]
        bets = self._bets()
        if bets == (0, 1, 0):
            return (-1.0, 1.0)  # player 0 folds to a bet
        if bets == (1, 0):
            return (1.0, -1.0)  # player 1 folds
        pot = 1.0 if bets == (0, 0) else 2.0
        value = pot if cards[0] > cards[1] else -pot
        return (value, -value)

    def child(self, action):
        return _KuhnState(self.history + (action,))

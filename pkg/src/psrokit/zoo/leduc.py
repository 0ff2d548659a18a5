"""Two-round, six-card Leduc hold'em.

Deck 0..5 with rank ``card // 2`` (two suits per rank).  Both players ante 1
and receive a private card.  Betting actions are 0 = fold (legal only when
facing a raise), 1 = check/call, 2 = raise; at most two raises per round,
player 0 opens both rounds.  Raises are worth 2 chips in round one; if the
round ends without a fold a public card is revealed and round two plays the
same way with raises worth 4.  Showdown: pairing the public card wins,
otherwise the higher rank; equal ranks split the pot.

Keys look like ``b"p0|c4|r1:121|b2|r2:1"``: own card, round-one actions, board
card (``b-`` before the reveal), round-two actions.  Counting every chance,
decision and terminal history, this tree has exactly 9,457 nodes.
"""

from __future__ import annotations

from psrokit.extensive import CHANCE, ExtensiveGame, ExtensiveState

FOLD, CALL, RAISE = 0, 1, 2
_DECK = (0, 1, 2, 3, 4, 5)
_RAISE_SIZE = (2.0, 4.0)


def _round_status(acts) -> str:
    if acts and acts[-1] == FOLD:
        return "fold"
    if len(acts) >= 2 and acts[-1] == CALL:
        return "done"
    return "open"


def _legal_bets(acts) -> tuple[int, ...]:
    facing_raise = bool(acts) and acts[-1] == RAISE
    can_raise = acts.count(RAISE) < 2
    if facing_raise:
        return (FOLD, CALL, RAISE) if can_raise else (FOLD, CALL)
    return (CALL, RAISE)


def _round_bets(acts, size) -> list[float]:
    bets = [0.0, 0.0]
    level = 0.0
    for pos, action in enumerate(acts):
        if action == CALL:
            bets[pos % 2] = level
        elif action == RAISE:
            level += size
            bets[pos % 2] = level
    return bets


class LeducPoker(ExtensiveGame):
    name = "leduc_poker"
    max_depth = 11  # two deals, up to four actions per round, one board card

    def initial_state(self):
        return _LeducState(())

    def utility_range(self):
        # ante plus two raises per round fully called
        return (-13.0, 13.0)


class _LeducState(ExtensiveState):
    __slots__ = ("history", "_cards", "_round1", "_board", "_round2", "_phase")

    def __init__(self, history):
        self.history = history
        self._parse()

    def _parse(self):
        h = self.history
        idx = 0
        cards = []
        while len(cards) < 2:
            if idx == len(h):
                self._finish(cards, (), None, (), "deal")
                return
            cards.append(h[idx])
            idx += 1
        round1 = []
        while _round_status(round1) == "open":
            if idx == len(h):
                self._finish(cards, round1, None, (), "round1")
                return
            round1.append(h[idx])
            idx += 1
        if _round_status(round1) == "fold":
            self._finish(cards, round1, None, (), "folded")
            return
        if idx == len(h):
            self._finish(cards, round1, None, (), "board")
            return
        board = h[idx]
        idx += 1
        round2 = []
        while _round_status(round2) == "open":
            if idx == len(h):
                self._finish(cards, round1, board, round2, "round2")
                return
            round2.append(h[idx])
            idx += 1
        self._finish(cards, round1, board, round2,
                     "folded" if _round_status(round2) == "fold" else "showdown")

    def _finish(self, cards, round1, board, round2, phase):
        self._cards = tuple(cards)
        self._round1 = tuple(round1)
        self._board = board
        self._round2 = tuple(round2)
        self._phase = phase

    def is_terminal(self):
        return self._phase in ("folded", "showdown")

    def acting_player(self):
        if self._phase in ("deal", "board"):
            return CHANCE
        if self._phase == "round1":
            return len(self._round1) % 2
        return len(self._round2) % 2

    def legal_actions(self):
        if self._phase == "round1":
            return _legal_bets(self._round1)
        if self._phase == "round2":
            return _legal_bets(self._round2)
        return tuple(card for card, _ in self.chance_outcomes())

    def chance_outcomes(self):
        if self._phase not in ("deal", "board"):
            raise ValueError("not a chance node")
        used = set(self._cards)
        if self._board is not None:
            used.add(self._board)
        remaining = tuple(c for c in _DECK if c not in used)
        return tuple((c, 1.0 / len(remaining)) for c in remaining)

    def infoset_key(self):
        player = self.acting_player()
        board = "-" if self._board is None else str(self._board)
        r1 = "".join(map(str, self._round1))
        r2 = "".join(map(str, self._round2))
        return f"p{player}|c{self._cards[player]}|r1:{r1}|b{board}|r2:{r2}".encode()

    def _contributions(self):
        bets1 = _round_bets(self._round1, _RAISE_SIZE[0])
        bets2 = _round_bets(self._round2, _RAISE_SIZE[1])
        return [1.0 + bets1[0] + bets2[0], 1.0 + bets1[1] + bets2[1]]

    def returns(self):
        if self._phase == "folded":
            acts = self._round2 if self._round2 else self._round1
            folder = (len(acts) - 1) % 2
            pot = self._contributions()[folder]
            return (pot, -pot) if folder == 1 else (-pot, pot)
        if self._phase != "showdown":
            raise ValueError("returns undefined before terminal")
        rank0, rank1 = self._cards[0] // 2, self._cards[1] // 2
        board_rank = self._board // 2
        if rank0 == board_rank:
            winner = 0
        elif rank1 == board_rank:
            winner = 1
        elif rank0 != rank1:
            winner = 0 if rank0 > rank1 else 1
        else:
            return (0.0, 0.0)
        pot = self._contributions()[1 - winner]
        return (pot, -pot) if winner == 0 else (-pot, pot)

    def child(self, action):
        return _LeducState(self.history + (action,))

"""State-walker contract for finite two-player zero-sum extensive-form games.

Concrete games implement `ExtensiveGame` and `ExtensiveState`; best responses,
evaluation and training loops only ever touch this interface.  Information-set
keys are canonical printable byte strings built from the acting player's own
observation and action history; each game documents its encoding.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass

import numpy as np

from psrokit.errors import GameValidationError
from psrokit.strategies import BehaviorPolicy, behavior_components

CHANCE = -1


class ExtensiveGame(abc.ABC):
    """Factory for game states plus game-level metadata."""

    name = "game"
    num_players = 2

    #: hard upper bound on the number of actions in any playout
    max_depth: int

    @abc.abstractmethod
    def initial_state(self) -> "ExtensiveState":
        ...

    @abc.abstractmethod
    def utility_range(self) -> tuple[float, float]:
        """Bounds on either player's terminal utility."""


class ExtensiveState(abc.ABC):
    """One history of the game tree.

    ``history`` is the tuple of actions taken from the root, chance included;
    it identifies the state uniquely.  ``child`` never mutates the parent.
    """

    history: tuple[int, ...]

    @abc.abstractmethod
    def is_terminal(self) -> bool:
        ...

    @abc.abstractmethod
    def acting_player(self) -> int:
        """0, 1, or CHANCE; undefined at terminal states."""

    @abc.abstractmethod
    def legal_actions(self) -> tuple[int, ...]:
        ...

    @abc.abstractmethod
    def infoset_key(self) -> bytes:
        """Canonical key of the acting player's information set."""

    @abc.abstractmethod
    def chance_outcomes(self) -> tuple[tuple[int, float], ...]:
        """(action, probability) pairs; only valid at chance nodes."""

    @abc.abstractmethod
    def returns(self) -> tuple[float, float]:
        """Per-player terminal utilities; only valid at terminal states."""

    @abc.abstractmethod
    def child(self, action: int) -> "ExtensiveState":
        ...


@dataclass
class ValidationReport:
    """Tree census produced by a full validator walk."""

    num_histories: int
    num_terminals: int
    num_chance_nodes: int
    infosets_per_player: tuple[int, int]
    max_depth_seen: int


def validate_game(game: ExtensiveGame) -> ValidationReport:
    """Walk the whole tree and check the state contract.

    Verifies zero-sum terminals, normalized chance distributions, the declared
    depth bound, and perfect recall: all histories sharing an information-set
    key must agree on the acting player, the legal actions, and the acting
    player's own past (infoset key, action) sequence.  Raises
    GameValidationError on the first violation; returns tree counts otherwise.
    """
    seen: dict[bytes, tuple[int, tuple[int, ...], tuple]] = {}
    num_histories = 0
    num_terminals = 0
    num_chance = 0
    max_depth_seen = 0
    # stack entries carry each player's own (key, action) path so far
    stack = [(game.initial_state(), ((), ()))]
    while stack:
        state, own_paths = stack.pop()
        num_histories += 1
        depth = len(state.history)
        max_depth_seen = max(max_depth_seen, depth)
        if depth > game.max_depth:
            raise GameValidationError(
                f"{game.name}: history {state.history} exceeds declared max_depth {game.max_depth}"
            )
        if state.is_terminal():
            num_terminals += 1
            r0, r1 = state.returns()
            if abs(r0 + r1) > 1e-9:
                raise GameValidationError(
                    f"{game.name}: terminal {state.history} returns {(r0, r1)} are not zero-sum"
                )
            continue
        player = state.acting_player()
        if player == CHANCE:
            num_chance += 1
            outcomes = state.chance_outcomes()
            if not outcomes:
                raise GameValidationError(f"{game.name}: chance node {state.history} has no outcomes")
            total = 0.0
            acts = set()
            for action, prob in outcomes:
                if prob < 0:
                    raise GameValidationError(
                        f"{game.name}: negative chance probability at {state.history}"
                    )
                if action in acts:
                    raise GameValidationError(
                        f"{game.name}: duplicate chance action {action} at {state.history}"
                    )
                acts.add(action)
                total += prob
            if abs(total - 1.0) > 1e-12:
                raise GameValidationError(
                    f"{game.name}: chance probabilities at {state.history} sum to {total}"
                )
            for action, _ in outcomes:
                stack.append((state.child(action), own_paths))
            continue
        if player not in (0, 1):
            raise GameValidationError(f"{game.name}: invalid acting player {player} at {state.history}")
        actions = tuple(state.legal_actions())
        if not actions:
            raise GameValidationError(f"{game.name}: no legal actions at {state.history}")
        key = state.infoset_key()
        record = (player, actions, own_paths[player])
        prior = seen.get(key)
        if prior is None:
            seen[key] = record
        elif prior != record:
            raise GameValidationError(
                f"{game.name}: information set {key!r} is inconsistent across histories "
                "(player, legal actions, or the player's own past differ)"
            )
        for action in actions:
            extended = list(own_paths)
            extended[player] = own_paths[player] + ((key, action),)
            stack.append((state.child(action), tuple(extended)))
    per_player = (
        sum(1 for player, _, _ in seen.values() if player == 0),
        sum(1 for player, _, _ in seen.values() if player == 1),
    )
    return ValidationReport(num_histories, num_terminals, num_chance, per_player, max_depth_seen)


def enumerate_infosets(game: ExtensiveGame, player: int) -> dict[bytes, tuple[int, ...]]:
    """Map each of the player's information-set keys to its legal actions.

    Keys appear in depth-first first-visit order (insertion order of the dict).
    """
    out: dict[bytes, tuple[int, ...]] = {}

    def visit(state):
        if state.is_terminal():
            return
        if state.acting_player() == CHANCE:
            for action, _ in state.chance_outcomes():
                visit(state.child(action))
            return
        if state.acting_player() == player:
            key = state.infoset_key()
            if key not in out:
                out[key] = tuple(state.legal_actions())
        for action in state.legal_actions():
            visit(state.child(action))

    visit(game.initial_state())
    return out


def realization_reach(game: ExtensiveGame, strategy, player: int) -> dict[tuple, float]:
    """Probability contribution of one player's own choices, per history.

    Chance and the other player contribute nothing; at the root the value is
    1.  For a mixture the contributions are mixture-weighted:
    sum_c w_c * prod(component c's probabilities at the player's own nodes).
    """
    weights, components = behavior_components(strategy)
    reach: dict[tuple, float] = {}

    def visit(state, vec):
        reach[state.history] = float(vec.sum())
        if state.is_terminal():
            return
        if state.acting_player() == CHANCE:
            for action, _ in state.chance_outcomes():
                visit(state.child(action), vec)
        elif state.acting_player() == player:
            key = state.infoset_key()
            actions = state.legal_actions()
            probs = np.stack([comp.probs(key, len(actions)) for comp in components])
            for col, action in enumerate(actions):
                visit(state.child(action), vec * probs[:, col])
        else:
            for action in state.legal_actions():
                visit(state.child(action), vec)

    visit(game.initial_state(), weights.astype(float).copy())
    return reach


def collapse_mixture_to_behavior(game: ExtensiveGame, mixture, player: int) -> BehaviorPolicy:
    """Outcome-equivalent single behavior policy for a policy mixture.

    At each of the player's information sets the action probabilities are the
    components' probabilities weighted by mixture weight times that
    component's own realization reach of the information set.  Unreachable
    information sets (total reach 0) fall back to uniform.  Averaging the
    tables directly would not be outcome-equivalent; reach-weighting is.
    """
    weights, components = behavior_components(mixture)
    table: dict[bytes, np.ndarray] = {}

    def visit(state, vec):
        if state.is_terminal():
            return
        if state.acting_player() == CHANCE:
            # chance does not change the player's own reach; one branch is
            # enough to see every information set only when chance is
            # degenerate, so walk them all
            for action, _ in state.chance_outcomes():
                visit(state.child(action), vec)
            return
        actions = state.legal_actions()
        if state.acting_player() == player:
            key = state.infoset_key()
            probs = np.stack([comp.probs(key, len(actions)) for comp in components])
            if key not in table:
                denom = float(vec.sum())
                if denom > 0.0:
                    table[key] = (vec @ probs) / denom
                else:
                    table[key] = np.full(len(actions), 1.0 / len(actions))
            for col, action in enumerate(actions):
                visit(state.child(action), vec * probs[:, col])
        else:
            for action in actions:
                visit(state.child(action), vec)

    visit(game.initial_state(), weights.astype(float).copy())
    policy = BehaviorPolicy(default_uniform=True)
    policy.table = table
    return policy

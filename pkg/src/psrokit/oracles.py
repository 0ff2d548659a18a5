"""Best-response operators: exact oracles for matrix and extensive-form games,
a smoothed matrix-game learner, and tabular Q-learning."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from psrokit.extensive import CHANCE, ExtensiveGame
from psrokit.normal_form import NormalFormGame, _prob_vector
from psrokit.strategies import (
    BehaviorPolicy,
    CheckpointMixture,
    MixedStrategy,
    PureStrategy,
    behavior_components,
    effective_mixed_vector,
)


def _opponent_vector(opponent, num_pure: int) -> np.ndarray:
    if isinstance(opponent, (PureStrategy, MixedStrategy, CheckpointMixture)):
        return effective_mixed_vector(opponent, num_pure)
    return _prob_vector(opponent)


def exact_br_nfg(game: NormalFormGame, opponent, player: int) -> tuple[int, float]:
    """Best pure response and its value against a fixed opponent strategy.

    The opponent may be a probability vector or any matrix-game strategy
    object.  Ties break toward the lowest index.
    """
    opp = _opponent_vector(opponent, game.shape[1] if player == 0 else game.shape[0])
    if player == 0:
        if opp.shape != (game.shape[1],):
            raise ValueError("opponent vector does not match the number of columns")
        values = game.row_payoffs @ opp
    elif player == 1:
        if opp.shape != (game.shape[0],):
            raise ValueError("opponent vector does not match the number of rows")
        values = -(game.row_payoffs.T @ opp)
    else:
        raise ValueError(f"player must be 0 or 1, got {player}")
    best = int(np.argmax(values))
    return best, float(values[best])


@dataclass
class SmoothedLearner:
    """Mixed strategy updated by damped steps toward the current best response.

    Emulates gradual best-response training in matrix games; every step is a
    convex combination, so the iterate stays on the simplex.
    """

    current: np.ndarray
    lam: float

    @classmethod
    def uniform(cls, num_actions: int, lam: float) -> "SmoothedLearner":
        if not 0.0 <= lam <= 1.0:
            raise ValueError("step size must lie in [0, 1]")
        return cls(np.full(num_actions, 1.0 / num_actions), lam)


def smoothed_br_step(learner: SmoothedLearner, game: NormalFormGame, opponent, player: int) -> SmoothedLearner:
    """One step (1 - lam) * current + lam * one_hot(best response to opponent)."""
    best, _ = exact_br_nfg(game, opponent, player)
    nxt = (1.0 - learner.lam) * learner.current
    nxt[best] += learner.lam
    return SmoothedLearner(nxt, learner.lam)


def exact_br_efg(game: ExtensiveGame, opponent, opponent_player: int):
    """Exact best response to a fixed opponent via one full tree pass.

    ``opponent`` may be a single behavior policy or a weighted mixture; the
    mixture's opponent reach is carried per component, which keeps the
    opponent's future behavior correctly correlated with its own past.  Ties
    break toward the lowest action index.

    Returns:
      (policy, value): a deterministic BehaviorPolicy covering every one of
      the responder's information sets, and the responder's exact expected
      value when playing it against ``opponent``.
    """
    if opponent_player not in (0, 1):
        raise ValueError(f"opponent_player must be 0 or 1, got {opponent_player}")
    weights, components = behavior_components(opponent)
    responder = 1 - opponent_player

    infosets: dict[bytes, list] = {}
    opp_vectors: dict[tuple, np.ndarray] = {}
    prob_cache: dict[bytes, np.ndarray] = {}

    def opponent_probs(key, num_actions):
        mat = prob_cache.get(key)
        if mat is None:
            mat = np.stack([comp.probs(key, num_actions) for comp in components])
            prob_cache[key] = mat
        return mat

    def enumerate_tree(state, vec, chance_reach):
        if state.is_terminal():
            return
        player = state.acting_player()
        if player == CHANCE:
            for action, prob in state.chance_outcomes():
                enumerate_tree(state.child(action), vec, chance_reach * prob)
        elif player == responder:
            key = state.infoset_key()
            infosets.setdefault(key, []).append((state, chance_reach * float(vec.sum())))
            for action in state.legal_actions():
                enumerate_tree(state.child(action), vec, chance_reach)
        else:
            key = state.infoset_key()
            actions = state.legal_actions()
            mat = opponent_probs(key, len(actions))
            opp_vectors[state.history] = vec
            for col, action in enumerate(actions):
                child_vec = vec * mat[:, col]
                if child_vec.any():
                    enumerate_tree(state.child(action), child_vec, chance_reach)

    enumerate_tree(game.initial_state(), weights.astype(float).copy(), 1.0)

    values: dict[tuple, float] = {}
    chosen: dict[bytes, int] = {}

    def value(state):
        cached = values.get(state.history)
        if cached is not None:
            return cached
        if state.is_terminal():
            out = state.returns()[responder]
        else:
            player = state.acting_player()
            if player == CHANCE:
                out = sum(p * value(state.child(a)) for a, p in state.chance_outcomes())
            elif player == responder:
                out = value(state.child(best_action(state.infoset_key())))
            else:
                vec = opp_vectors[state.history]
                total = float(vec.sum())
                if total <= 0.0:
                    out = 0.0
                else:
                    mat = opponent_probs(state.infoset_key(), len(state.legal_actions()))
                    out = 0.0
                    for col, action in enumerate(state.legal_actions()):
                        mass = float(vec @ mat[:, col])
                        if mass > 0.0:
                            out += (mass / total) * value(state.child(action))
        values[state.history] = out
        return out

    def best_action(key):
        action = chosen.get(key)
        if action is not None:
            return action
        entries = infosets[key]
        actions = entries[0][0].legal_actions()
        totals = np.zeros(len(actions))
        for state, reach in entries:
            if reach == 0.0:
                continue
            for col, act in enumerate(actions):
                totals[col] += reach * value(state.child(act))
        action = actions[int(np.argmax(totals))]
        chosen[key] = action
        return action

    br_value = value(game.initial_state())
    policy = BehaviorPolicy(default_uniform=True)
    for key, entries in infosets.items():
        actions = entries[0][0].legal_actions()
        vec = np.zeros(len(actions))
        vec[actions.index(best_action(key))] = 1.0
        policy.table[key] = vec
    return policy, float(br_value)


class QAgent:
    """Tabular one-step Q-learner with constant exploration.

    Values are stored per information set, indexed by legal-action position,
    and start at zero; greedy extraction breaks ties toward the lowest index.
    Updates are undiscounted.
    """

    def __init__(self, learning_rate: float = 0.025, epsilon: float = 0.2):
        if learning_rate <= 0.0:
            raise ValueError("learning rate must be positive")
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")
        self.learning_rate = learning_rate
        self.epsilon = epsilon
        self.q: dict[bytes, np.ndarray] = {}

    def values(self, key: bytes, num_actions: int) -> np.ndarray:
        arr = self.q.get(key)
        if arr is None:
            arr = np.zeros(num_actions)
            self.q[key] = arr
        return arr

    def greedy_index(self, key: bytes, num_actions: int) -> int:
        return int(np.argmax(self.values(key, num_actions)))

    def update(self, key: bytes, num_actions: int, index: int, target: float) -> None:
        arr = self.values(key, num_actions)
        arr[index] += self.learning_rate * (target - arr[index])

    def policy_view(self, epsilon: float | None = None) -> "EpsilonGreedyView":
        return EpsilonGreedyView(self, self.epsilon if epsilon is None else epsilon)

    def greedy_policy(self) -> BehaviorPolicy:
        """Frozen deterministic snapshot of the current greedy choices."""
        policy = BehaviorPolicy(default_uniform=True)
        for key, arr in self.q.items():
            vec = np.zeros(arr.size)
            vec[int(np.argmax(arr))] = 1.0
            policy.table[key] = vec
        return policy


class EpsilonGreedyView:
    """Policy-like live view of a QAgent: epsilon-uniform around the greedy pick."""

    __slots__ = ("agent", "epsilon")

    def __init__(self, agent: QAgent, epsilon: float):
        self.agent = agent
        self.epsilon = epsilon

    def probs(self, key: bytes, num_actions: int) -> np.ndarray:
        vec = np.full(num_actions, self.epsilon / num_actions)
        vec[self.agent.greedy_index(key, num_actions)] += 1.0 - self.epsilon
        return vec


def sample_index(probs, rng) -> int:
    """Draw an index from a probability vector with one uniform variate."""
    r = rng.random()
    acc = 0.0
    last = len(probs) - 1
    for i, p in enumerate(probs):
        acc += p
        if r < acc or i == last:
            return i
    return last


def play_episode(game: ExtensiveGame, actors, rng):
    """Sample one playout; actors are policy-likes indexed by player.

    Returns (steps, returns) where steps[player] is the list of
    (infoset_key, num_actions, action_index) decisions that player made.
    """
    steps: tuple[list, list] = ([], [])
    state = game.initial_state()
    while not state.is_terminal():
        player = state.acting_player()
        if player == CHANCE:
            outcomes = state.chance_outcomes()
            pick = sample_index([p for _, p in outcomes], rng)
            state = state.child(outcomes[pick][0])
            continue
        key = state.infoset_key()
        actions = state.legal_actions()
        probs = actors[player].probs(key, len(actions))
        index = sample_index(probs, rng)
        steps[player].append((key, len(actions), index))
        state = state.child(actions[index])
    return steps, state.returns()


def _apply_q_updates(agent: QAgent, steps, final_reward: float) -> None:
    # one-step targets in play order: intermediate rewards are zero, the last
    # step bootstraps on the terminal reward itself
    for t, (key, num_actions, index) in enumerate(steps):
        if t + 1 < len(steps):
            nxt_key, nxt_n, _ = steps[t + 1]
            target = float(np.max(agent.values(nxt_key, nxt_n)))
        else:
            target = final_reward
        agent.update(key, num_actions, index, target)


def q_learning_episode(game, br_agent, br_player, opponent_sampler, rng, nu_agent=None):
    """Play one training episode and apply one-step Q updates.

    ``opponent_sampler(rng)`` draws the opposing side's policy for this
    episode (e.g. a population arm); ``br_agent`` plays epsilon-greedy as
    ``br_player`` and learns from its own transitions.  When ``nu_agent`` is
    given it learns off-policy from the opponent side's transitions of the
    same episode, whatever policy generated them.
    """
    opponent_policy = opponent_sampler(rng)
    actors = [None, None]
    actors[br_player] = br_agent.policy_view()
    actors[1 - br_player] = opponent_policy
    steps, returns = play_episode(game, actors, rng)
    _apply_q_updates(br_agent, steps[br_player], returns[br_player])
    if nu_agent is not None:
        _apply_q_updates(nu_agent, steps[1 - br_player], returns[1 - br_player])
    return returns

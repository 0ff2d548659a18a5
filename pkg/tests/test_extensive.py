import numpy as np
import pytest
from helpers import random_policy, tree_expected_value

from psrokit.errors import GameValidationError
from psrokit.evaluation import expected_value
from psrokit.extensive import (
    CHANCE,
    ExtensiveGame,
    ExtensiveState,
    collapse_mixture_to_behavior,
    enumerate_infosets,
    realization_reach,
    validate_game,
)
from psrokit.strategies import BehaviorPolicy, CheckpointMixture
from psrokit.zoo import KuhnPoker


class ScriptState(ExtensiveState):
    """State of a ScriptGame; the node spec drives every method."""

    def __init__(self, game, history):
        self.game = game
        self.history = history
        self.node = game.tree[history]

    def is_terminal(self):
        return self.node[0] == "terminal"

    def acting_player(self):
        return self.node[1] if self.node[0] == "player" else CHANCE

    def legal_actions(self):
        return self.node[3]

    def infoset_key(self):
        return self.node[2]

    def chance_outcomes(self):
        return self.node[1]

    def returns(self):
        return self.node[1]

    def child(self, action):
        return ScriptState(self.game, self.history + (action,))


class ScriptGame(ExtensiveGame):
    """Tiny game defined by a literal history -> node table.

    Node specs: ("terminal", (r0, r1)), ("player", who, key, actions),
    ("chance", ((action, prob), ...)).
    """

    def __init__(self, tree, max_depth=8, name="script"):
        self.tree = tree
        self.max_depth = max_depth
        self.name = name

    def initial_state(self):
        return ScriptState(self, ())

    def utility_range(self):
        values = [spec[1][0] for spec in self.tree.values() if spec[0] == "terminal"]
        return min(values), max(values)


def matching_pennies_tree():
    # player 1 moves without observing player 0's action: one key for both nodes
    tree = {
        (): ("player", 0, b"p0", (0, 1)),
        (0,): ("player", 1, b"p1", (0, 1)),
        (1,): ("player", 1, b"p1", (0, 1)),
    }
    for a in (0, 1):
        for b in (0, 1):
            value = 1.0 if a == b else -1.0
            tree[(a, b)] = ("terminal", (value, -value))
    return tree


class TestValidator:
    def test_counts_on_tiny_game(self):
        report = validate_game(ScriptGame(matching_pennies_tree()))
        assert report.num_histories == 7
        assert report.num_terminals == 4
        assert report.num_chance_nodes == 0
        assert report.infosets_per_player == (1, 1)
        assert report.max_depth_seen == 2

    def test_rejects_perfect_recall_violation(self):
        # player 0 forgets its own first move: same key after different actions
        tree = {
            (): ("player", 0, b"first", (0, 1)),
            (0,): ("player", 0, b"forgot", (0, 1)),
            (1,): ("player", 0, b"forgot", (0, 1)),
        }
        for h in [(0, 0), (0, 1), (1, 0), (1, 1)]:
            tree[h] = ("terminal", (1.0, -1.0))
        with pytest.raises(GameValidationError, match="inconsistent"):
            validate_game(ScriptGame(tree))

    def test_rejects_action_set_mismatch_within_infoset(self):
        tree = matching_pennies_tree()
        tree[(1,)] = ("player", 1, b"p1", (0, 1, 2))
        tree[(1, 2)] = ("terminal", (0.0, 0.0))
        with pytest.raises(GameValidationError, match="inconsistent"):
            validate_game(ScriptGame(tree))

    def test_rejects_non_zero_sum_terminal(self):
        tree = matching_pennies_tree()
        tree[(0, 0)] = ("terminal", (1.0, 0.0))
        with pytest.raises(GameValidationError, match="zero-sum"):
            validate_game(ScriptGame(tree))

    def test_rejects_unnormalized_chance(self):
        tree = {
            (): ("chance", ((0, 0.5), (1, 0.4))),
            (0,): ("terminal", (0.0, 0.0)),
            (1,): ("terminal", (0.0, 0.0)),
        }
        with pytest.raises(GameValidationError, match="sum to"):
            validate_game(ScriptGame(tree))

    def test_rejects_negative_chance_probability(self):
        tree = {
            (): ("chance", ((0, 1.5), (1, -0.5))),
            (0,): ("terminal", (0.0, 0.0)),
            (1,): ("terminal", (0.0, 0.0)),
        }
        with pytest.raises(GameValidationError, match="negative"):
            validate_game(ScriptGame(tree))

    def test_rejects_duplicate_chance_action(self):
        tree = {
            (): ("chance", ((0, 0.5), (0, 0.5))),
            (0,): ("terminal", (0.0, 0.0)),
        }
        with pytest.raises(GameValidationError, match="duplicate"):
            validate_game(ScriptGame(tree))

    def test_rejects_depth_overflow(self):
        with pytest.raises(GameValidationError, match="max_depth"):
            validate_game(ScriptGame(matching_pennies_tree(), max_depth=1))

    def test_rejects_empty_action_list(self):
        tree = {(): ("player", 0, b"stuck", ())}
        with pytest.raises(GameValidationError, match="no legal actions"):
            validate_game(ScriptGame(tree))

    def test_rejects_bad_player_id(self):
        tree = {(): ("player", 2, b"who", (0,)), (0,): ("terminal", (0.0, 0.0))}
        with pytest.raises(GameValidationError, match="invalid acting player"):
            validate_game(ScriptGame(tree))


class TestEnumerateInfosets:
    def test_tiny_game(self):
        game = ScriptGame(matching_pennies_tree())
        assert enumerate_infosets(game, 0) == {b"p0": (0, 1)}
        assert enumerate_infosets(game, 1) == {b"p1": (0, 1)}

    def test_kuhn_has_six_per_player(self):
        game = KuhnPoker()
        assert len(enumerate_infosets(game, 0)) == 6
        assert len(enumerate_infosets(game, 1)) == 6


class TestRealizationReach:
    def test_root_reach_is_one(self):
        game = ScriptGame(matching_pennies_tree())
        pol = BehaviorPolicy({b"p0": [0.3, 0.7], b"p1": [0.6, 0.4]})
        for player in (0, 1):
            assert realization_reach(game, pol, player)[()] == 1.0

    def test_own_actions_only(self):
        game = ScriptGame(matching_pennies_tree())
        pol0 = BehaviorPolicy({b"p0": [0.3, 0.7]})
        pol1 = BehaviorPolicy({b"p1": [0.6, 0.4]})
        reach0 = realization_reach(game, pol0, 0)
        reach1 = realization_reach(game, pol1, 1)
        assert reach0[(0,)] == pytest.approx(0.3)
        assert reach0[(0, 1)] == pytest.approx(0.3)  # opponent move does not count
        assert reach1[(0,)] == 1.0
        assert reach1[(0, 1)] == pytest.approx(0.4)

    def test_mixture_reach_is_weighted_sum(self):
        game = ScriptGame(matching_pennies_tree())
        always0 = BehaviorPolicy({b"p0": [1.0, 0.0]})
        always1 = BehaviorPolicy({b"p0": [0.0, 1.0]})
        mix = CheckpointMixture([0.25, 0.75], [always0, always1])
        reach = realization_reach(game, mix, 0)
        assert reach[(0,)] == pytest.approx(0.25)
        assert reach[(1,)] == pytest.approx(0.75)


class TestCollapseMixture:
    def test_identical_components_collapse_to_themselves(self):
        game = KuhnPoker()
        rng = np.random.default_rng(11)
        pol = random_policy(game, 0, rng)
        mix = CheckpointMixture([0.5, 0.5], [pol, pol.copy()])
        collapsed = collapse_mixture_to_behavior(game, mix, 0)
        for key, vec in pol.table.items():
            np.testing.assert_allclose(collapsed.probs(key, vec.size), vec, atol=1e-12)

    def test_one_step_game_collapse_is_weight_average(self):
        game = ScriptGame(matching_pennies_tree())
        a = BehaviorPolicy({b"p0": [1.0, 0.0]})
        b = BehaviorPolicy({b"p0": [0.0, 1.0]})
        collapsed = collapse_mixture_to_behavior(game, CheckpointMixture([0.2, 0.8], [a, b]), 0)
        np.testing.assert_allclose(collapsed.probs(b"p0", 2), [0.2, 0.8])

    @pytest.mark.parametrize("seed", range(5))
    def test_collapse_preserves_expected_value_on_kuhn(self, seed):
        game = KuhnPoker()
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 5))
        comps = [random_policy(game, 0, rng) for _ in range(n)]
        w = rng.random(n)
        w /= w.sum()
        mix = CheckpointMixture(w, comps)
        opp = random_policy(game, 1, rng)
        collapsed = collapse_mixture_to_behavior(game, mix, 0)
        mixture_ev = sum(
            wi * tree_expected_value(game, ci, opp) for wi, ci in zip(w, comps)
        )
        assert expected_value(game, mix, opp) == pytest.approx(mixture_ev, abs=1e-9)
        assert tree_expected_value(game, collapsed, opp) == pytest.approx(mixture_ev, abs=1e-9)

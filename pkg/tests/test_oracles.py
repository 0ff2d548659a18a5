import numpy as np
import pytest
from helpers import plan_best_response_value, random_policy, random_simplex, tree_expected_value
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from psrokit.extensive import collapse_mixture_to_behavior, enumerate_infosets
from psrokit.normal_form import NormalFormGame
from psrokit.oracles import (
    EpsilonGreedyView,
    QAgent,
    SmoothedLearner,
    exact_br_efg,
    exact_br_nfg,
    play_episode,
    q_learning_episode,
    sample_index,
    smoothed_br_step,
)
from psrokit.strategies import BehaviorPolicy, CheckpointMixture, MixedStrategy, PureStrategy
from psrokit.zoo import KuhnPoker, OneShotGame, RepeatedRPS, make_generalized_rps

RPS = make_generalized_rps(3)


class ConstantAction:
    """Policy-like that always plays one action index."""

    def __init__(self, index):
        self.index = index

    def probs(self, key, num_actions):
        vec = np.zeros(num_actions)
        vec[self.index] = 1.0
        return vec


class FixedMixture:
    """Policy-like playing the same mixed vector at every information set."""

    def __init__(self, probs):
        self.vec = np.asarray(probs, dtype=float)

    def probs(self, key, num_actions):
        return self.vec


class StubRng:
    def __init__(self, values):
        self.values = list(values)

    def random(self):
        return self.values.pop(0)


class TestExactBrNfg:
    def test_paper_beats_rock(self):
        assert exact_br_nfg(RPS, PureStrategy(0), 0) == (1, 1.0)

    def test_uniform_opponent_ties_break_low(self):
        best, value = exact_br_nfg(RPS, MixedStrategy([1 / 3, 1 / 3, 1 / 3]), 0)
        assert best == 0
        assert abs(value) < 1e-15

    def test_column_player_uses_negated_payoffs(self):
        best, value = exact_br_nfg(RPS, PureStrategy(0), 1)
        assert (best, value) == (1, 1.0)

    def test_matches_brute_force_on_random_games(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            game = NormalFormGame(rng.normal(size=(6, 6)))
            q = random_simplex(rng, 6)
            p = random_simplex(rng, 6)
            best0, value0 = exact_br_nfg(game, q, 0)
            assert value0 == pytest.approx(np.max(game.row_payoffs @ q), abs=1e-12)
            assert best0 == int(np.argmax(game.row_payoffs @ q))
            best1, value1 = exact_br_nfg(game, p, 1)
            assert value1 == pytest.approx(np.max(-(p @ game.row_payoffs)), abs=1e-12)
            assert best1 == int(np.argmax(-(p @ game.row_payoffs)))

    def test_shape_and_player_validation(self):
        with pytest.raises(ValueError, match="columns"):
            exact_br_nfg(RPS, [0.5, 0.5], 0)
        with pytest.raises(ValueError, match="player"):
            exact_br_nfg(RPS, [1 / 3, 1 / 3, 1 / 3], 2)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**9))
    def test_response_dominates_every_pure_alternative(self, seed):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, 8))
        game = NormalFormGame(rng.normal(size=(k, k)))
        opp = random_simplex(rng, k)
        _, value = exact_br_nfg(game, opp, 0)
        for i in range(k):
            assert value >= float(game.row_payoffs[i] @ opp) - 1e-12


class TestSmoothedLearner:
    def test_full_step_jumps_to_best_response(self):
        learner = SmoothedLearner.uniform(3, 1.0)
        stepped = smoothed_br_step(learner, RPS, PureStrategy(0), 0)
        np.testing.assert_array_equal(stepped.current, [0, 1, 0])

    def test_zero_step_keeps_iterate(self):
        learner = SmoothedLearner.uniform(3, 0.0)
        stepped = smoothed_br_step(learner, RPS, PureStrategy(0), 0)
        np.testing.assert_array_equal(stepped.current, learner.current)

    def test_hand_computed_step(self):
        learner = SmoothedLearner.uniform(3, 0.1)
        stepped = smoothed_br_step(learner, RPS, PureStrategy(0), 0)
        np.testing.assert_allclose(stepped.current, [0.3, 0.4, 0.3], atol=1e-15)

    def test_rejects_step_size_outside_unit_interval(self):
        for lam in (-0.1, 1.5):
            with pytest.raises(ValueError):
                SmoothedLearner.uniform(3, lam)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**9), st.floats(0.0, 1.0))
    def test_iterates_stay_on_simplex(self, seed, lam):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(2, 7))
        game = NormalFormGame(rng.normal(size=(k, k)))
        learner = SmoothedLearner.uniform(k, lam)
        for _ in range(5):
            learner = smoothed_br_step(learner, game, random_simplex(rng, k), 0)
            assert learner.current.min() >= -1e-12
            assert learner.current.sum() == pytest.approx(1.0, abs=1e-9)


class TestExactBrEfg:
    @pytest.mark.parametrize("seed", range(5))
    def test_matches_plan_enumeration_on_kuhn(self, seed):
        game = KuhnPoker()
        rng = np.random.default_rng(seed)
        opp_player = seed % 2
        opp = random_policy(game, opp_player, rng)
        policy, value = exact_br_efg(game, opp, opp_player)
        assert value == pytest.approx(plan_best_response_value(game, opp, opp_player), abs=1e-9)
        # the returned policy actually achieves the reported value
        pols = (policy, opp) if opp_player == 1 else (opp, policy)
        achieved = tree_expected_value(game, *pols)
        if opp_player == 0:
            achieved = -achieved
        assert achieved == pytest.approx(value, abs=1e-12)

    def test_single_round_rps_counter(self):
        game = RepeatedRPS(1)
        policy, value = exact_br_efg(game, ConstantAction(0), 1)
        assert value == pytest.approx(1.0)
        key, actions = next(iter(enumerate_infosets(game, 0).items()))
        np.testing.assert_array_equal(policy.probs(key, len(actions)), [0, 1, 0])

    def test_mixture_opponent_equals_collapsed_opponent(self):
        game = KuhnPoker()
        rng = np.random.default_rng(9)
        comps = [random_policy(game, 1, rng) for _ in range(3)]
        w = random_simplex(rng, 3)
        mix = CheckpointMixture(w, comps)
        _, v_mix = exact_br_efg(game, mix, 1)
        collapsed = collapse_mixture_to_behavior(game, mix, 1)
        _, v_col = exact_br_efg(game, collapsed, 1)
        assert v_mix == pytest.approx(v_col, abs=1e-9)

    def test_one_shot_wrapper_agrees_with_matrix_oracle(self):
        rng = np.random.default_rng(4)
        base = NormalFormGame(rng.normal(size=(5, 5)))
        game = OneShotGame(base)
        q = random_simplex(rng, 5)
        opp = FixedMixture(q)
        policy, value = exact_br_efg(game, opp, 1)
        best, matrix_value = exact_br_nfg(base, q, 0)
        assert value == pytest.approx(matrix_value, abs=1e-12)
        key, actions = next(iter(enumerate_infosets(game, 0).items()))
        assert int(np.argmax(policy.probs(key, len(actions)))) == best

    def test_tie_breaks_toward_lowest_action(self):
        game = OneShotGame(RPS)
        policy, _ = exact_br_efg(game, FixedMixture(np.full(3, 1 / 3)), 1)
        key, actions = next(iter(enumerate_infosets(game, 0).items()))
        np.testing.assert_array_equal(policy.probs(key, len(actions)), [1, 0, 0])

    def test_rejects_bad_opponent_player(self):
        with pytest.raises(ValueError):
            exact_br_efg(KuhnPoker(), BehaviorPolicy(), 2)


class TestQAgent:
    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            QAgent(learning_rate=0.0)
        with pytest.raises(ValueError):
            QAgent(epsilon=1.5)

    def test_values_start_at_zero(self):
        agent = QAgent()
        np.testing.assert_array_equal(agent.values(b"s", 3), [0, 0, 0])

    def test_full_rate_update_overwrites(self):
        agent = QAgent(learning_rate=1.0)
        agent.update(b"s", 2, 1, 5.0)
        np.testing.assert_array_equal(agent.values(b"s", 2), [0, 5.0])

    def test_partial_update_moves_fraction_of_error(self):
        agent = QAgent(learning_rate=0.25)
        agent.update(b"s", 1, 0, 8.0)
        assert agent.values(b"s", 1)[0] == pytest.approx(2.0)

    def test_greedy_ties_break_low(self):
        agent = QAgent()
        assert agent.greedy_index(b"s", 4) == 0

    def test_epsilon_greedy_view_probs(self):
        agent = QAgent(epsilon=0.2)
        agent.update(b"s", 4, 2, 1.0)
        np.testing.assert_allclose(
            agent.policy_view().probs(b"s", 4), [0.05, 0.05, 0.85, 0.05]
        )

    def test_view_epsilon_override(self):
        agent = QAgent(epsilon=0.2)
        view = agent.policy_view(epsilon=0.0)
        assert isinstance(view, EpsilonGreedyView)
        np.testing.assert_array_equal(view.probs(b"s", 3), [1, 0, 0])

    def test_greedy_policy_snapshot_is_frozen(self):
        agent = QAgent(learning_rate=1.0)
        agent.update(b"s", 2, 1, 1.0)
        frozen = agent.greedy_policy()
        agent.update(b"s", 2, 0, 9.0)
        np.testing.assert_array_equal(frozen.probs(b"s", 2), [0, 1])


class TestEpisodes:
    def test_sample_index_walks_cumulative_mass(self):
        probs = [0.2, 0.3, 0.5]
        assert sample_index(probs, StubRng([0.19])) == 0
        assert sample_index(probs, StubRng([0.2])) == 1
        assert sample_index(probs, StubRng([0.49])) == 1
        assert sample_index(probs, StubRng([0.999])) == 2

    def test_sample_index_rounding_guard(self):
        # mass that sums just under one still yields a legal index
        assert sample_index([0.4999, 0.4999], StubRng([0.99999])) == 1

    def test_play_episode_records_both_sides(self):
        game = RepeatedRPS(1)
        steps, returns = play_episode(
            game, [ConstantAction(1), ConstantAction(0)], np.random.default_rng(0)
        )
        assert returns == (1.0, -1.0)  # paper beats rock
        assert len(steps[0]) == 1 and len(steps[1]) == 1
        assert steps[0][0][2] == 1 and steps[1][0][2] == 0

    def test_play_episode_deterministic_under_seed(self):
        game = KuhnPoker()
        actors = [FixedMixture([0.5, 0.5]), FixedMixture([0.5, 0.5])]
        a = play_episode(game, actors, np.random.default_rng(42))
        b = play_episode(game, actors, np.random.default_rng(42))
        assert a == b

    def test_episode_updates_learner_and_off_policy_agent(self):
        game = RepeatedRPS(1)
        br = QAgent(learning_rate=1.0, epsilon=0.0)  # greedy zero-init picks rock
        nu = QAgent(learning_rate=1.0)
        returns = q_learning_episode(
            game, br, 0, lambda rng: ConstantAction(2), np.random.default_rng(0), nu_agent=nu
        )
        assert returns == (1.0, -1.0)  # rock beats scissors
        (br_values,) = br.q.values()
        np.testing.assert_array_equal(br_values, [1.0, 0, 0])
        # nu learned from the scissors side of the very same playout
        (nu_values,) = nu.q.values()
        np.testing.assert_array_equal(nu_values, [0, 0, -1.0])

    def test_backups_propagate_one_step_per_episode(self):
        game = RepeatedRPS(2)
        br = QAgent(learning_rate=1.0, epsilon=0.0)
        sampler = lambda rng: ConstantAction(2)
        q_learning_episode(game, br, 0, sampler, np.random.default_rng(0))
        # terminal reward reached the last decision only
        assert {tuple(v) for v in br.q.values()} == {(0.0, 0.0, 0.0), (2.0, 0.0, 0.0)}
        q_learning_episode(game, br, 0, sampler, np.random.default_rng(1))
        assert {tuple(v) for v in br.q.values()} == {(2.0, 0.0, 0.0)}

    def test_learning_curve_trends_toward_exact_best_response(self):
        game = RepeatedRPS(1)
        opponent = FixedMixture([0.6, 0.3, 0.1])
        _, target = exact_br_efg(game, opponent, 1)
        assert target == pytest.approx(0.5)  # paper against the biased mixture
        key = next(iter(enumerate_infosets(game, 0)))
        # track the learned value of the optimal arm at log-spaced checkpoints;
        # greedy payoff saturates too fast to show a trend
        marks = [0, 20, 50, 100, 200, 400, 800, 1600, 3200]
        curve = np.zeros(len(marks))
        greedy_final = 0.0
        seeds = range(6)
        for seed in seeds:
            rng = np.random.default_rng(seed)
            agent = QAgent()
            done = 0
            for i, mark in enumerate(marks):
                while done < mark:
                    q_learning_episode(game, agent, 0, lambda r: opponent, rng)
                    done += 1
                curve[i] += agent.values(key, 3)[1]
            greedy_final += tree_expected_value(game, agent.greedy_policy(), opponent)
        curve /= len(seeds)
        greedy_final /= len(seeds)
        rho = stats.spearmanr(np.arange(curve.size), curve).statistic
        assert rho > 0.8
        assert curve[-1] == pytest.approx(target, abs=0.1)
        assert greedy_final == pytest.approx(target, abs=0.05)

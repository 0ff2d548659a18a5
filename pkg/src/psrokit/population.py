"""Outer-loop population training: grow per-player strategy pools by repeated
best-response computation against restricted distributions, with either an
exact restricted-game solver or a no-regret learner choosing the distribution."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from psrokit.evaluation import arm_payoffs, empirical_matrix, exploitability, mixture_over
from psrokit.extensive import enumerate_infosets
from psrokit.metasolvers import (
    Exp3State,
    MWUState,
    exact_nash_zero_sum,
    exp3_sample,
    exp3_update,
    fictitious_play,
    mwu_update,
)
from psrokit.normal_form import NormalFormGame
from psrokit.oracles import (
    QAgent,
    SmoothedLearner,
    exact_br_efg,
    exact_br_nfg,
    q_learning_episode,
    sample_index,
    smoothed_br_step,
)
from psrokit.strategies import (
    BehaviorPolicy,
    CheckpointMixture,
    MixedStrategy,
    PureStrategy,
    RestrictedDistribution,
    effective_mixed_vector,
)

ORACLE_KINDS = ("exact", "smoothed", "q_learning")
RESTRICTED_SOLVERS = ("lp", "fictitious_play")
NO_REGRET_KINDS = ("mwu", "exp3")
ALGORITHMS = ("psro", "apsro", "sp_psro", "sp_psro_last_iterate", "sp_psro_not_anytime")
PROVENANCE_TAGS = ("initial", "beta", "nu_bar", "nu_last")


@dataclass(frozen=True)
class OracleConfig:
    """Which best-response primitive the outer loop trains with."""

    kind: str = "exact"
    smoothing: float = 0.1  # step size of the damped matrix-game learner
    q_learning_rate: float = 0.025
    q_epsilon: float = 0.2

    def __post_init__(self):
        if self.kind not in ORACLE_KINDS:
            raise ValueError(f"oracle kind must be one of {ORACLE_KINDS}, got {self.kind!r}")
        if not 0.0 <= self.smoothing <= 1.0:
            raise ValueError("smoothing step must lie in [0, 1]")
        if self.q_learning_rate <= 0.0:
            raise ValueError("Q learning rate must be positive")
        if not 0.0 <= self.q_epsilon <= 1.0:
            raise ValueError("Q exploration epsilon must lie in [0, 1]")


@dataclass(frozen=True)
class MetasolverConfig:
    """How restricted distributions over the population are chosen."""

    restricted_solver: str = "lp"
    fp_iterations: int = 2000
    no_regret: str = "mwu"
    mwu_learning_rate: float = 0.1
    exp3_learning_rate: float = 1.0
    exp3_exploration: float = 0.1

    def __post_init__(self):
        if self.restricted_solver not in RESTRICTED_SOLVERS:
            raise ValueError(
                f"restricted solver must be one of {RESTRICTED_SOLVERS}, got {self.restricted_solver!r}"
            )
        if self.no_regret not in NO_REGRET_KINDS:
            raise ValueError(f"no-regret kind must be one of {NO_REGRET_KINDS}, got {self.no_regret!r}")
        if self.fp_iterations < 1:
            raise ValueError("fictitious play needs at least one iteration")


@dataclass(frozen=True)
class IterationSchedule:
    """Per-iteration training budgets.

    ``n`` outer no-regret steps, each preceded by ``m`` best-response update
    steps, drive the matrix-game and exact modes.  Tabular training instead
    interleaves ``episodes_per_iteration`` Q-learning episodes with
    ``exp3_updates_per_iteration`` bandit updates across ``batches`` batches.
    """

    n: int = 200
    m: int = 10
    batches: int = 600
    checkpoint_every: int = 1
    episodes_per_iteration: int = 799_800
    exp3_updates_per_iteration: int = 19_800
    switch_to_apsro_after: int | None = None

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValueError("n and m must be non-negative")
        if self.batches < 1:
            raise ValueError("need at least one batch")
        if self.checkpoint_every < 1:
            raise ValueError("checkpoint cadence must be at least 1")
        if self.episodes_per_iteration < 0 or self.exp3_updates_per_iteration < 0:
            raise ValueError("training budgets must be non-negative")
        if self.switch_to_apsro_after is not None and self.switch_to_apsro_after < 0:
            raise ValueError("switch point must be non-negative")


class Population:
    """Per-player append-only strategy pools with provenance tags."""

    def __init__(self):
        self._strategies: tuple[list, list] = ([], [])
        self._tags: tuple[list, list] = ([], [])

    def arms(self, player: int) -> tuple:
        return tuple(self._strategies[player])

    def tags(self, player: int) -> tuple:
        return tuple(self._tags[player])

    def append(self, player: int, strategy, tag: str) -> None:
        if tag not in PROVENANCE_TAGS:
            raise ValueError(f"unknown provenance tag {tag!r}")
        self._strategies[player].append(strategy)
        self._tags[player].append(tag)

    def size(self, player: int) -> int:
        return len(self._strategies[player])

    def __repr__(self):
        return f"Population(sizes=({self.size(0)}, {self.size(1)}))"


def initial_population(game) -> Population:
    """Seed each player's pool with the deterministic lowest-action strategy.

    A deterministic start leaves the full-game equilibrium outside the pool,
    so iteration curves begin at high exploitability rather than at an
    accidental solution.
    """
    pop = Population()
    if isinstance(game, NormalFormGame):
        pop.append(0, PureStrategy(0), "initial")
        pop.append(1, PureStrategy(0), "initial")
        return pop
    for player in (0, 1):
        table = {}
        for key, actions in enumerate_infosets(game, player).items():
            vec = np.zeros(len(actions))
            vec[0] = 1.0
            table[key] = vec
        pop.append(player, BehaviorPolicy(table), "initial")
    return pop


@dataclass
class IterationOutcome:
    """Result of one outer iteration: the profile to report plus its cost."""

    report: tuple
    episodes: int = 0
    br_steps: int = 0


def _restricted_nash(emp: NormalFormGame, meta: MetasolverConfig):
    if meta.restricted_solver == "lp":
        row, col, _ = exact_nash_zero_sum(emp)
    else:
        row, col, _ = fictitious_play(emp, meta.fp_iterations)
    return RestrictedDistribution(row.probs), RestrictedDistribution(col.probs)


def _payoff_operator(game: NormalFormGame, player: int) -> np.ndarray:
    # v_player(x, opп) = x @ M @ opp with M oriented for this player
    return game.row_payoffs if player == 0 else -game.row_payoffs.T


def _arm_matrix(game: NormalFormGame, player: int, arms) -> np.ndarray:
    return np.stack([effective_mixed_vector(a, game.shape[player]) for a in arms])


def _episode_actor(arm, rng):
    """Per-episode playable view of a population arm.

    Mixture arms commit to one component for the whole episode, which is the
    sampling semantics of a mixed strategy.
    """
    if isinstance(arm, CheckpointMixture):
        return arm.components[sample_index(arm.weights, rng)]
    return arm


def _split_counts(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + 1 if i < extra else base for i in range(parts)]


def psro_iteration(game, pop, oracle, meta, schedule, rng) -> IterationOutcome:
    """One double-oracle step: solve the restricted game, best-respond, grow.

    The reported profile is the restricted equilibrium over the population as
    it stood at the start of the iteration.
    """
    arms0, arms1 = pop.arms(0), pop.arms(1)
    emp = empirical_matrix(game, arms0, arms1)
    sigma0, sigma1 = _restricted_nash(emp, meta)
    report0 = mixture_over(game, 0, arms0, sigma0.probs)
    report1 = mixture_over(game, 1, arms1, sigma1.probs)
    episodes = 0
    steps = 0

    if isinstance(game, NormalFormGame):
        if oracle.kind == "exact":
            idx0, _ = exact_br_nfg(game, report1, player=0)
            idx1, _ = exact_br_nfg(game, report0, player=1)
            beta0, beta1 = PureStrategy(idx0), PureStrategy(idx1)
            steps += 2
        else:
            learner0 = SmoothedLearner.uniform(game.shape[0], oracle.smoothing)
            learner1 = SmoothedLearner.uniform(game.shape[1], oracle.smoothing)
            for _ in range(schedule.m):
                learner0 = smoothed_br_step(learner0, game, report1, player=0)
                learner1 = smoothed_br_step(learner1, game, report0, player=1)
                steps += 2
            beta0, beta1 = MixedStrategy(learner0.current), MixedStrategy(learner1.current)
    elif oracle.kind == "q_learning":
        beta0, ep0 = _train_q_response(game, 0, arms1, sigma1.probs, oracle, schedule, rng)
        beta1, ep1 = _train_q_response(game, 1, arms0, sigma0.probs, oracle, schedule, rng)
        episodes += ep0 + ep1
    else:
        beta0, _ = exact_br_efg(game, report1, opponent_player=1)
        beta1, _ = exact_br_efg(game, report0, opponent_player=0)
        steps += 2

    pop.append(0, beta0, "beta")
    pop.append(1, beta1, "beta")
    return IterationOutcome((report0, report1), episodes, steps)


def _train_q_response(game, player, opp_arms, opp_probs, oracle, schedule, rng):
    """Full-budget Q-learning against a fixed distribution over opponent arms."""
    agent = QAgent(oracle.q_learning_rate, oracle.q_epsilon)
    episodes = 0
    for _ in range(schedule.episodes_per_iteration):
        arm = opp_arms[sample_index(opp_probs, rng)]
        actor = _episode_actor(arm, rng)
        q_learning_episode(game, agent, player, lambda _rng: actor, rng)
        episodes += 1
    return agent.greedy_policy(), episodes


def apsro_iteration(game, pop, oracle, meta, schedule, rng) -> IterationOutcome:
    """One anytime step: per player, a no-regret distribution over that
    player's pool trains against the opponent's in-progress best response.

    Reports the time-average of the no-regret iterates for each player and
    appends each trained response to the opposite pool.
    """
    reports = [None, None]
    betas = [None, None]
    episodes = 0
    steps = 0

    for i in (0, 1):
        opp = 1 - i
        arms = pop.arms(i)
        if isinstance(game, NormalFormGame):
            V = _arm_matrix(game, i, arms)
            M = _payoff_operator(game, i)
            state = MWUState.uniform(len(arms), meta.mwu_learning_rate)
            learner = SmoothedLearner.uniform(game.shape[opp], oracle.smoothing)
            for _ in range(schedule.n):
                mix = state.distribution() @ V
                if oracle.kind == "exact":
                    if schedule.m > 0:
                        idx, _ = exact_br_nfg(game, mix, player=opp)
                        vec = np.zeros(game.shape[opp])
                        vec[idx] = 1.0
                        learner = SmoothedLearner(vec, learner.lam)
                        steps += 1
                else:
                    for _ in range(schedule.m):
                        learner = smoothed_br_step(learner, game, mix, player=opp)
                        steps += 1
                state = mwu_update(state, V @ (M @ learner.current))
            reports[i] = MixedStrategy(state.average() @ V)
            betas[opp] = MixedStrategy(learner.current)
        elif oracle.kind == "q_learning":
            state = Exp3State.uniform(
                len(arms), meta.exp3_learning_rate, meta.exp3_exploration, game.utility_range()
            )
            agent = QAgent(oracle.q_learning_rate, oracle.q_epsilon)
            ep_counts = _split_counts(schedule.episodes_per_iteration, schedule.batches)
            up_counts = _split_counts(schedule.exp3_updates_per_iteration, schedule.batches)
            for b in range(schedule.batches):
                for _ in range(ep_counts[b]):
                    actor = _episode_actor(arms[exp3_sample(state, rng)], rng)
                    q_learning_episode(game, agent, opp, lambda _rng: actor, rng)
                    episodes += 1
                for _ in range(up_counts[b]):
                    k = exp3_sample(state, rng)
                    actor = _episode_actor(arms[k], rng)
                    rets = q_learning_episode(game, agent, opp, lambda _rng: actor, rng)
                    state = exp3_update(state, k, rets[i])
                    episodes += 1
            reports[i] = mixture_over(game, i, arms, state.average())
            betas[opp] = agent.greedy_policy()
        else:
            state = MWUState.uniform(len(arms), meta.mwu_learning_rate)
            beta = BehaviorPolicy(default_uniform=True)
            for _ in range(schedule.n):
                if schedule.m > 0:
                    mix = mixture_over(game, i, arms, state.distribution())
                    beta, _ = exact_br_efg(game, mix, opponent_player=i)
                    steps += 1
                state = mwu_update(state, arm_payoffs(game, i, arms, beta))
            reports[i] = mixture_over(game, i, arms, state.average())
            betas[opp] = beta

    pop.append(0, betas[0], "beta")
    pop.append(1, betas[1], "beta")
    return IterationOutcome((reports[0], reports[1]), episodes, steps)


def sp_psro_iteration(game, pop, oracle, meta, schedule, rng) -> IterationOutcome:
    return _sp_psro_core(game, pop, oracle, meta, schedule, rng, last_iterate=False)


def sp_psro_last_iterate_iteration(game, pop, oracle, meta, schedule, rng) -> IterationOutcome:
    return _sp_psro_core(game, pop, oracle, meta, schedule, rng, last_iterate=True)


def _sp_psro_core(game, pop, oracle, meta, schedule, rng, last_iterate: bool) -> IterationOutcome:
    """Shared body of the self-play variants.

    Adds a live in-training arm to each player's restricted distribution; the
    new strategy chases the opponent response while the response chases the
    distribution.  Appends both the response and the new strategy (checkpoint
    average, or final iterate when ``last_iterate``).
    """
    reports = [None, None]
    betas = [None, None]
    news = [None, None]
    episodes = 0
    steps = 0

    for i in (0, 1):
        opp = 1 - i
        arms = pop.arms(i)
        K = len(arms)
        if isinstance(game, NormalFormGame):
            V = _arm_matrix(game, i, arms)
            M = _payoff_operator(game, i)
            nu = SmoothedLearner.uniform(game.shape[i], oracle.smoothing)
            learner = SmoothedLearner.uniform(game.shape[opp], oracle.smoothing)
            state = MWUState.uniform(K + 1, meta.mwu_learning_rate)
            ckpt_sum = np.zeros(game.shape[i])
            ckpt_count = 0
            inner = 0
            for _ in range(schedule.n):
                for _ in range(schedule.m):
                    dist = state.distribution()
                    mix = dist[:K] @ V + dist[K] * nu.current
                    if oracle.kind == "exact":
                        b_idx, _ = exact_br_nfg(game, mix, player=opp)
                        bvec = np.zeros(game.shape[opp])
                        bvec[b_idx] = 1.0
                        learner = SmoothedLearner(bvec, learner.lam)
                        n_idx, _ = exact_br_nfg(game, learner.current, player=i)
                        nvec = np.zeros(game.shape[i])
                        nvec[n_idx] = 1.0
                        nu = SmoothedLearner(nvec, nu.lam)
                    else:
                        learner = smoothed_br_step(learner, game, mix, player=opp)
                        nu = smoothed_br_step(nu, game, learner.current, player=i)
                    steps += 1
                    inner += 1
                    if inner % schedule.checkpoint_every == 0:
                        ckpt_sum += nu.current
                        ckpt_count += 1
                payoffs = np.empty(K + 1)
                opp_vec = M @ learner.current
                payoffs[:K] = V @ opp_vec
                payoffs[K] = nu.current @ opp_vec
                state = mwu_update(state, payoffs)
            if ckpt_count == 0:
                ckpt_sum = nu.current.copy()
                ckpt_count = 1
            nu_bar = MixedStrategy(ckpt_sum / ckpt_count)
            nu_final = MixedStrategy(nu.current)
            nu_repr = nu_final if last_iterate else nu_bar
            avg = state.average()
            reports[i] = MixedStrategy(avg[:K] @ V + avg[K] * nu_repr.probs)
            betas[opp] = MixedStrategy(learner.current)
            news[i] = nu_repr
        elif oracle.kind == "q_learning":
            state = Exp3State.uniform(
                K + 1, meta.exp3_learning_rate, meta.exp3_exploration, game.utility_range()
            )
            beta_agent = QAgent(oracle.q_learning_rate, oracle.q_epsilon)
            nu_agent = QAgent(oracle.q_learning_rate, oracle.q_epsilon)
            nu_live = nu_agent.policy_view()
            checkpoints: list[BehaviorPolicy] = []
            ep_counts = _split_counts(schedule.episodes_per_iteration, schedule.batches)
            up_counts = _split_counts(schedule.exp3_updates_per_iteration, schedule.batches)
            for b in range(schedule.batches):
                for _ in range(ep_counts[b]):
                    k = exp3_sample(state, rng)
                    actor = nu_live if k == K else _episode_actor(arms[k], rng)
                    q_learning_episode(game, beta_agent, opp, lambda _rng: actor, rng, nu_agent=nu_agent)
                    episodes += 1
                for _ in range(up_counts[b]):
                    k = exp3_sample(state, rng)
                    actor = nu_live if k == K else _episode_actor(arms[k], rng)
                    rets = q_learning_episode(game, beta_agent, opp, lambda _rng: actor, rng, nu_agent=nu_agent)
                    state = exp3_update(state, k, rets[i])
                    episodes += 1
                if (b + 1) % schedule.checkpoint_every == 0:
                    checkpoints.append(nu_agent.greedy_policy())
            if not checkpoints:
                checkpoints.append(nu_agent.greedy_policy())
            nu_bar = CheckpointMixture(np.full(len(checkpoints), 1.0 / len(checkpoints)), checkpoints)
            nu_final = nu_agent.greedy_policy()
            nu_repr = nu_final if last_iterate else nu_bar
            reports[i] = mixture_over(game, i, list(arms) + [nu_repr], state.average())
            betas[opp] = beta_agent.greedy_policy()
            news[i] = nu_repr
        else:
            state = MWUState.uniform(K + 1, meta.mwu_learning_rate)
            nu = BehaviorPolicy(default_uniform=True)
            beta = BehaviorPolicy(default_uniform=True)
            checkpoints = []
            inner = 0
            for _ in range(schedule.n):
                for _ in range(schedule.m):
                    dist = state.distribution()
                    mix = CheckpointMixture(dist, list(arms) + [nu])
                    beta, _ = exact_br_efg(game, mix, opponent_player=i)
                    nu, _ = exact_br_efg(game, beta, opponent_player=opp)
                    steps += 1
                    inner += 1
                    if inner % schedule.checkpoint_every == 0:
                        checkpoints.append(nu.copy())
                payoffs = arm_payoffs(game, i, list(arms) + [nu], beta)
                state = mwu_update(state, payoffs)
            if not checkpoints:
                checkpoints.append(nu.copy())
            nu_bar = CheckpointMixture(np.full(len(checkpoints), 1.0 / len(checkpoints)), checkpoints)
            nu_repr = nu.copy() if last_iterate else nu_bar
            reports[i] = mixture_over(game, i, list(arms) + [nu_repr], state.average())
            betas[opp] = beta
            news[i] = nu_repr

    tag = "nu_last" if last_iterate else "nu_bar"
    for player in (0, 1):
        pop.append(player, betas[player], "beta")
        pop.append(player, news[player], tag)
    return IterationOutcome((reports[0], reports[1]), episodes, steps)


def sp_psro_not_anytime_iteration(game, pop, oracle, meta, schedule, rng) -> IterationOutcome:
    """Self-play variant without the no-regret loop.

    The opponent response trains against a fixed restricted equilibrium, the
    new strategy chases that response, and the reported profile is the fixed
    equilibrium itself.
    """
    arms0, arms1 = pop.arms(0), pop.arms(1)
    emp = empirical_matrix(game, arms0, arms1)
    sigma0, sigma1 = _restricted_nash(emp, meta)
    report0 = mixture_over(game, 0, arms0, sigma0.probs)
    report1 = mixture_over(game, 1, arms1, sigma1.probs)
    sigmas = (sigma0, sigma1)
    reports = (report0, report1)
    betas = [None, None]
    news = [None, None]
    episodes = 0
    steps = 0

    for i in (0, 1):
        opp = 1 - i
        if isinstance(game, NormalFormGame):
            target = reports[i]
            if oracle.kind == "exact":
                b_idx, _ = exact_br_nfg(game, target, player=opp)
                steps += 1
                bvec = np.zeros(game.shape[opp])
                bvec[b_idx] = 1.0
                learner = SmoothedLearner(bvec, oracle.smoothing)
            else:
                learner = SmoothedLearner.uniform(game.shape[opp], oracle.smoothing)
            nu = SmoothedLearner.uniform(game.shape[i], oracle.smoothing)
            ckpt_sum = np.zeros(game.shape[i])
            ckpt_count = 0
            inner = 0
            for _ in range(schedule.n):
                for _ in range(schedule.m):
                    if oracle.kind == "exact":
                        n_idx, _ = exact_br_nfg(game, learner.current, player=i)
                        nvec = np.zeros(game.shape[i])
                        nvec[n_idx] = 1.0
                        nu = SmoothedLearner(nvec, nu.lam)
                        steps += 1
                    else:
                        learner = smoothed_br_step(learner, game, target, player=opp)
                        nu = smoothed_br_step(nu, game, learner.current, player=i)
                        steps += 1
                    inner += 1
                    if inner % schedule.checkpoint_every == 0:
                        ckpt_sum += nu.current
                        ckpt_count += 1
            if ckpt_count == 0:
                ckpt_sum = nu.current.copy()
                ckpt_count = 1
            betas[opp] = MixedStrategy(learner.current)
            news[i] = MixedStrategy(ckpt_sum / ckpt_count)
        elif oracle.kind == "q_learning":
            beta_agent = QAgent(oracle.q_learning_rate, oracle.q_epsilon)
            nu_agent = QAgent(oracle.q_learning_rate, oracle.q_epsilon)
            side_arms = pop.arms(i)
            probs = sigmas[i].probs
            checkpoints = []
            ep_counts = _split_counts(schedule.episodes_per_iteration, schedule.batches)
            for b in range(schedule.batches):
                for _ in range(ep_counts[b]):
                    actor = _episode_actor(side_arms[sample_index(probs, rng)], rng)
                    q_learning_episode(game, beta_agent, opp, lambda _rng: actor, rng, nu_agent=nu_agent)
                    episodes += 1
                if (b + 1) % schedule.checkpoint_every == 0:
                    checkpoints.append(nu_agent.greedy_policy())
            if not checkpoints:
                checkpoints.append(nu_agent.greedy_policy())
            betas[opp] = beta_agent.greedy_policy()
            news[i] = CheckpointMixture(np.full(len(checkpoints), 1.0 / len(checkpoints)), checkpoints)
        else:
            beta, _ = exact_br_efg(game, reports[i], opponent_player=i)
            steps += 1
            nu = BehaviorPolicy(default_uniform=True)
            checkpoints = []
            inner = 0
            for _ in range(schedule.n):
                for _ in range(schedule.m):
                    nu, _ = exact_br_efg(game, beta, opponent_player=opp)
                    steps += 1
                    inner += 1
                    if inner % schedule.checkpoint_every == 0:
                        checkpoints.append(nu.copy())
            if not checkpoints:
                checkpoints.append(nu.copy())
            betas[opp] = beta
            news[i] = CheckpointMixture(np.full(len(checkpoints), 1.0 / len(checkpoints)), checkpoints)

    for player in (0, 1):
        pop.append(player, betas[player], "beta")
        pop.append(player, news[player], "nu_bar")
    return IterationOutcome((report0, report1), episodes, steps)


_ALGORITHM_FNS = {
    "psro": psro_iteration,
    "apsro": apsro_iteration,
    "sp_psro": sp_psro_iteration,
    "sp_psro_last_iterate": sp_psro_last_iterate_iteration,
    "sp_psro_not_anytime": sp_psro_not_anytime_iteration,
}


@dataclass(frozen=True)
class IterationRecord:
    algorithm: str
    game: str
    seed: int
    iteration: int
    cumulative_episodes: int
    population_size_per_player: int
    exploitability: float
    wall_ms: int


def _check_compatibility(algorithm, game, oracle, meta):
    if algorithm not in _ALGORITHM_FNS:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")
    if isinstance(game, NormalFormGame):
        if oracle.kind == "q_learning":
            raise ValueError("q_learning oracle needs an extensive-form game")
    elif oracle.kind == "smoothed":
        raise ValueError("smoothed oracle applies to matrix games only")
    if algorithm != "psro" and algorithm != "sp_psro_not_anytime":
        if oracle.kind == "q_learning" and meta.no_regret != "exp3":
            raise ValueError("tabular training uses the exp3 no-regret solver")
        if oracle.kind != "q_learning" and meta.no_regret != "mwu":
            raise ValueError("exact-payoff training uses the mwu no-regret solver")


def run(
    algorithm: str,
    game,
    schedule: IterationSchedule | None = None,
    oracle: OracleConfig | None = None,
    metasolver: MetasolverConfig | None = None,
    seeds=(0,),
    iterations: int = 10,
) -> list[IterationRecord]:
    """Drive one algorithm for several seeds and collect per-iteration records.

    Deterministic for a given seed.  ``cumulative_episodes`` accumulates
    environment episodes in tabular mode and best-response update steps
    otherwise.  With ``iterations == 0`` a single record of the untouched
    initial population is emitted per seed, labeled iteration 0.
    """
    schedule = schedule or IterationSchedule()
    oracle = oracle or OracleConfig()
    metasolver = metasolver or MetasolverConfig()
    if iterations < 0:
        raise ValueError("iterations must be non-negative")
    seeds = list(seeds)
    if not seeds:
        raise ValueError("need at least one seed")
    _check_compatibility(algorithm, game, oracle, metasolver)

    game_name = getattr(game, "name", "game")
    records: list[IterationRecord] = []
    for seed in seeds:
        rng = np.random.default_rng(seed)
        pop = initial_population(game)
        cumulative = 0
        if iterations == 0:
            started = time.perf_counter()
            gap = exploitability(game, pop.arms(0)[0], pop.arms(1)[0])
            wall = int((time.perf_counter() - started) * 1000)
            records.append(
                IterationRecord(algorithm, game_name, int(seed), 0, 0, pop.size(0), float(gap), wall)
            )
            continue
        for t in range(1, iterations + 1):
            started = time.perf_counter()
            name = algorithm
            if schedule.switch_to_apsro_after is not None and t > schedule.switch_to_apsro_after:
                name = "apsro"
            outcome = _ALGORITHM_FNS[name](game, pop, oracle, metasolver, schedule, rng)
            cumulative += outcome.episodes + outcome.br_steps
            gap = exploitability(game, *outcome.report)
            wall = int((time.perf_counter() - started) * 1000)
            records.append(
                IterationRecord(
                    name, game_name, int(seed), t, cumulative, pop.size(0), float(gap), wall
                )
            )
    return records

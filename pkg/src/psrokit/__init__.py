"""Population-based solving of two-player zero-sum games.

Grow per-player strategy pools by best-responding to restricted
distributions over the opponent pool; solve the restricted game exactly or
track it with no-regret updates; measure progress with exact exploitability.
"""

from psrokit.errors import GameValidationError, LPSolverError, MissingPolicyError
from psrokit.evaluation import (
    arm_payoffs,
    empirical_matrix,
    expected_value,
    exploitability,
    mixture_over,
)
from psrokit.extensive import (
    CHANCE,
    ExtensiveGame,
    ExtensiveState,
    ValidationReport,
    collapse_mixture_to_behavior,
    enumerate_infosets,
    realization_reach,
    validate_game,
)
from psrokit.metasolvers import (
    Exp3State,
    MWUState,
    exact_nash_zero_sum,
    exp3_sample,
    exp3_update,
    fictitious_play,
    mwu_update,
)
from psrokit.normal_form import NormalFormGame, expected_value_nfg, load_matrix, save_matrix
from psrokit.oracles import (
    QAgent,
    SmoothedLearner,
    exact_br_efg,
    exact_br_nfg,
    play_episode,
    q_learning_episode,
    smoothed_br_step,
)
from psrokit.population import (
    ALGORITHMS,
    IterationRecord,
    IterationSchedule,
    MetasolverConfig,
    OracleConfig,
    Population,
    apsro_iteration,
    initial_population,
    psro_iteration,
    run,
    sp_psro_iteration,
    sp_psro_last_iterate_iteration,
    sp_psro_not_anytime_iteration,
)
from psrokit.strategies import (
    BehaviorPolicy,
    CheckpointMixture,
    MixedStrategy,
    PureStrategy,
    RestrictedDistribution,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BehaviorPolicy",
    "CHANCE",
    "CheckpointMixture",
    "Exp3State",
    "ExtensiveGame",
    "ExtensiveState",
    "GameValidationError",
    "IterationRecord",
    "IterationSchedule",
    "LPSolverError",
    "MWUState",
    "MetasolverConfig",
    "MissingPolicyError",
    "MixedStrategy",
    "NormalFormGame",
    "OracleConfig",
    "Population",
    "PureStrategy",
    "QAgent",
    "RestrictedDistribution",
    "SmoothedLearner",
    "ValidationReport",
    "apsro_iteration",
    "arm_payoffs",
    "collapse_mixture_to_behavior",
    "empirical_matrix",
    "enumerate_infosets",
    "exact_br_efg",
    "exact_br_nfg",
    "exact_nash_zero_sum",
    "exp3_sample",
    "exp3_update",
    "expected_value",
    "expected_value_nfg",
    "exploitability",
    "fictitious_play",
    "initial_population",
    "load_matrix",
    "mixture_over",
    "mwu_update",
    "play_episode",
    "psro_iteration",
    "q_learning_episode",
    "realization_reach",
    "run",
    "save_matrix",
    "smoothed_br_step",
    "sp_psro_iteration",
    "sp_psro_last_iterate_iteration",
    "sp_psro_not_anytime_iteration",
    "validate_game",
]

"""Deterministic boss-fight simulator and neuroevolution toolkit."""

from ._core import (
    ActionSet,
    BossGain,
    GainReport,
    GenerationRecord,
    Genome,
    MatchConfig,
    Outcome,
    SimState,
    evaluate_all,
    evolve,
    gain,
    harmonic_mean,
    mirror_state,
    mlp_forward,
    mlp_outputs,
    new_match,
    normalize,
    parameter_count,
    sensors,
    state_hash,
    step,
    verify_replay_file,
    zero_genome,
)

__all__ = [
    "ActionSet",
    "BossGain",
    "GainReport",
    "GenerationRecord",
    "Genome",
    "MatchConfig",
    "Outcome",
    "SimState",
    "evaluate_all",
    "evolve",
    "gain",
    "harmonic_mean",
    "mirror_state",
    "mlp_forward",
    "mlp_outputs",
    "new_match",
    "normalize",
    "parameter_count",
    "sensors",
    "state_hash",
    "step",
    "verify_replay_file",
    "zero_genome",
]

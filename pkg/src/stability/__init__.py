from src.stability.audit import (
    StabilityReport,
    audit,
    constrained_efficient_outcomes,
    enumerate_ir,
    is_constrained_efficient,
    is_individually_rational,
    pareto_dominates,
)
from src.stability.blocks import (
    BlockKind,
    BlockWitness,
    deviation_outcome,
    find_block,
    find_setwise_block,
    find_weak_setwise_block,
    find_weak_setwise_block_exhaustive,
    validate_witness,
)

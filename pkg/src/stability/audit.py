# src/stability/audit.py

import logging
from dataclasses import dataclass
from functools import lru_cache

from src.config import MAX_CONTRACTS
from src.core.market import Comparison, ContractSet, Market
from src.errors import CapExceededError, PreconditionError
from src.stability.blocks import (
    BlockWitness,
    find_block,
    find_setwise_block,
    find_weak_setwise_block,
)
from src.utils import canonical_subsets

logger = logging.getLogger(__name__)


# ---------------------------------------------------------
# Individual rationality
# ---------------------------------------------------------
def individual_rationality_failures(market: Market, Y: ContractSet) -> tuple[int, ...]:
    return tuple(
        agent.index
        for agent in market.agents
        if not market.is_individually_rational_for(agent.index, Y)
    )


def is_individually_rational(market: Market, Y: ContractSet) -> tuple[bool, tuple[int, ...]]:
    failures = individual_rationality_failures(market, Y)
    return not failures, failures


@lru_cache(maxsize=64)
def enumerate_ir(market: Market) -> tuple[ContractSet, ...]:
    """Every individually rational outcome, canonical order. Always starts with the empty set."""
    if len(market.contracts) > MAX_CONTRACTS:
        raise CapExceededError(
            f"{len(market.contracts)} contracts exceed the enumeration cap of {MAX_CONTRACTS}"
        )
    agents = [a.index for a in market.agents]
    outcomes = tuple(
        Y
        for Y in canonical_subsets(market.full, market.id_order)
        if all(market.is_individually_rational_for(i, Y) for i in agents)
    )
    logger.debug("enumerated %d individually rational outcomes", len(outcomes))
    return outcomes


# ---------------------------------------------------------
# Efficiency
# ---------------------------------------------------------
def pareto_dominates(market: Market, Yp: ContractSet, Y: ContractSet) -> bool:
    strict = False
    for agent in market.agents:
        i = agent.index
        verdict = market.compare(i, market.restrict(Yp, i), market.restrict(Y, i))
        if verdict is Comparison.SECOND:
            return False
        strict = strict or verdict is Comparison.FIRST
    return strict


def is_constrained_efficient(market: Market, Y: ContractSet) -> tuple[bool, ContractSet | None]:
    if individual_rationality_failures(market, Y):
        raise PreconditionError(
            f"constrained efficiency is defined for individually rational outcomes only, "
            f"{market.format_set(Y)} is not"
        )
    for candidate in enumerate_ir(market):
        if pareto_dominates(market, candidate, Y):
            return False, candidate
    return True, None


def constrained_efficient_outcomes(market: Market) -> tuple[ContractSet, ...]:
    return tuple(Y for Y in enumerate_ir(market) if is_constrained_efficient(market, Y)[0])


# ---------------------------------------------------------
# Full audit
# ---------------------------------------------------------
@dataclass(frozen=True)
class StabilityReport:
    outcome: ContractSet
    individually_rational: bool
    ir_failures: tuple[int, ...]
    stable: bool
    block: BlockWitness | None
    weakly_setwise_stable: bool
    weak_setwise_block: BlockWitness | None
    setwise_stable: bool
    setwise_block: BlockWitness | None
    constrained_efficient: bool | None  # None: not applicable (Y not individually rational)
    dominator: ContractSet | None


def audit(market: Market, Y: ContractSet) -> StabilityReport:
    ir, failures = is_individually_rational(market, Y)
    block = find_block(market, Y)
    weak = find_weak_setwise_block(market, Y)
    setwise = find_setwise_block(market, Y)

    efficient, dominator = is_constrained_efficient(market, Y) if ir else (None, None)

    return StabilityReport(
        outcome=Y,
        individually_rational=ir,
        ir_failures=failures,
        stable=ir and block is None,
        block=block,
        weakly_setwise_stable=ir and weak is None,
        weak_setwise_block=weak,
        setwise_stable=ir and setwise is None,
        setwise_block=setwise,
        constrained_efficient=efficient,
        dominator=dominator,
    )

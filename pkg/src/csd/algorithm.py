# src/csd/algorithm.py

"""
Constrained Serial Dictatorship.

Agents are brought in one at a time following an exogenous ordering. Agent
i_k may add contracts it signs that none of i_1..i_{k-1} signs, and picks the
addition that makes its own portfolio best, subject to the pool staying inside
some individually rational outcome. The last agent takes no step: every
contract has two signers, so all of X is reachable through the first |I|-1.

Pipeline:
1. Materialize the individually rational outcomes once.
2. Run |I|-1 steps, recording a CsdStep each.
3. Return the final pool with the full trace.
"""

import logging
from dataclasses import dataclass
from itertools import permutations

import pandas as pd

from src.core.market import UNACCEPTABLE, AgentSet, ContractSet, Market
from src.errors import Diagnostic, OrderingError, PreconditionError
from src.stability.audit import enumerate_ir
from src.utils import is_subset, make_rng, submasks

logger = logging.getLogger(__name__)

Ordering = tuple[int, ...]


@dataclass(frozen=True)
class CsdStep:
    agent: int
    candidates_considered: int
    chosen: ContractSet
    pool_after: ContractSet
    completion_rule_used: bool


@dataclass(frozen=True)
class CsdTrace:
    ordering: Ordering
    steps: tuple[CsdStep, ...]
    final: ContractSet

    @property
    def completion_rule_steps(self) -> int:
        return sum(step.completion_rule_used for step in self.steps)


# ---------------------------------------------------------
# Orderings
# ---------------------------------------------------------
def validate_ordering(market: Market, order) -> Ordering:
    order = tuple(order)
    if sorted(order) != list(range(len(market.agents))):
        names = ",".join(market.agents[i].name if 0 <= i < len(market.agents) else str(i) for i in order)
        raise OrderingError(
            [Diagnostic(None, names, "order must name every agent exactly once")]
        )
    return order


def parse_ordering(market: Market, text: str) -> Ordering:
    names = [name.strip() for name in text.split(",")]
    if "" in names:
        raise OrderingError([Diagnostic(None, text, "empty agent name in order")])
    unknown = [n for n in names if n not in {a.name for a in market.agents}]
    if unknown:
        raise OrderingError([Diagnostic(None, n, "unknown agent in order") for n in unknown])
    return validate_ordering(market, [market.agent_index(n) for n in names])


def random_ordering(market: Market, seed: int | None = None) -> Ordering:
    rng = make_rng(seed)
    return tuple(int(i) for i in rng.permutation(len(market.agents)))


def all_orderings(market: Market) -> list[Ordering]:
    return list(permutations(range(len(market.agents))))


# ---------------------------------------------------------
# Steps
# ---------------------------------------------------------
def _extendable(pool: ContractSet, ir_outcomes) -> bool:
    return any(is_subset(pool, Y) for Y in ir_outcomes)


def csd_feasible_extensions(
    market: Market, pool: ContractSet, agent: int, forbidden: AgentSet
) -> list[ContractSet]:
    """All Z within X_agent minus X_forbidden keeping pool u Z inside some IR outcome."""
    ir_outcomes = enumerate_ir(market)
    if not _extendable(pool, ir_outcomes):
        raise PreconditionError(
            f"pool {market.format_set(pool)} is not part of any individually rational outcome"
        )
    allowed = market.agent_contracts(agent) & ~market.restrict_group(market.full, forbidden)
    extensions = [Z for Z in submasks(allowed) if _extendable(pool | Z, ir_outcomes)]
    return sorted(extensions, key=lambda Z: (Z.bit_count(), sorted(market.ids(Z))))


def csd_step(market: Market, pool: ContractSet, agent: int, forbidden: AgentSet) -> CsdStep:
    held = market.restrict(pool, agent)
    candidates = csd_feasible_extensions(market, pool, agent, forbidden)

    # Z is disjoint from the pool, so distinct candidates give distinct portfolios
    chosen = min(candidates, key=lambda Z: market.preference_key(agent, held | Z))
    winner_class = market.rank_class(agent, held | chosen)
    completion_used = winner_class == UNACCEPTABLE and len(candidates) > 1
    if completion_used:
        logger.debug(
            "agent %s: every candidate portfolio is unacceptable, completion rule decides",
            market.agents[agent].name,
        )
    return CsdStep(agent, len(candidates), chosen, pool | chosen, completion_used)


def csd(market: Market, order) -> tuple[ContractSet, CsdTrace]:
    order = validate_ordering(market, order)
    ir_outcomes = enumerate_ir(market)
    logger.debug("csd over %d individually rational outcomes", len(ir_outcomes))

    pool, forbidden, steps = 0, 0, []
    for agent in order[:-1]:
        step = csd_step(market, pool, agent, forbidden)
        steps.append(step)
        pool = step.pool_after
        forbidden |= 1 << agent

    return pool, CsdTrace(order, tuple(steps), pool)


def csd_over_orderings(market: Market, orderings: list[Ordering]) -> pd.DataFrame:
    rows = []
    for order in orderings:
        outcome, trace = csd(market, order)
        rows.append(
            {
                "ordering": ",".join(market.agents[i].name for i in order),
                "outcome": market.format_set(outcome),
                "completion_rule_steps": trace.completion_rule_steps,
            }
        )
    return pd.DataFrame(rows, columns=["ordering", "outcome", "completion_rule_steps"])


# ---------------------------------------------------------
# Trace output
# ---------------------------------------------------------
def format_trace(market: Market, trace: CsdTrace) -> str:
    lines = []
    for k, step in enumerate(trace.steps, start=1):
        line = (
            f"step {k} agent={market.agents[step.agent].name} "
            f"chose={market.format_set(step.chosen)} pool={market.format_set(step.pool_after)}"
        )
        if step.completion_rule_used:
            line += " [completion-rule]"
        lines.append(line)
    lines.append(f"result={market.format_set(trace.final)}")
    return "\n".join(lines) + "\n"


def format_trace_structured(market: Market, trace: CsdTrace) -> str:
    lines = ["order=" + ",".join(market.agents[i].name for i in trace.ordering)]
    for k, step in enumerate(trace.steps, start=1):
        lines.append(f"step.{k}.agent={market.agents[step.agent].name}")
        lines.append(f"step.{k}.candidates={step.candidates_considered}")
        lines.append(f"step.{k}.chosen={market.format_set(step.chosen)}")
        lines.append(f"step.{k}.pool={market.format_set(step.pool_after)}")
        lines.append(f"step.{k}.completion_rule={'true' if step.completion_rule_used else 'false'}")
    lines.append(f"result={market.format_set(trace.final)}")
    return "\n".join(lines) + "\n"

# src/generate/markets.py

"""
Seeded random markets.

Pipeline:
1. Draw each contract's signer set (2..max_signers distinct agents).
2. Draw each agent's acceptable family: a uniform random number of distinct
   nonempty subsets of X_i (at most max_portfolios), ranked in draw order.
3. With a condition filter, redraw the preferences of failing agents only,
   until every agent passes or an agent reaches the attempt cap.
"""

import logging
from collections.abc import Iterator

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.conditions.checks import Condition, check
from src.config import (
    DEFAULT_AGENTS,
    DEFAULT_CONTRACTS,
    DEFAULT_MAX_PORTFOLIOS,
    DEFAULT_MAX_SIGNERS,
    MAX_AGENTS,
    MAX_CONTRACTS,
    RNG_SEED,
    SAMPLING_ATTEMPT_CAP,
)
from src.core.market import AgentId, Contract, ContractSet, Market, Preference
from src.errors import SamplingExhaustedError
from src.utils import bits, make_rng

logger = logging.getLogger(__name__)


class RandomMarketParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    agents: int = Field(DEFAULT_AGENTS, ge=1, le=MAX_AGENTS)
    contracts: int = Field(DEFAULT_CONTRACTS, ge=0, le=MAX_CONTRACTS)
    max_signers: int = Field(DEFAULT_MAX_SIGNERS, ge=2)
    max_portfolios: int = Field(DEFAULT_MAX_PORTFOLIOS, ge=0)
    seed: int = Field(RNG_SEED, ge=0)

    @model_validator(mode="after")
    def _contracts_need_two_agents(self) -> "RandomMarketParams":
        if self.contracts > 0 and self.agents < 2:
            raise ValueError("contracts need at least two agents")
        return self


# -----------------------------
# Draws
# -----------------------------
def _draw_signers(rng: np.random.Generator, n_agents: int, max_signers: int) -> frozenset[int]:
    size = int(rng.integers(2, min(max_signers, n_agents) + 1))
    return frozenset(int(a) for a in rng.choice(n_agents, size=size, replace=False))


def _draw_ranked(
    rng: np.random.Generator, own: ContractSet, max_portfolios: int
) -> tuple[ContractSet, ...]:
    members = list(bits(own))
    nonempty = (1 << len(members)) - 1
    count = int(rng.integers(0, min(max_portfolios, nonempty) + 1))

    ranked: list[ContractSet] = []
    while len(ranked) < count:
        local = int(rng.integers(1, nonempty + 1))
        entry = sum(1 << members[k] for k in bits(local))
        if entry not in ranked:
            ranked.append(entry)
    return tuple(ranked)


def _failing_agents(market: Market, condition: Condition) -> list[int]:
    return [a.index for a in market.agents if not check(market, a.index, condition).holds]


# -----------------------------
# Public API
# -----------------------------
def generate_market(params: RandomMarketParams, condition: Condition | None = None) -> Market:
    rng = make_rng(params.seed)

    agents = tuple(AgentId(f"i{k + 1}", k) for k in range(params.agents))
    contracts = tuple(
        Contract(f"x{k + 1}", k, _draw_signers(rng, params.agents, params.max_signers))
        for k in range(params.contracts)
    )
    skeleton = Market(agents, contracts, tuple(Preference(a.index, ()) for a in agents))

    ranked = [
        _draw_ranked(rng, skeleton.agent_contracts(a.index), params.max_portfolios)
        for a in agents
    ]
    market = Market(agents, contracts, tuple(Preference(i, r) for i, r in enumerate(ranked)))
    if condition is None:
        return market

    attempts = {a.name: 1 for a in agents}
    failing = _failing_agents(market, condition)
    while failing:
        for i in failing:
            name = agents[i].name
            if attempts[name] >= SAMPLING_ATTEMPT_CAP:
                raise SamplingExhaustedError(condition.cli_name, attempts, SAMPLING_ATTEMPT_CAP)
            attempts[name] += 1
            ranked[i] = _draw_ranked(rng, skeleton.agent_contracts(i), params.max_portfolios)
        market = Market(agents, contracts, tuple(Preference(i, r) for i, r in enumerate(ranked)))
        failing = [i for i in failing if not check(market, i, condition).holds]

    logger.debug("sampled market passing %s, attempts per agent: %s", condition.cli_name, attempts)
    return market


def market_corpus(
    seed: int,
    count: int,
    max_agents: int,
    max_contracts: int,
    max_signers: int = DEFAULT_MAX_SIGNERS,
    max_portfolios: int = DEFAULT_MAX_PORTFOLIOS,
    min_agents: int = 2,
    condition: Condition | None = None,
) -> Iterator[Market]:
    """`count` random markets with sizes drawn per market from one master seed."""
    rng = make_rng(seed)
    for _ in range(count):
        params = RandomMarketParams(
            agents=int(rng.integers(min_agents, max_agents + 1)),
            contracts=int(rng.integers(1, max_contracts + 1)),
            max_signers=max_signers,
            max_portfolios=max_portfolios,
            seed=int(rng.integers(0, 2**31)),
        )
        yield generate_market(params, condition)

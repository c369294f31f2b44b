# src/generate/agent_target.py

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.agent_target.model import AtmContract, AtmSpec, Cooperation, Target, validate_spec
from src.config import (
    DEFAULT_AGENTS,
    DEFAULT_ATM_CONTRACTS,
    DEFAULT_COOPERATIONS,
    DEFAULT_TARGETS_PER_AGENT,
    MAX_AGENT_CONTRACTS,
    MAX_AGENTS,
    MAX_CONTRACTS,
    RNG_SEED,
)
from src.utils import make_rng

logger = logging.getLogger(__name__)

MAX_IMPLEMENTERS = 3
MAX_REQUIRED = 3


class RandomSpecParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    agents: int = Field(DEFAULT_AGENTS, ge=2, le=MAX_AGENTS)
    cooperations: int = Field(DEFAULT_COOPERATIONS, ge=0, le=MAX_CONTRACTS)
    # every contract may land in one agent's X_i
    contracts: int = Field(DEFAULT_ATM_CONTRACTS, ge=0, le=MAX_AGENT_CONTRACTS)
    targets_per_agent: int = Field(DEFAULT_TARGETS_PER_AGENT, ge=0)
    seed: int = Field(RNG_SEED, ge=0)

    @model_validator(mode="after")
    def _contracts_need_cooperations(self) -> "RandomSpecParams":
        if self.contracts > 0 and self.cooperations == 0:
            raise ValueError("contracts need at least one cooperation")
        return self


def _subset(rng: np.random.Generator, pool: list, low: int, high: int) -> list:
    size = int(rng.integers(low, min(high, len(pool)) + 1))
    picks = sorted(int(k) for k in rng.choice(len(pool), size=size, replace=False))
    return [pool[k] for k in picks]


def generate_spec(params: RandomSpecParams) -> AtmSpec:
    rng = make_rng(params.seed)
    agents = [f"a{k + 1}" for k in range(params.agents)]

    # -----------------------------
    # 1. Cooperations
    # -----------------------------
    cooperations = [
        Cooperation(f"e{k + 1}", frozenset(_subset(rng, agents, 2, MAX_IMPLEMENTERS)))
        for k in range(params.cooperations)
    ]

    # -----------------------------
    # 2. Contracts: bundles within one implementer group
    # -----------------------------
    contracts = []
    for k in range(params.contracts):
        anchor = cooperations[int(rng.integers(0, len(cooperations)))]
        group = [c.id for c in cooperations if c.implementers == anchor.implementers]
        contracts.append(AtmContract(f"x{k + 1}", tuple(_subset(rng, group, 1, len(group)))))

    # -----------------------------
    # 3. Targets
    # -----------------------------
    targets = []
    for agent in agents:
        involved = [c.id for c in cooperations if agent in c.implementers]
        if not involved:
            continue
        for t in range(int(rng.integers(0, params.targets_per_agent + 1))):
            required = _subset(rng, involved, 1, MAX_REQUIRED)
            targets.append(Target(f"t{t + 1}", agent, frozenset(required)))

    spec = AtmSpec(tuple(agents), tuple(cooperations), tuple(contracts), tuple(targets))
    validate_spec(spec)
    logger.debug(
        "generated spec: %d cooperations, %d contracts, %d targets",
        len(cooperations),
        len(contracts),
        len(targets),
    )
    return spec

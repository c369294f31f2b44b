# src/agent_target/model.py

"""
Agent-target markets.

Agents implement indivisible elementary cooperations; a contract bundles
cooperations that all share the contract's signer set; each target of an agent
needs a nonempty set of cooperations involving that agent. An agent's
preference is induced from the targets a portfolio achieves:

    1. more targets first (then lexicographically on sorted target ids)
    2. fewer contracts first
    3. lexicographically on sorted contract ids

Portfolios achieving no target are unacceptable. Compiling a spec produces an
ordinary Market with these induced preferences.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations

from src.config import MAX_AGENT_CONTRACTS, MAX_AGENTS, MAX_CONTRACTS
from src.core.market import Market
from src.core.parser import RawMarket, format_market, validate_market
from src.errors import AgentTargetError, CapExceededError, Diagnostic, PreconditionError
from src.utils import submasks

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cooperation:
    id: str
    implementers: frozenset[str]


@dataclass(frozen=True)
class AtmContract:
    id: str
    cooperations: tuple[str, ...]


@dataclass(frozen=True)
class Target:
    id: str
    agent: str
    required: frozenset[str]


@dataclass(frozen=True)
class AtmSpec:
    agents: tuple[str, ...]
    cooperations: tuple[Cooperation, ...]
    contracts: tuple[AtmContract, ...]
    targets: tuple[Target, ...]

    def cooperation(self, cid: str) -> Cooperation:
        return next(c for c in self.cooperations if c.id == cid)

    def contract(self, xid: str) -> AtmContract:
        return next(x for x in self.contracts if x.id == xid)


# ---------------------------------------------------------
# Validation
# ---------------------------------------------------------
def validate_spec(spec: AtmSpec, lines: dict[str, int] | None = None) -> None:
    lines = lines or {}
    diags: list[Diagnostic] = []

    if len(spec.agents) > MAX_AGENTS:
        raise CapExceededError(f"spec has {len(spec.agents)} agents, the cap is {MAX_AGENTS}")
    if len(spec.contracts) > MAX_CONTRACTS:
        raise CapExceededError(
            f"spec has {len(spec.contracts)} contracts, the cap is {MAX_CONTRACTS}"
        )

    if len(set(spec.agents)) != len(spec.agents):
        diags.append(Diagnostic(lines.get("agents"), "agents", "duplicate agent name"))
    agents = set(spec.agents)

    coops: dict[str, Cooperation] = {}
    for coop in spec.cooperations:
        where = lines.get(f"coop:{coop.id}")
        if coop.id in coops:
            diags.append(Diagnostic(where, coop.id, "duplicate cooperation id"))
            continue
        coops[coop.id] = coop
        for name in sorted(coop.implementers - agents):
            diags.append(Diagnostic(where, coop.id, f"unknown implementer '{name}'"))
        if len(coop.implementers) < 2:
            diags.append(Diagnostic(where, coop.id, "cooperation must have ≥2 implementers"))

    seen_contracts: set[str] = set()
    for contract in spec.contracts:
        where = lines.get(f"contract:{contract.id}")
        if contract.id in seen_contracts:
            diags.append(Diagnostic(where, contract.id, "duplicate contract id"))
            continue
        seen_contracts.add(contract.id)
        if not contract.cooperations:
            diags.append(Diagnostic(where, contract.id, "contract bundles no cooperation"))
            continue
        unknown = [c for c in contract.cooperations if c not in coops]
        for cid in unknown:
            diags.append(Diagnostic(where, contract.id, f"unknown cooperation '{cid}'"))
        groups = {coops[c].implementers for c in contract.cooperations if c in coops}
        if len(groups) > 1:
            diags.append(Diagnostic(where, contract.id, "contract must have uniform signer set"))

    seen_targets: set[tuple[str, str]] = set()
    for target in spec.targets:
        where = lines.get(f"target:{target.agent}:{target.id}")
        if target.agent not in agents:
            diags.append(Diagnostic(where, target.id, f"unknown agent '{target.agent}'"))
            continue
        if (target.agent, target.id) in seen_targets:
            diags.append(Diagnostic(where, target.id, f"duplicate target for '{target.agent}'"))
            continue
        seen_targets.add((target.agent, target.id))
        if not target.required:
            diags.append(Diagnostic(where, target.id, "empty required set"))
        for cid in sorted(target.required):
            if cid not in coops:
                diags.append(Diagnostic(where, target.id, f"unknown cooperation '{cid}'"))
            elif target.agent not in coops[cid].implementers:
                diags.append(
                    Diagnostic(
                        where,
                        target.id,
                        f"target references cooperation '{cid}' not involving its agent '{target.agent}'",
                    )
                )

    if diags:
        raise AgentTargetError(diags)


# ---------------------------------------------------------
# Targets and induced preferences
# ---------------------------------------------------------
def contract_signers(spec: AtmSpec, contract: AtmContract) -> frozenset[str]:
    return spec.cooperation(contract.cooperations[0]).implementers


def agent_contracts(spec: AtmSpec, agent: str) -> list[str]:
    return [x.id for x in spec.contracts if agent in contract_signers(spec, x)]


def achieved_targets(spec: AtmSpec, agent: str, Y: Iterable[str]) -> frozenset[str]:
    """T_i(Y): targets of `agent` whose required cooperations all appear in Y."""
    covered: set[str] = set()
    for xid in Y:
        covered.update(spec.contract(xid).cooperations)
    return frozenset(
        t.id for t in spec.targets if t.agent == agent and t.required <= covered
    )


def induce_preference(spec: AtmSpec, agent: str) -> tuple[tuple[str, ...], ...]:
    """Acceptable portfolios of `agent`, best first, as tuples of contract ids in spec order."""
    own = agent_contracts(spec, agent)
    if len(own) > MAX_AGENT_CONTRACTS:
        raise CapExceededError(
            f"agent '{agent}' signs {len(own)} contracts, the cap is {MAX_AGENT_CONTRACTS}"
        )

    scored = []
    for size in range(1, len(own) + 1):
        for portfolio in combinations(own, size):
            targets = achieved_targets(spec, agent, portfolio)
            if not targets:
                continue
            key = (-len(targets), sorted(targets), size, sorted(portfolio))
            scored.append((key, portfolio))

    scored.sort(key=lambda item: item[0])
    return tuple(portfolio for _, portfolio in scored)


def target_assumption_violations(spec: AtmSpec, market: Market, agent: str) -> list[str]:
    """
    Exhaustive post-check of the induced order against the two target assumptions:
    more targets (strict superset) is better; equal targets with fewer contracts
    (strict subset) is better.
    """
    i = market.agent_index(agent)
    subsets = list(submasks(market.agent_contracts(i)))
    targets = {S: achieved_targets(spec, agent, market.ids(S)) for S in subsets}

    problems = []
    for Y in subsets:
        for Yp in subsets:
            if Y == Yp:
                continue
            more_targets = targets[Yp] < targets[Y]
            leaner = targets[Yp] == targets[Y] and Y & ~Yp == 0
            if (more_targets or leaner) and not market.prefers(i, Y, Yp):
                problems.append(
                    f"{agent}: {market.format_set(Y)} should rank above {market.format_set(Yp)}"
                )
    return problems


# ---------------------------------------------------------
# Compilation
# ---------------------------------------------------------
def compile_spec(spec: AtmSpec) -> Market:
    validate_spec(spec)

    raw = RawMarket()
    raw.agents = [(name, None) for name in spec.agents]
    for contract in spec.contracts:
        signers = contract_signers(spec, contract)
        raw.contracts.append(
            (contract.id, [a for a in spec.agents if a in signers], None)
        )
    for agent in spec.agents:
        ranked = [list(portfolio) for portfolio in induce_preference(spec, agent)]
        raw.prefs.append((agent, ranked, None))

    market = validate_market(raw)

    for agent in spec.agents:
        problems = target_assumption_violations(spec, market, agent)
        if problems:
            raise PreconditionError("; ".join(problems))

    logger.debug(
        "compiled agent-target spec: %d agents, %d contracts",
        len(market.agents),
        len(market.contracts),
    )
    return market


def compile_to_text(spec: AtmSpec) -> str:
    return format_market(compile_spec(spec))

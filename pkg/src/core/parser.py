# src/core/parser.py

"""
Market file reading, validation and writing.

File format (UTF-8, line based, `#` starts a comment):

    agents <name>+
    contract <id> <agent>+        # at least two distinct agents
    pref <agent> <set>*           # best first, the empty set is implicit last

A `<set>` is `{id,id,...}` without internal whitespace. Every problem found in a
file is collected as a Diagnostic before a single MarketError is raised.
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from src.config import MAX_AGENTS, MAX_CONTRACTS
from src.core.market import AgentId, Contract, ContractSet, Market, Preference
from src.errors import CapExceededError, Diagnostic, MarketError, OutcomeError

logger = logging.getLogger(__name__)

SET_PATTERN = re.compile(r"^\{([^{},\s]+(?:,[^{},\s]+)*)?\}$")
TOKEN_PATTERN = re.compile(r"^[^{},\s#]+$")


@dataclass
class RawMarket:
    """A market description as written, before any cross-reference checks."""

    agents: list[tuple[str, int | None]] = field(default_factory=list)
    contracts: list[tuple[str, list[str], int | None]] = field(default_factory=list)
    prefs: list[tuple[str, list[list[str]], int | None]] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)


# ---------------------------------------------------------
# Tokenizing
# ---------------------------------------------------------
def parse_set_token(token: str) -> list[str] | None:
    match = SET_PATTERN.match(token)
    if match is None:
        return None
    body = match.group(1)
    return body.split(",") if body else []


def parse_market_text(text: str) -> RawMarket:
    raw = RawMarket()
    seen_agents_line = False

    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split("#", 1)[0].split()
        if not tokens:
            continue
        directive, args = tokens[0], tokens[1:]

        bad = [t for t in args if directive != "pref" and not TOKEN_PATTERN.match(t)]
        for token in bad:
            raw.diagnostics.append(Diagnostic(lineno, token, "invalid name token"))
        if bad:
            continue

        if directive == "agents":
            if seen_agents_line:
                raw.diagnostics.append(Diagnostic(lineno, "agents", "duplicate agents line"))
                continue
            seen_agents_line = True
            if not args:
                raw.diagnostics.append(Diagnostic(lineno, "agents", "expected at least one agent"))
            raw.agents.extend((name, lineno) for name in args)

        elif directive == "contract":
            if not args:
                raw.diagnostics.append(Diagnostic(lineno, "contract", "missing contract id"))
                continue
            raw.contracts.append((args[0], args[1:], lineno))

        elif directive == "pref":
            if not args:
                raw.diagnostics.append(Diagnostic(lineno, "pref", "missing agent name"))
                continue
            agent, sets, ok = args[0], [], True
            if not TOKEN_PATTERN.match(agent):
                raw.diagnostics.append(Diagnostic(lineno, agent, "invalid name token"))
                ok = False
            for token in args[1:]:
                members = parse_set_token(token)
                if members is None:
                    raw.diagnostics.append(Diagnostic(lineno, token, "malformed set"))
                    ok = False
                else:
                    sets.append(members)
            if ok:
                raw.prefs.append((agent, sets, lineno))

        else:
            raw.diagnostics.append(Diagnostic(lineno, directive, "unknown directive"))

    if not seen_agents_line:
        raw.diagnostics.append(Diagnostic(None, "agents", "missing agents line"))
    return raw


# ---------------------------------------------------------
# Validation
# ---------------------------------------------------------
def check_caps(n_agents: int, n_contracts: int) -> None:
    if n_agents > MAX_AGENTS:
        raise CapExceededError(f"market has {n_agents} agents, the cap is {MAX_AGENTS}")
    if n_contracts > MAX_CONTRACTS:
        raise CapExceededError(
            f"market has {n_contracts} contracts, the cap is {MAX_CONTRACTS}"
        )


def validate_market(raw: RawMarket) -> Market:
    diags = list(raw.diagnostics)
    check_caps(len(raw.agents), len(raw.contracts))

    agent_index: dict[str, int] = {}
    for name, line in raw.agents:
        if name in agent_index:
            diags.append(Diagnostic(line, name, "duplicate agent name"))
        else:
            agent_index[name] = len(agent_index)
    agents = tuple(AgentId(name, idx) for name, idx in agent_index.items())

    contract_index: dict[str, int] = {}
    contracts: list[Contract] = []
    for cid, signer_names, line in raw.contracts:
        if cid in contract_index:
            diags.append(Diagnostic(line, cid, "duplicate contract id"))
            continue
        signers: set[int] = set()
        for name in signer_names:
            if name not in agent_index:
                diags.append(Diagnostic(line, cid, f"unknown signer '{name}'"))
            elif agent_index[name] in signers:
                diags.append(Diagnostic(line, cid, f"signer '{name}' listed twice"))
            else:
                signers.add(agent_index[name])
        if len(set(signer_names)) < 2:
            diags.append(Diagnostic(line, cid, "contract must have ≥2 signers"))
        contract_index[cid] = len(contracts)
        contracts.append(Contract(cid, len(contracts), frozenset(signers)))

    ranked_by_agent: dict[int, tuple[ContractSet, ...]] = {}
    for agent, sets, line in raw.prefs:
        if agent not in agent_index:
            diags.append(Diagnostic(line, agent, "preference for unknown agent"))
            continue
        i = agent_index[agent]
        if i in ranked_by_agent:
            diags.append(Diagnostic(line, agent, "duplicate pref line"))
            continue
        ranked: list[ContractSet] = []
        for members in sets:
            entry = _validate_entry(agent, i, members, line, contract_index, contracts, diags)
            if entry is None:
                continue
            if entry in ranked:
                diags.append(
                    Diagnostic(line, agent, "duplicate preference entry {" + ",".join(members) + "}")
                )
                continue
            ranked.append(entry)
        ranked_by_agent[i] = tuple(ranked)

    if diags:
        raise MarketError(diags)

    for agent in agents:
        if agent.index not in ranked_by_agent:
            logger.debug("agent %s has no pref line, treating as empty", agent.name)

    preferences = tuple(
        Preference(agent.index, ranked_by_agent.get(agent.index, ())) for agent in agents
    )
    return Market(agents, tuple(contracts), preferences)


def _validate_entry(agent, i, members, line, contract_index, contracts, diags):
    text = "{" + ",".join(members) + "}"
    if not members:
        diags.append(Diagnostic(line, agent, "ranked entry must be nonempty (the empty set is implicit)"))
        return None
    if len(set(members)) != len(members):
        diags.append(Diagnostic(line, agent, f"malformed set {text}: repeated contract"))
        return None
    entry = 0
    for cid in members:
        if cid not in contract_index:
            diags.append(Diagnostic(line, agent, f"unknown contract '{cid}' in {text}"))
            return None
        contract = contracts[contract_index[cid]]
        if i not in contract.signers:
            diags.append(
                Diagnostic(line, agent, f"entry not in X_i: contract '{cid}' in {text} is not signed by '{agent}'")
            )
            return None
        entry |= 1 << contract.index
    return entry


# ---------------------------------------------------------
# Public entry points
# ---------------------------------------------------------
def parse_market(text: str) -> Market:
    return validate_market(parse_market_text(text))


def read_market(path: str | Path) -> Market:
    market = parse_market(Path(path).read_text(encoding="utf-8"))
    logger.debug(
        "loaded %s: %d agents, %d contracts", path, len(market.agents), len(market.contracts)
    )
    return market


def parse_outcome(market: Market, text: str) -> ContractSet:
    members = parse_set_token(text.strip())
    if members is None:
        raise OutcomeError([Diagnostic(None, text, "malformed set, expected {id,id,...}")])
    if len(set(members)) != len(members):
        raise OutcomeError([Diagnostic(None, text, "repeated contract in set")])
    return market.contract_set(members)


def format_market(market: Market) -> str:
    lines = ["agents " + " ".join(a.name for a in market.agents)]
    for contract in market.contracts:
        lines.append(
            f"contract {contract.id} " + " ".join(market.agent_names(contract.signer_mask))
        )
    for agent in market.agents:
        sets = [market.format_set(entry) for entry in market.ranked(agent.index)]
        lines.append(" ".join(["pref", agent.name, *sets]))
    return "\n".join(lines) + "\n"


def write_market(market: Market, path: str | Path) -> None:
    Path(path).write_text(format_market(market), encoding="utf-8")

# src/agent_target/parser.py

"""
Agent-target spec files (UTF-8, line based, `#` starts a comment):

    agents <name>+
    coop <id> <agent>+
    contract <id> <coop-id>+
    target <agent> <id> <coop-id>+
"""

import logging
from pathlib import Path

from src.agent_target.model import (
    AtmContract,
    AtmSpec,
    Cooperation,
    Target,
    validate_spec,
)
from src.core.parser import TOKEN_PATTERN
from src.errors import AgentTargetError, Diagnostic

logger = logging.getLogger(__name__)

MIN_ARGS = {"agents": 1, "coop": 1, "contract": 1, "target": 2}


def parse_spec(text: str) -> AtmSpec:
    agents: list[str] = []
    cooperations: list[Cooperation] = []
    contracts: list[AtmContract] = []
    targets: list[Target] = []
    lines: dict[str, int] = {}
    diags: list[Diagnostic] = []
    seen_agents_line = False

    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split("#", 1)[0].split()
        if not tokens:
            continue
        directive, args = tokens[0], tokens[1:]

        if directive not in MIN_ARGS:
            diags.append(Diagnostic(lineno, directive, "unknown directive"))
            continue
        bad = [t for t in args if not TOKEN_PATTERN.match(t)]
        for token in bad:
            diags.append(Diagnostic(lineno, token, "invalid name token"))
        if bad:
            continue
        if len(args) < MIN_ARGS[directive]:
            diags.append(Diagnostic(lineno, directive, "too few arguments"))
            continue

        if directive == "agents":
            if seen_agents_line:
                diags.append(Diagnostic(lineno, "agents", "duplicate agents line"))
                continue
            seen_agents_line = True
            agents.extend(args)
            lines["agents"] = lineno
        elif directive == "coop":
            cooperations.append(Cooperation(args[0], frozenset(args[1:])))
            lines.setdefault(f"coop:{args[0]}", lineno)
        elif directive == "contract":
            contracts.append(AtmContract(args[0], tuple(args[1:])))
            lines.setdefault(f"contract:{args[0]}", lineno)
        else:
            agent, tid = args[0], args[1]
            targets.append(Target(tid, agent, frozenset(args[2:])))
            lines.setdefault(f"target:{agent}:{tid}", lineno)

    if diags:
        raise AgentTargetError(diags)

    spec = AtmSpec(tuple(agents), tuple(cooperations), tuple(contracts), tuple(targets))
    validate_spec(spec, lines)
    return spec


def read_spec(path: str | Path) -> AtmSpec:
    spec = parse_spec(Path(path).read_text(encoding="utf-8"))
    logger.debug(
        "loaded %s: %d agents, %d cooperations, %d contracts, %d targets",
        path,
        len(spec.agents),
        len(spec.cooperations),
        len(spec.contracts),
        len(spec.targets),
    )
    return spec


def format_spec(spec: AtmSpec) -> str:
    order = {name: k for k, name in enumerate(spec.agents)}

    def by_agent(names) -> list[str]:
        return sorted(names, key=lambda n: order.get(n, len(order)))

    lines = ["agents " + " ".join(spec.agents)]
    lines += [f"coop {c.id} " + " ".join(by_agent(c.implementers)) for c in spec.cooperations]
    lines += [f"contract {x.id} " + " ".join(x.cooperations) for x in spec.contracts]
    lines += [
        f"target {t.agent} {t.id} " + " ".join(sorted(t.required)) for t in spec.targets
    ]
    return "\n".join(lines) + "\n"

from src.agent_target.model import (
    AtmContract,
    AtmSpec,
    Cooperation,
    Target,
    achieved_targets,
    agent_contracts,
    compile_spec,
    compile_to_text,
    induce_preference,
    target_assumption_violations,
    validate_spec,
)
from src.agent_target.parser import format_spec, parse_spec, read_spec

__all__ = [
    "AtmContract",
    "AtmSpec",
    "Cooperation",
    "Target",
    "achieved_targets",
    "agent_contracts",
    "compile_spec",
    "compile_to_text",
    "format_spec",
    "induce_preference",
    "parse_spec",
    "read_spec",
    "target_assumption_violations",
    "validate_spec",
]

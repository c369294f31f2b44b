# src/stability/report.py

"""
StabilityReport serialization.

The structured form is one `key=value` per line, witnesses as `{id,id}` sets,
and `parse_structured` reads it back to an equal report.
"""

from src.core.market import ContractSet, Market
from src.core.parser import parse_outcome
from src.errors import Diagnostic, OutcomeError
from src.stability.audit import StabilityReport
from src.stability.blocks import BlockKind, BlockWitness

FLAG_KEYS = [
    ("stable", "block", BlockKind.BLOCK),
    ("weakly_setwise_stable", "weak_setwise_block", BlockKind.WEAK_SETWISE),
    ("setwise_stable", "setwise_block", BlockKind.SETWISE),
]


def _flag(value: bool | None) -> str:
    if value is None:
        return "n/a"
    return "true" if value else "false"


def _witness_text(market: Market, witness: BlockWitness) -> str:
    text = f"Z={market.format_set(witness.z)}"
    if witness.y_star is not None:
        text += f", Y*={market.format_set(witness.y_star)}"
    return text


# ---------------------------------------------------------
# Writers
# ---------------------------------------------------------
def format_structured(market: Market, report: StabilityReport) -> str:
    lines = [
        f"outcome={market.format_set(report.outcome)}",
        f"individually_rational={_flag(report.individually_rational)}",
        "ir_failures=" + ",".join(market.agents[i].name for i in report.ir_failures),
    ]
    for flag_key, witness_key, _ in FLAG_KEYS:
        lines.append(f"{flag_key}={_flag(getattr(report, flag_key))}")
        witness = getattr(report, witness_key)
        if witness is not None:
            lines.append(f"{witness_key}.z={market.format_set(witness.z)}")
            if witness.y_star is not None:
                lines.append(f"{witness_key}.ystar={market.format_set(witness.y_star)}")
    lines.append(f"constrained_efficient={_flag(report.constrained_efficient)}")
    if report.dominator is not None:
        lines.append(f"dominator={market.format_set(report.dominator)}")
    return "\n".join(lines) + "\n"


def format_text(market: Market, report: StabilityReport) -> str:
    def row(label: str, value: bool | None, note: str = "") -> str:
        verdict = {True: "yes", False: "no", None: "n/a"}[value]
        return f"{label:<24}: {verdict}" + (f"  ({note})" if note else "")

    failures = ", ".join(market.agents[i].name for i in report.ir_failures)
    lines = [
        f"outcome {market.format_set(report.outcome)}",
        row("individually rational", report.individually_rational,
            f"fails for {failures}" if failures else ""),
    ]
    labels = {
        "stable": "stable",
        "weakly_setwise_stable": "weakly setwise stable",
        "setwise_stable": "setwise stable",
    }
    for flag_key, witness_key, _ in FLAG_KEYS:
        witness = getattr(report, witness_key)
        note = f"blocked by {_witness_text(market, witness)}" if witness else ""
        lines.append(row(labels[flag_key], getattr(report, flag_key), note))
    dominated = (
        f"dominated by {market.format_set(report.dominator)}"
        if report.dominator is not None
        else ""
    )
    lines.append(row("constrained efficient", report.constrained_efficient, dominated))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------
# Reader
# ---------------------------------------------------------
def _parse_flag(key: str, value: str) -> bool | None:
    table = {"true": True, "false": False, "n/a": None}
    if value not in table:
        raise OutcomeError([Diagnostic(None, key, f"bad flag value '{value}'")])
    return table[value]


def parse_structured(market: Market, text: str) -> StabilityReport:
    fields: dict[str, str] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise OutcomeError([Diagnostic(None, line, "expected key=value")])
        fields[key] = value

    def outcome(key: str) -> ContractSet | None:
        return parse_outcome(market, fields[key]) if key in fields else None

    witnesses = {}
    for _, witness_key, kind in FLAG_KEYS:
        z = outcome(f"{witness_key}.z")
        witnesses[witness_key] = (
            None if z is None else BlockWitness(kind, z, outcome(f"{witness_key}.ystar"))
        )

    failures = fields.get("ir_failures", "")
    return StabilityReport(
        outcome=outcome("outcome") or 0,
        individually_rational=bool(_parse_flag("individually_rational", fields["individually_rational"])),
        ir_failures=tuple(market.agent_index(n) for n in failures.split(",") if n),
        stable=bool(_parse_flag("stable", fields["stable"])),
        block=witnesses["block"],
        weakly_setwise_stable=bool(_parse_flag("weakly_setwise_stable", fields["weakly_setwise_stable"])),
        weak_setwise_block=witnesses["weak_setwise_block"],
        setwise_stable=bool(_parse_flag("setwise_stable", fields["setwise_stable"])),
        setwise_block=witnesses["setwise_block"],
        constrained_efficient=_parse_flag("constrained_efficient", fields["constrained_efficient"]),
        dominator=outcome("dominator"),
    )

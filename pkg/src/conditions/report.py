# src/conditions/report.py

import pandas as pd

from src.conditions.checks import (
    Condition,
    ConditionReport,
    check,
    check_one_contract_per_group,
)
from src.core.market import Market


def format_counterexample(market: Market, report: ConditionReport) -> str:
    cex = report.counterexample
    if cex is None:
        return ""
    parts = [f"Y={market.format_set(cex.Y)}"]
    if cex.Y_prime is not None:
        parts.append(f"Y'={market.format_set(cex.Y_prime)}")
    if cex.Z is not None:
        parts.append(f"Z={market.format_set(cex.Z)}")
    if cex.x is not None:
        parts.append(f"x={market.contracts[cex.x].id}")
    if cex.y is not None:
        parts.append(f"y={market.contracts[cex.y].id}")
    return " ".join(parts)


def condition_reports(
    market: Market, conditions: list[Condition] | None = None
) -> list[ConditionReport]:
    conditions = conditions or list(Condition)
    return [
        check(market, agent.index, condition)
        for agent in market.agents
        for condition in conditions
    ]


def condition_table(market: Market, conditions: list[Condition] | None = None) -> pd.DataFrame:
    """Agent x condition table; each cell is 'yes' or 'no: <counterexample>'."""
    conditions = conditions or list(Condition)
    reports = condition_reports(market, conditions)

    records = []
    for report in reports:
        cell = "yes" if report.holds else f"no: {format_counterexample(market, report)}"
        records.append(
            (market.agents[report.agent].name, report.condition.cli_name, cell)
        )

    df = pd.DataFrame(records, columns=["agent", "condition", "verdict"])
    table = df.pivot(index="agent", columns="condition", values="verdict")

    # pivot sorts both axes; restore market / declaration order
    return table.reindex(
        index=[a.name for a in market.agents],
        columns=[c.cli_name for c in conditions],
    )


# ---------------------------------------------------------
# Output
# ---------------------------------------------------------
def format_conditions_text(market: Market, conditions: list[Condition] | None = None) -> str:
    table = condition_table(market, conditions)
    holds, failures = check_one_contract_per_group(market)
    lines = [table.to_string() if len(table) else "(no agents)"]
    lines.append("")
    lines.append(f"one-contract-per-group: {'yes' if holds else 'no'}")
    for agent, entry in failures.items():
        lines.append(f"  {market.agents[agent].name}: {market.format_set(entry)}")
    return "\n".join(lines) + "\n"


def format_conditions_structured(market: Market, conditions: list[Condition] | None = None) -> str:
    lines = []
    for report in condition_reports(market, conditions):
        key = f"{market.agents[report.agent].name}.{report.condition.cli_name}"
        if report.holds:
            lines.append(f"{key}=true")
        else:
            lines.append(f"{key}=false")
            lines.append(f"{key}.counterexample={format_counterexample(market, report)}")
    holds, failures = check_one_contract_per_group(market)
    lines.append(f"one_contract_per_group={'true' if holds else 'false'}")
    for agent, entry in failures.items():
        lines.append(f"one_contract_per_group.{market.agents[agent].name}={market.format_set(entry)}")
    return "\n".join(lines) + "\n"

# src/corpus_pipeline.py

"""
Seeded corpus run over random markets.

Pipeline:
1. Draw the markets from one master seed.
2. Per market: enumerate the individually rational outcomes, check every
   preference condition for every agent, run csd over the tested orderings and
   audit every outcome.
3. Count violations of the structural guarantees (one column each) and
   write the per-market table to data/processed/corpus_summary.csv.
"""

from pathlib import Path

import pandas as pd

from src.conditions.checks import Condition, check, check_one_contract_per_group, holds_for_all
from src.config import (
    CORPUS_MAX_AGENTS,
    CORPUS_MAX_CONTRACTS,
    CORPUS_ORDERINGS,
    CORPUS_SIZE,
    DATA_PROCESSED,
    RNG_SEED,
)
from src.core.market import ContractSet, Market
from src.csd.algorithm import all_orderings, csd, random_ordering
from src.generate.markets import market_corpus
from src.stability.audit import StabilityReport, audit, enumerate_ir
from src.utils import canonical_subsets, make_rng

# violation columns, one per guarantee
VIOLATION_COLUMNS = [
    "v_csd_not_ir_or_efficient",
    "v_csd_weak_setwise_block_under_se",
    "v_csd_setwise_block_under_ose",
    "v_efficient_weak_setwise_block_under_se",
    "v_setwise_vs_efficient_under_ose",
    "v_condition_implies_se",
    "v_complementary_sets_differ",
    "v_stable_vs_weak_setwise",
    "v_csd_not_stable",
]

# all orderings up to this many agents, seeded samples beyond
ALL_ORDERINGS_UP_TO = 4


def tested_orderings(market: Market, seed: int) -> list[tuple[int, ...]]:
    if len(market.agents) <= ALL_ORDERINGS_UP_TO:
        return all_orderings(market)
    rng = make_rng(seed)
    return [
        random_ordering(market, int(rng.integers(0, 2**31))) for _ in range(CORPUS_ORDERINGS)
    ]


def _outcome_sets(reports: dict[ContractSet, StabilityReport]) -> dict[str, frozenset]:
    return {
        "stable": frozenset(Y for Y, r in reports.items() if r.stable),
        "weak_setwise": frozenset(Y for Y, r in reports.items() if r.weakly_setwise_stable),
        "setwise": frozenset(Y for Y, r in reports.items() if r.setwise_stable),
        "efficient": frozenset(Y for Y, r in reports.items() if r.constrained_efficient),
    }


def guarantee_violations(
    market: Market,
    reports: dict[ContractSet, StabilityReport],
    csd_outcomes: set[ContractSet],
    holds: dict[Condition, bool],
    one_per_group: bool,
) -> dict[str, int]:
    v = dict.fromkeys(VIOLATION_COLUMNS, 0)
    se, ose = holds[Condition.SCALE_ECONOMIES], holds[Condition.ORDINAL_SE]

    for Y in csd_outcomes:
        r = reports[Y]
        if not r.individually_rational or not r.constrained_efficient:
            v["v_csd_not_ir_or_efficient"] += 1
        if se and not r.weakly_setwise_stable:
            v["v_csd_weak_setwise_block_under_se"] += 1
        if ose and not r.setwise_stable:
            v["v_csd_setwise_block_under_ose"] += 1

    for Y, r in reports.items():
        if not r.individually_rational:
            continue
        if se and r.constrained_efficient and not r.weakly_setwise_stable:
            v["v_efficient_weak_setwise_block_under_se"] += 1
        if ose and r.constrained_efficient != r.setwise_stable:
            v["v_setwise_vs_efficient_under_ose"] += 1

    for agent in market.agents:
        if check(market, agent.index, Condition.SCALE_ECONOMIES).holds:
            continue
        for stronger in (
            Condition.SINGLE_CONTRACT_SE,
            Condition.DIFFERENT_GROUP_COMPLEMENTARY,
            Condition.ORDINAL_SE,
        ):
            if check(market, agent.index, stronger).holds:
                v["v_condition_implies_se"] += 1

    if holds[Condition.COMPLEMENTARY]:
        sets = _outcome_sets(reports)
        if len(set(sets.values())) != 1:
            v["v_complementary_sets_differ"] += 1

    if one_per_group and holds[Condition.DIFFERENT_GROUP_COMPLEMENTARY]:
        v["v_stable_vs_weak_setwise"] = sum(
            r.stable != r.weakly_setwise_stable for r in reports.values()
        )
        v["v_csd_not_stable"] = sum(not reports[Y].stable for Y in csd_outcomes)

    return v


def market_row(market: Market, seed: int) -> dict:
    holds = {c: holds_for_all(market, c) for c in Condition}
    one_per_group, _ = check_one_contract_per_group(market)

    csd_outcomes: set[ContractSet] = set()
    completion_steps = 0
    orderings = tested_orderings(market, seed)
    for order in orderings:
        outcome, trace = csd(market, order)
        csd_outcomes.add(outcome)
        completion_steps += trace.completion_rule_steps

    reports = {
        Y: audit(market, Y) for Y in canonical_subsets(market.full, market.id_order)
    }

    row = {
        "agents": len(market.agents),
        "contracts": len(market.contracts),
        "ir_outcomes": len(enumerate_ir(market)),
        **{c.value: holds[c] for c in Condition},
        "one_contract_per_group": one_per_group,
        "orderings": len(orderings),
        "csd_outcomes": len(csd_outcomes),
        "completion_rule_steps": completion_steps,
    }
    row.update(guarantee_violations(market, reports, csd_outcomes, holds, one_per_group))
    return row


def run_corpus(
    seed: int = RNG_SEED,
    count: int = CORPUS_SIZE,
    max_agents: int = CORPUS_MAX_AGENTS,
    max_contracts: int = CORPUS_MAX_CONTRACTS,
    progress: bool = False,
) -> pd.DataFrame:
    rows = []
    markets = market_corpus(seed, count, max_agents, max_contracts)
    for k, market in enumerate(markets, start=1):
        rows.append({"market": k, **market_row(market, seed + k)})
        if progress and k % 50 == 0:
            print(f"  {k}/{count} markets done")
    return pd.DataFrame(rows)


def summarize(df: pd.DataFrame) -> str:
    lines = [f"markets: {len(df)}"]
    if df.empty:
        return "\n".join(lines) + "\n"
    for condition in Condition:
        lines.append(f"  {condition.cli_name:<32} {int(df[condition.value].sum())}")
    lines.append(f"  {'one-contract-per-group':<32} {int(df['one_contract_per_group'].sum())}")
    used = int((df["completion_rule_steps"] > 0).sum())
    lines.append(f"markets where the completion rule decided a csd step: {used}")
    lines.append(f"markets with several csd outcomes: {int((df['csd_outcomes'] > 1).sum())}")
    lines.append(f"total violations: {total_violations(df)}")
    return "\n".join(lines) + "\n"


def total_violations(df: pd.DataFrame) -> int:
    if df.empty:
        return 0
    return int(df[VIOLATION_COLUMNS].to_numpy().sum())


def write_summary(df: pd.DataFrame, path: str | Path | None = None) -> Path:
    path = Path(path) if path is not None else DATA_PROCESSED / "corpus_summary.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False)
    return path


def main():
    print("Generating market corpus...")
    df = run_corpus(progress=True)

    print("Writing CSV...")
    path = write_summary(df)

    print(summarize(df), end="")
    print(f"✓ Corpus summary written to {path}")


if __name__ == "__main__":
    main()

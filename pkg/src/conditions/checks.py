# src/conditions/checks.py

"""
Exhaustive preference-condition checkers.

Each checker scans the full quantifier domain of its condition for one agent
and returns a ConditionReport; a failing report carries the first violated
instance found, scanning by (|Y'|, |Y|) and then lexicographically.

    complementary                  C(Y) within C(Y') whenever Y < Y'
    scale_economies                N(dropped) within N(newly chosen) whenever Y < Y'
    single_contract_se             x dropped on arrival of y  =>  N(x) within N(y)
    different_group_complementary  adding contracts of other signer groups never
                                   makes an individually rational set drop x
    ordinal_se                     after an improving swap Y -> Y', re-adding
                                   dropped contracts with abandoned partners keeps
                                   Y' u Z individually rational
"""

import logging
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from src.config import MAX_AGENT_CONTRACTS
from src.core.market import ContractSet, Market
from src.errors import CapExceededError
from src.utils import bits, canonical_subsets, is_subset, mask_of

logger = logging.getLogger(__name__)


class Condition(Enum):
    COMPLEMENTARY = "complementary"
    SCALE_ECONOMIES = "scale_economies"
    SINGLE_CONTRACT_SE = "single_contract_se"
    DIFFERENT_GROUP_COMPLEMENTARY = "different_group_complementary"
    ORDINAL_SE = "ordinal_se"

    @property
    def cli_name(self) -> str:
        return self.value.replace("_", "-")

    @classmethod
    def from_cli_name(cls, name: str) -> "Condition":
        return cls(name.replace("-", "_"))


@dataclass(frozen=True)
class Counterexample:
    Y: ContractSet
    Y_prime: ContractSet | None = None
    Z: ContractSet | None = None
    x: int | None = None  # contract index
    y: int | None = None  # contract index


@dataclass(frozen=True)
class ConditionReport:
    agent: int
    condition: Condition
    holds: bool
    counterexample: Counterexample | None = None


# ---------------------------------------------------------
# Quantifier domains
# ---------------------------------------------------------
def _own_contracts(market: Market, i: int) -> ContractSet:
    X_i = market.agent_contracts(i)
    if X_i.bit_count() > MAX_AGENT_CONTRACTS:
        raise CapExceededError(
            f"agent '{market.agents[i].name}' signs {X_i.bit_count()} contracts, "
            f"the condition-check cap is {MAX_AGENT_CONTRACTS}"
        )
    return X_i


def _members(market: Market, mask: ContractSet) -> list[int]:
    return [idx for idx in market.id_order if mask >> idx & 1]


def nested_pairs(market: Market, X_i: ContractSet) -> Iterator[tuple[ContractSet, ContractSet]]:
    """(Y, Y') with Y a proper subset of Y' within X_i, by (|Y'|, |Y|, lex Y', lex Y)."""
    members = _members(market, X_i)
    for outer_size in range(1, len(members) + 1):
        for inner_size in range(outer_size):
            for outer in combinations(members, outer_size):
                for inner in combinations(outer, inner_size):
                    yield mask_of(inner), mask_of(outer)


def fixed_points(market: Market, i: int) -> list[ContractSet]:
    """Sets Y within X_i with C_i(Y) = Y, by cardinality then lexicographically."""
    points = [0] + [entry for entry in market.ranked(i) if market.choose(i, entry) == entry]
    return sorted(points, key=lambda S: (S.bit_count(), sorted(market.ids(S))))


# ---------------------------------------------------------
# Violation predicates (one quantifier instance each)
# ---------------------------------------------------------
def violates_complementary(market: Market, i: int, cex: Counterexample) -> bool:
    return not is_subset(market.choose(i, cex.Y), market.choose(i, cex.Y_prime))


def violates_scale_economies(market: Market, i: int, cex: Counterexample) -> bool:
    small, large = market.choose(i, cex.Y), market.choose(i, cex.Y_prime)
    dropped = market.signers(small & ~large)
    added = market.signers(large & ~small)
    return not is_subset(dropped, added)


def violates_single_contract_se(market: Market, i: int, cex: Counterexample) -> bool:
    x_bit, y_bit = 1 << cex.x, 1 << cex.y
    kept = market.choose(i, cex.Y) & x_bit
    lost = not market.choose(i, cex.Y | y_bit) & x_bit
    wider = is_subset(market.contract_signers(cex.x), market.contract_signers(cex.y))
    return bool(kept) and lost and not wider


def violates_different_group_complementary(market: Market, i: int, cex: Counterexample) -> bool:
    group = market.contract_signers(cex.x)
    if market.choose(i, cex.Y) != cex.Y or cex.Y & cex.Z:
        return False
    if any(market.contract_signers(z) == group for z in bits(cex.Z)):
        return False
    return cex.Y >> cex.x & 1 and not market.choose(i, cex.Y | cex.Z) >> cex.x & 1


def violates_ordinal_se(market: Market, i: int, cex: Counterexample) -> bool:
    Y, Yp, Z = cex.Y, cex.Y_prime, cex.Z
    if market.choose(i, Y) != Y or market.choose(i, Yp) != Yp:
        return False
    if not market.prefers(i, Yp, Y) or not is_subset(Z, Y & ~Yp):
        return False
    partners = market.signers(Yp & ~Y)
    if any(is_subset(market.contract_signers(x), partners) for x in bits(Z)):
        return False
    return market.choose(i, Yp | Z) != Yp | Z


# ---------------------------------------------------------
# Checkers
# ---------------------------------------------------------
def check_complementary(market: Market, i: int) -> ConditionReport:
    X_i = _own_contracts(market, i)
    for Y, Yp in nested_pairs(market, X_i):
        cex = Counterexample(Y, Yp)
        if violates_complementary(market, i, cex):
            return ConditionReport(i, Condition.COMPLEMENTARY, False, cex)
    return ConditionReport(i, Condition.COMPLEMENTARY, True)


def check_scale_economies(market: Market, i: int) -> ConditionReport:
    X_i = _own_contracts(market, i)
    for Y, Yp in nested_pairs(market, X_i):
        cex = Counterexample(Y, Yp)
        if violates_scale_economies(market, i, cex):
            return ConditionReport(i, Condition.SCALE_ECONOMIES, False, cex)
    return ConditionReport(i, Condition.SCALE_ECONOMIES, True)


def check_single_contract_se(market: Market, i: int) -> ConditionReport:
    X_i = _own_contracts(market, i)
    for Y in canonical_subsets(X_i, market.id_order, min_size=1):
        for x in _members(market, Y):
            for y in _members(market, X_i & ~Y):
                cex = Counterexample(Y, x=x, y=y)
                if violates_single_contract_se(market, i, cex):
                    return ConditionReport(i, Condition.SINGLE_CONTRACT_SE, False, cex)
    return ConditionReport(i, Condition.SINGLE_CONTRACT_SE, True)


def check_different_group_complementary(market: Market, i: int) -> ConditionReport:
    X_i = _own_contracts(market, i)
    for Y in fixed_points(market, i):
        for Z in canonical_subsets(X_i & ~Y, market.id_order, min_size=1):
            for x in _members(market, Y):
                cex = Counterexample(Y, Z=Z, x=x)
                if violates_different_group_complementary(market, i, cex):
                    return ConditionReport(
                        i, Condition.DIFFERENT_GROUP_COMPLEMENTARY, False, cex
                    )
    return ConditionReport(i, Condition.DIFFERENT_GROUP_COMPLEMENTARY, True)


def check_ordinal_scale_economies(market: Market, i: int) -> ConditionReport:
    _own_contracts(market, i)
    points = fixed_points(market, i)
    pairs = [
        (Y, Yp)
        for Yp in points
        for Y in points
        if market.prefers(i, Yp, Y)
    ]
    pairs.sort(key=lambda p: (p[1].bit_count(), p[0].bit_count(),
                              sorted(market.ids(p[1])), sorted(market.ids(p[0]))))
    for Y, Yp in pairs:
        partners = market.signers(Yp & ~Y)
        eligible = mask_of(
            x for x in bits(Y & ~Yp)
            if not is_subset(market.contract_signers(x), partners)
        )
        for Z in canonical_subsets(eligible, market.id_order, min_size=1):
            cex = Counterexample(Y, Yp, Z)
            if violates_ordinal_se(market, i, cex):
                return ConditionReport(i, Condition.ORDINAL_SE, False, cex)
    return ConditionReport(i, Condition.ORDINAL_SE, True)


CHECKERS: dict[Condition, Callable[[Market, int], ConditionReport]] = {
    Condition.COMPLEMENTARY: check_complementary,
    Condition.SCALE_ECONOMIES: check_scale_economies,
    Condition.SINGLE_CONTRACT_SE: check_single_contract_se,
    Condition.DIFFERENT_GROUP_COMPLEMENTARY: check_different_group_complementary,
    Condition.ORDINAL_SE: check_ordinal_scale_economies,
}

VIOLATIONS: dict[Condition, Callable[[Market, int, Counterexample], bool]] = {
    Condition.COMPLEMENTARY: violates_complementary,
    Condition.SCALE_ECONOMIES: violates_scale_economies,
    Condition.SINGLE_CONTRACT_SE: violates_single_contract_se,
    Condition.DIFFERENT_GROUP_COMPLEMENTARY: violates_different_group_complementary,
    Condition.ORDINAL_SE: violates_ordinal_se,
}


def check(market: Market, i: int, condition: Condition) -> ConditionReport:
    report = CHECKERS[condition](market, i)
    logger.debug(
        "%s for %s over %d own contracts: %s",
        condition.cli_name, market.agents[i].name, market.agent_contracts(i).bit_count(), report.holds,
    )
    return report


def holds_for_all(market: Market, condition: Condition) -> bool:
    return all(check(market, a.index, condition).holds for a in market.agents)


def counterexample_is_valid(market: Market, report: ConditionReport) -> bool:
    """True when the report's counterexample really violates the defining clause."""
    if report.counterexample is None:
        return report.holds
    return bool(VIOLATIONS[report.condition](market, report.agent, report.counterexample))


# ---------------------------------------------------------
# Market-level: one contract per signer group
# ---------------------------------------------------------
def shared_group_entry(market: Market, i: int) -> ContractSet | None:
    """First acceptable portfolio of agent i holding two contracts with equal signer sets."""
    for entry in market.ranked(i):
        groups = [market.contract_signers(idx) for idx in bits(entry)]
        if len(set(groups)) != len(groups):
            return entry
    return None


def check_one_contract_per_group(market: Market) -> tuple[bool, dict[int, ContractSet]]:
    failures = {}
    for agent in market.agents:
        entry = shared_group_entry(market, agent.index)
        if entry is not None:
            failures[agent.index] = entry
    return not failures, failures

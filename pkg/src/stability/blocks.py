# src/stability/blocks.py

"""
Exhaustive block search for the three blocking notions.

    block          nonempty Z outside Y; every signer of Z keeps all of its
                   Z-contracts in its best choice from Y u Z
    weak setwise   a block whose signers also agree on one outcome Y* that
                   realizes every one of their best choices from Y u Z
    setwise        a deviation to an outcome Y* (Z = Y* minus Y) that is
                   strictly better and individually rational for every
                   signer of Z, best choice or not

Candidates are visited by ascending cardinality, then lexicographically by
sorted contract id, so the witness returned is always the canonical one.
"""

import logging
from dataclasses import dataclass
from enum import Enum

from src.core.market import ContractSet, Market
from src.utils import bits, canonical_subsets, is_subset

logger = logging.getLogger(__name__)


class BlockKind(Enum):
    BLOCK = "block"
    WEAK_SETWISE = "weak_setwise"
    SETWISE = "setwise"


@dataclass(frozen=True)
class BlockWitness:
    kind: BlockKind
    z: ContractSet
    y_star: ContractSet | None = None


# ---------------------------------------------------------
# Definition-level predicates
# ---------------------------------------------------------
def blocks(market: Market, Y: ContractSet, Z: ContractSet) -> bool:
    union = Y | Z
    for i in bits(market.signers(Z)):
        if not is_subset(market.restrict(Z, i), market.choose(i, union)):
            return False
    return True


def consistent_deviation(market: Market, Y: ContractSet, Z: ContractSet) -> ContractSet | None:
    """
    Y* for a weak setwise block by Z, or None.

    Y* is the union of the coalition's best choices from Y u Z; it works iff it
    hands every coalition member exactly its own choice back, i.e. members
    agree on every shared contract. Any other valid Y* contains this union and
    restricts to the same portfolios, so existence does not depend on the pick.
    """
    union = Y | Z
    coalition = market.signers(Z)
    choices = {}
    for i in bits(coalition):
        choice = market.choose(i, union)
        if not is_subset(market.restrict(Z, i), choice):
            return None
        choices[i] = choice

    y_star = 0
    for choice in choices.values():
        y_star |= choice
    for i, choice in choices.items():
        if market.restrict(y_star, i) != choice:
            return None
    return y_star


def setwise_improves(market: Market, Y: ContractSet, y_star: ContractSet) -> bool:
    Z = y_star & ~Y
    for i in bits(market.signers(Z)):
        portfolio = market.restrict(y_star, i)
        if market.choose(i, y_star) != portfolio:
            return False
        if not market.prefers(i, portfolio, market.restrict(Y, i)):
            return False
    return True


# ---------------------------------------------------------
# Finders
# ---------------------------------------------------------
def find_block(market: Market, Y: ContractSet) -> BlockWitness | None:
    scanned = 0
    for scanned, Z in enumerate(canonical_subsets(market.full & ~Y, market.id_order, min_size=1), 1):
        if blocks(market, Y, Z):
            logger.debug("block of %s found after %d candidates", market.ids(Y), scanned)
            return BlockWitness(BlockKind.BLOCK, Z)
    logger.debug("no block of %s among %d candidates", market.ids(Y), scanned)
    return None


def find_weak_setwise_block(market: Market, Y: ContractSet) -> BlockWitness | None:
    scanned = 0
    for scanned, Z in enumerate(canonical_subsets(market.full & ~Y, market.id_order, min_size=1), 1):
        y_star = consistent_deviation(market, Y, Z)
        if y_star is not None:
            logger.debug("weak setwise block of %s found after %d candidates", market.ids(Y), scanned)
            return BlockWitness(BlockKind.WEAK_SETWISE, Z, y_star)
    logger.debug("no weak setwise block of %s among %d candidates", market.ids(Y), scanned)
    return None


def find_weak_setwise_block_exhaustive(market: Market, Y: ContractSet) -> BlockWitness | None:
    """Reference finder: tries every (Z, Y*) pair straight from the definition."""
    for Z in canonical_subsets(market.full & ~Y, market.id_order, min_size=1):
        union = Y | Z
        coalition = list(bits(market.signers(Z)))
        choices = {i: market.choose(i, union) for i in coalition}
        for y_star in canonical_subsets(union, market.id_order):
            if all(
                is_subset(market.restrict(Z, i), market.restrict(y_star, i))
                and market.restrict(y_star, i) == choices[i]
                for i in coalition
            ):
                return BlockWitness(BlockKind.WEAK_SETWISE, Z, y_star)
    return None


def find_setwise_block(market: Market, Y: ContractSet) -> BlockWitness | None:
    # Z = Y* minus Y is forced, so enumerating Y* alone covers every pair.
    scanned = 0
    for scanned, y_star in enumerate(canonical_subsets(market.full, market.id_order, min_size=1), 1):
        Z = y_star & ~Y
        if Z and setwise_improves(market, Y, y_star):
            logger.debug("setwise block of %s found after %d candidates", market.ids(Y), scanned)
            return BlockWitness(BlockKind.SETWISE, Z, y_star)
    logger.debug("no setwise block of %s among %d candidates", market.ids(Y), scanned)
    return None


# ---------------------------------------------------------
# Witness checking
# ---------------------------------------------------------
def carried_contracts(market: Market, Y: ContractSet, Z: ContractSet) -> ContractSet:
    """V: contracts of Y that no signer of Z is party to."""
    return Y & ~market.restrict_group(market.full, market.signers(Z))


def deviation_outcome(market: Market, Y: ContractSet, witness: BlockWitness) -> ContractSet:
    """The outcome a weak setwise or setwise block brings Y into: Y* u V."""
    if witness.y_star is None:
        raise ValueError("a plain block does not determine a deviation outcome")
    return witness.y_star | carried_contracts(market, Y, witness.z)


def validate_witness(market: Market, Y: ContractSet, witness: BlockWitness) -> list[str]:
    """Re-evaluate the witness clause by clause; returns the violated clauses."""
    problems = []
    Z, y_star = witness.z, witness.y_star
    union = Y | Z
    coalition = [market.agents[i] for i in bits(market.signers(Z))]

    if Z == 0:
        problems.append("Z is empty")
    if Z & Y:
        problems.append(f"Z meets Y in {market.format_set(Z & Y)}")
    if not is_subset(Z, market.full):
        problems.append("Z names contracts outside the market")

    if witness.kind is BlockKind.BLOCK:
        for agent in coalition:
            Z_i = market.restrict(Z, agent.index)
            if not is_subset(Z_i, market.choose(agent.index, union)):
                problems.append(f"{agent.name} does not choose all of {market.format_set(Z_i)}")
        return problems

    if y_star is None:
        problems.append(f"{witness.kind.value} witness without Y*")
        return problems
    if not is_subset(y_star, union):
        problems.append("Y* is not contained in Y u Z")

    if witness.kind is BlockKind.WEAK_SETWISE:
        for agent in coalition:
            i = agent.index
            portfolio = market.restrict(y_star, i)
            if not is_subset(market.restrict(Z, i), portfolio):
                problems.append(f"{agent.name}: Z_i is not inside Y*_i")
            if portfolio != market.choose(i, union):
                problems.append(f"{agent.name}: Y*_i is not its choice from Y u Z")
        if not is_subset(deviation_outcome(market, Y, witness), union):
            problems.append("deviation outcome leaves Y u Z")
        return problems

    if not is_subset(Z, y_star):
        problems.append("Z is not contained in Y*")
    for agent in coalition:
        i = agent.index
        portfolio = market.restrict(y_star, i)
        if not market.prefers(i, portfolio, market.restrict(Y, i)):
            problems.append(f"{agent.name} is not strictly better off in Y*")
        if market.choose(i, y_star) != portfolio:
            problems.append(f"Y* is not individually rational for {agent.name}")
    return problems

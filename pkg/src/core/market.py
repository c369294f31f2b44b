# src/core/market.py

"""
Problem-instance data model.

A market is a fixed list of agents, a fixed list of multi-signer contracts and
one strict preference per agent. Contract sets (outcomes, portfolios, blocking
sets) are plain ints used as bit vectors over the contract index space; agent
sets are ints over the agent index space.

Preferences are ranked lists of acceptable portfolios. The full strict order
over 2^{X_i} is completed as

    ranked entries (by rank)  >  empty set  >  unlisted sets

with unlisted sets ordered by ascending cardinality, then lexicographically by
sorted contract id. Choice functions never depend on the completion: the best
subset of any available set is always a ranked entry or the empty set.
"""

from dataclasses import dataclass, field
from enum import Enum
from collections.abc import Iterable

from src.errors import OutcomeError, Diagnostic, PreconditionError
from src.utils import bits, mask_of, is_subset, submasks

ContractSet = int
Outcome = int
AgentSet = int


class Comparison(Enum):
    FIRST = "first"
    SECOND = "second"
    EQUAL = "equal"


# Rank classes of the completed order, best first.
ACCEPTABLE = 0
NEUTRAL = 1
UNACCEPTABLE = 2


@dataclass(frozen=True)
class AgentId:
    name: str
    index: int


@dataclass(frozen=True)
class Contract:
    id: str
    index: int
    signers: frozenset[int]

    @property
    def signer_mask(self) -> AgentSet:
        return mask_of(self.signers)


@dataclass(frozen=True)
class Preference:
    agent: int
    ranked: tuple[ContractSet, ...]


@dataclass(frozen=True)
class Market:
    agents: tuple[AgentId, ...]
    contracts: tuple[Contract, ...]
    preferences: tuple[Preference, ...]

    # derived lookups, filled in __post_init__
    _agent_contracts: tuple[ContractSet, ...] = field(init=False, repr=False, compare=False)
    _contract_signers: tuple[AgentSet, ...] = field(init=False, repr=False, compare=False)
    _ranks: tuple[dict[ContractSet, int], ...] = field(init=False, repr=False, compare=False)
    _id_order: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _agent_by_name: dict[str, int] = field(init=False, repr=False, compare=False)
    _contract_by_id: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        agent_contracts = [0] * len(self.agents)
        for contract in self.contracts:
            for agent in contract.signers:
                agent_contracts[agent] |= 1 << contract.index

        ranks = tuple(
            {entry: rank for rank, entry in enumerate(pref.ranked)}
            for pref in self.preferences
        )
        id_order = tuple(c.index for c in sorted(self.contracts, key=lambda c: c.id))

        object.__setattr__(self, "_agent_contracts", tuple(agent_contracts))
        object.__setattr__(
            self, "_contract_signers", tuple(c.signer_mask for c in self.contracts)
        )
        object.__setattr__(self, "_ranks", ranks)
        object.__setattr__(self, "_id_order", id_order)
        object.__setattr__(self, "_agent_by_name", {a.name: a.index for a in self.agents})
        object.__setattr__(self, "_contract_by_id", {c.id: c.index for c in self.contracts})

    # ---------------------------------------------------------
    # Lookups
    # ---------------------------------------------------------
    @property
    def full(self) -> ContractSet:
        return (1 << len(self.contracts)) - 1

    @property
    def all_agents(self) -> AgentSet:
        return (1 << len(self.agents)) - 1

    @property
    def id_order(self) -> tuple[int, ...]:
        """Contract indices sorted by contract id (the lexicographic rank)."""
        return self._id_order

    def agent_index(self, name: str) -> int:
        try:
            return self._agent_by_name[name]
        except KeyError:
            raise OutcomeError([Diagnostic(None, name, "unknown agent")]) from None

    def contract_set(self, ids: Iterable[str]) -> ContractSet:
        mask = 0
        unknown = []
        for cid in ids:
            if cid in self._contract_by_id:
                mask |= 1 << self._contract_by_id[cid]
            else:
                unknown.append(Diagnostic(None, cid, "unknown contract id"))
        if unknown:
            raise OutcomeError(unknown)
        return mask

    def agent_set(self, names: Iterable[str]) -> AgentSet:
        return mask_of(self.agent_index(name) for name in names)

    def agent_contracts(self, i: int) -> ContractSet:
        """X_i: every contract agent i signs."""
        return self._agent_contracts[i]

    def contract_signers(self, index: int) -> AgentSet:
        return self._contract_signers[index]

    def ids(self, Y: ContractSet) -> tuple[str, ...]:
        return tuple(self.contracts[idx].id for idx in bits(Y))

    def agent_names(self, agents: AgentSet) -> tuple[str, ...]:
        return tuple(self.agents[idx].name for idx in bits(agents))

    def format_set(self, Y: ContractSet) -> str:
        return "{" + ",".join(self.ids(Y)) + "}"

    # ---------------------------------------------------------
    # Set algebra over N(.)
    # ---------------------------------------------------------
    def restrict(self, Y: ContractSet, i: int) -> ContractSet:
        return Y & self._agent_contracts[i]

    def restrict_group(self, Y: ContractSet, J: AgentSet) -> ContractSet:
        union = 0
        for i in bits(J):
            union |= self._agent_contracts[i]
        return Y & union

    def signers(self, Y: ContractSet) -> AgentSet:
        agents = 0
        for idx in bits(Y):
            agents |= self._contract_signers[idx]
        return agents

    # ---------------------------------------------------------
    # Preferences
    # ---------------------------------------------------------
    def ranked(self, i: int) -> tuple[ContractSet, ...]:
        return self.preferences[i].ranked

    def is_acceptable(self, i: int, S: ContractSet) -> bool:
        return S in self._ranks[i]

    def rank_class(self, i: int, S: ContractSet) -> int:
        if S in self._ranks[i]:
            return ACCEPTABLE
        if S == 0:
            return NEUTRAL
        return UNACCEPTABLE

    def preference_key(self, i: int, S: ContractSet) -> tuple:
        """Sort key of the completed strict order: smaller is better."""
        rank = self._ranks[i].get(S)
        if rank is not None:
            return (ACCEPTABLE, rank)
        if S == 0:
            return (NEUTRAL,)
        # completion rule for unlisted sets
        return (UNACCEPTABLE, S.bit_count(), tuple(sorted(self.ids(S))))

    def compare(self, i: int, A: ContractSet, B: ContractSet) -> Comparison:
        X_i = self._agent_contracts[i]
        if not is_subset(A, X_i) or not is_subset(B, X_i):
            raise PreconditionError(
                f"compare for agent '{self.agents[i].name}' needs subsets of X_i, "
                f"got {self.format_set(A)} and {self.format_set(B)}"
            )
        if A == B:
            return Comparison.EQUAL
        if self.preference_key(i, A) < self.preference_key(i, B):
            return Comparison.FIRST
        return Comparison.SECOND

    def prefers(self, i: int, A: ContractSet, B: ContractSet) -> bool:
        return self.compare(i, A, B) is Comparison.FIRST

    def choose(self, i: int, Y: ContractSet) -> ContractSet:
        """C_i(Y): the first ranked entry contained in Y_i, else the empty set."""
        Y_i = Y & self._agent_contracts[i]
        for entry in self.preferences[i].ranked:
            if entry & ~Y_i == 0:
                return entry
        return 0

    def choose_exhaustive(self, i: int, Y: ContractSet) -> ContractSet:
        """Reference choice: the compare-maximum over all 2^|Y_i| subsets."""
        Y_i = Y & self._agent_contracts[i]
        return min(submasks(Y_i), key=lambda S: self.preference_key(i, S))

    def is_individually_rational_for(self, i: int, Y: ContractSet) -> bool:
        return self.choose(i, Y) == Y & self._agent_contracts[i]

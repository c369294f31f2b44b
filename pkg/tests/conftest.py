from pathlib import Path

import pytest

from src.agent_target.parser import read_spec
from src.config import DATA_AGENT_TARGET, DATA_MARKETS
from src.core.market import ContractSet, Market
from src.core.parser import parse_outcome, read_market

MARKET_FILES = sorted(p.name for p in DATA_MARKETS.glob("*.mkt") if p.name != "one_signer.mkt")


def load(name: str) -> Market:
    return read_market(DATA_MARKETS / name)


def outcome(market: Market, text: str) -> ContractSet:
    return parse_outcome(market, text)


@pytest.fixture
def market_path():
    def _path(name: str) -> Path:
        return DATA_MARKETS / name

    return _path


@pytest.fixture
def atm_path():
    def _path(name: str) -> Path:
        return DATA_AGENT_TARGET / name

    return _path


@pytest.fixture
def no_stable():
    return load("no_stable_outcome.mkt")


@pytest.fixture
def compromise():
    return load("compromise_block.mkt")


@pytest.fixture
def three_party():
    return load("three_party.mkt")


@pytest.fixture
def reinstated():
    return load("reinstated_partner.mkt")


@pytest.fixture
def reinstated_ose():
    return load("reinstated_partner_ose.mkt")


@pytest.fixture
def wide_drop():
    return load("wide_contract_drop.mkt")


@pytest.fixture
def groups_drop():
    return load("different_groups_drop.mkt")


@pytest.fixture
def empty_prefs():
    return load("empty_prefs.mkt")


@pytest.fixture
def bilateral_spec():
    return read_spec(DATA_AGENT_TARGET / "bilateral_agreements.atm")

from src.core.market import (
    AgentId,
    Comparison,
    Contract,
    ContractSet,
    Market,
    Outcome,
    Preference,
)
from src.core.parser import (
    RawMarket,
    format_market,
    parse_market,
    parse_market_text,
    parse_outcome,
    read_market,
    validate_market,
    write_market,
)

# src/cli.py

"""
Command-line entry point: `uv run python -m src.cli <command> ...`.

Exit codes: 0 success, 1 input or validation error, 2 size cap or sampling
failure, 3 I/O error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.agent_target.model import compile_to_text
from src.agent_target.parser import format_spec, read_spec
from src.conditions.checks import Condition
from src.conditions.report import format_conditions_structured, format_conditions_text
from src.config import (
    DEFAULT_AGENTS,
    DEFAULT_ATM_CONTRACTS,
    DEFAULT_CONTRACTS,
    DEFAULT_COOPERATIONS,
    DEFAULT_MAX_PORTFOLIOS,
    DEFAULT_MAX_SIGNERS,
    DEFAULT_TARGETS_PER_AGENT,
    CORPUS_SIZE,
    EXIT_INPUT,
    EXIT_IO,
    EXIT_OK,
    EXIT_RESOURCE,
    LOG_FORMAT,
    RNG_SEED,
)
from src.core.market import ContractSet, Market
from src.core.parser import format_market, parse_outcome, read_market
from src.corpus_pipeline import run_corpus, summarize, total_violations, write_summary
from src.csd.algorithm import (
    all_orderings,
    csd,
    csd_over_orderings,
    format_trace,
    format_trace_structured,
    parse_ordering,
    random_ordering,
)
from src.errors import (
    CapExceededError,
    MarketError,
    PreconditionError,
    SamplingExhaustedError,
)
from src.generate.agent_target import RandomSpecParams, generate_spec
from src.generate.markets import RandomMarketParams, generate_market
from src.stability.audit import audit, constrained_efficient_outcomes, enumerate_ir
from src.stability.report import format_structured, format_text

logger = logging.getLogger(__name__)

COMMANDS = ("check", "audit", "conditions", "csd", "ir", "efficient", "compile-atm", "random", "corpus")
CAP_ERRORS = {"less_than_equal", "less_than"}


class CliConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: Literal[
        "check", "audit", "conditions", "csd", "ir", "efficient", "compile-atm", "random", "corpus"
    ]
    path: Path | None = None
    outcome: str | None = None
    order: str | None = None
    all_orders: bool = False
    seed: int | None = Field(None, ge=0)
    condition: Condition | None = None
    format: Literal["text", "structured"] = "text"
    output: Path | None = None
    verbose: bool = False

    # random
    kind: Literal["market", "atm"] = "market"
    agents: int = DEFAULT_AGENTS
    contracts: int | None = None
    max_signers: int = DEFAULT_MAX_SIGNERS
    max_portfolios: int = DEFAULT_MAX_PORTFOLIOS
    cooperations: int = DEFAULT_COOPERATIONS
    targets: int = DEFAULT_TARGETS_PER_AGENT

    # corpus
    count: int = Field(CORPUS_SIZE, ge=0)

    @field_validator("condition", mode="before")
    @classmethod
    def _condition_from_cli_name(cls, value):
        if isinstance(value, str):
            return Condition.from_cli_name(value)
        return value


# ---------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multilateral-matching",
        description="Audit, compare and run mechanisms on multilateral matching markets.",
    )
    parser.add_argument("command", choices=COMMANDS, help="What to run")
    parser.add_argument("path", nargs="?", type=Path, help="Market or agent-target file")
    parser.add_argument("--outcome", help="Outcome literal such as {x,z}")
    parser.add_argument("--order", help="Comma-separated agent names for csd")
    parser.add_argument("--all-orders", action="store_true", help="Run csd over every ordering")
    parser.add_argument("--seed", type=int, help="Seed for random orderings and markets")
    parser.add_argument(
        "--condition",
        choices=[c.cli_name for c in Condition],
        help="Restrict conditions output, or filter random markets",
    )
    parser.add_argument("--format", choices=["text", "structured"], default="text")
    parser.add_argument("-o", "--output", type=Path, help="Write the result to this file")
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr")

    parser.add_argument("--kind", choices=["market", "atm"], default="market")
    parser.add_argument("--agents", type=int, default=DEFAULT_AGENTS)
    parser.add_argument("--contracts", type=int)
    parser.add_argument("--max-signers", type=int, default=DEFAULT_MAX_SIGNERS)
    parser.add_argument("--max-portfolios", type=int, default=DEFAULT_MAX_PORTFOLIOS)
    parser.add_argument("--cooperations", type=int, default=DEFAULT_COOPERATIONS)
    parser.add_argument("--targets", type=int, default=DEFAULT_TARGETS_PER_AGENT)
    parser.add_argument("--count", type=int, default=CORPUS_SIZE)
    return parser


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text, encoding="utf-8")


def _require_path(config: CliConfig) -> Path:
    if config.path is None:
        raise PreconditionError(f"'{config.command}' needs an input file")
    return config.path


def _format_outcomes(market: Market, outcomes: tuple[ContractSet, ...], fmt: str) -> str:
    if fmt == "structured":
        lines = [f"count={len(outcomes)}"]
        lines += [f"outcome.{k}={market.format_set(Y)}" for k, Y in enumerate(outcomes, start=1)]
    else:
        lines = [market.format_set(Y) for Y in outcomes]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------
# Commands
# ---------------------------------------------------------
def cmd_check(config: CliConfig) -> int:
    read_market(_require_path(config))
    _emit("OK\n", config.output)
    return EXIT_OK


def cmd_audit(config: CliConfig) -> int:
    market = read_market(_require_path(config))
    if config.outcome is None:
        raise PreconditionError("audit needs --outcome")
    report = audit(market, parse_outcome(market, config.outcome))
    writer = format_structured if config.format == "structured" else format_text
    _emit(writer(market, report), config.output)
    return EXIT_OK


def cmd_conditions(config: CliConfig) -> int:
    market = read_market(_require_path(config))
    selected = [config.condition] if config.condition else None
    if config.format == "structured":
        _emit(format_conditions_structured(market, selected), config.output)
    else:
        _emit(format_conditions_text(market, selected), config.output)
    return EXIT_OK


def cmd_csd(config: CliConfig) -> int:
    market = read_market(_require_path(config))

    if config.all_orders:
        table = csd_over_orderings(market, all_orderings(market))
        if config.format == "structured":
            text = table.to_csv(index=False)
        else:
            text = table.to_string(index=False) + "\n"
        _emit(text, config.output)
        return EXIT_OK

    if config.order is not None:
        order = parse_ordering(market, config.order)
    else:
        order = random_ordering(market, config.seed)
    _, trace = csd(market, order)
    writer = format_trace_structured if config.format == "structured" else format_trace
    _emit(writer(market, trace), config.output)
    return EXIT_OK


def cmd_ir(config: CliConfig) -> int:
    market = read_market(_require_path(config))
    _emit(_format_outcomes(market, enumerate_ir(market), config.format), config.output)
    return EXIT_OK


def cmd_efficient(config: CliConfig) -> int:
    market = read_market(_require_path(config))
    outcomes = constrained_efficient_outcomes(market)
    _emit(_format_outcomes(market, outcomes, config.format), config.output)
    return EXIT_OK


def cmd_compile_atm(config: CliConfig) -> int:
    spec = read_spec(_require_path(config))
    _emit(compile_to_text(spec), config.output)
    return EXIT_OK


def cmd_random(config: CliConfig) -> int:
    seed = RNG_SEED if config.seed is None else config.seed
    if config.kind == "atm":
        params = RandomSpecParams(
            agents=config.agents,
            cooperations=config.cooperations,
            contracts=DEFAULT_ATM_CONTRACTS if config.contracts is None else config.contracts,
            targets_per_agent=config.targets,
            seed=seed,
        )
        _emit(format_spec(generate_spec(params)), config.output)
        return EXIT_OK

    params = RandomMarketParams(
        agents=config.agents,
        contracts=DEFAULT_CONTRACTS if config.contracts is None else config.contracts,
        max_signers=config.max_signers,
        max_portfolios=config.max_portfolios,
        seed=seed,
    )
    _emit(format_market(generate_market(params, config.condition)), config.output)
    return EXIT_OK


def cmd_corpus(config: CliConfig) -> int:
    seed = RNG_SEED if config.seed is None else config.seed
    df = run_corpus(seed=seed, count=config.count)
    path = write_summary(df, config.output)
    sys.stdout.write(summarize(df))
    sys.stdout.write(f"summary written to {path}\n")
    return EXIT_OK if total_violations(df) == 0 else EXIT_RESOURCE


DISPATCH = {
    "check": cmd_check,
    "audit": cmd_audit,
    "conditions": cmd_conditions,
    "csd": cmd_csd,
    "ir": cmd_ir,
    "efficient": cmd_efficient,
    "compile-atm": cmd_compile_atm,
    "random": cmd_random,
    "corpus": cmd_corpus,
}


# ---------------------------------------------------------
# Entry point
# ---------------------------------------------------------
def _validation_exit(exc: ValidationError) -> int:
    if any(err["type"] in CAP_ERRORS for err in exc.errors()):
        return EXIT_RESOURCE
    return EXIT_INPUT


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )

    try:
        config = CliConfig(**vars(args))
        logger.debug("running %s with %s", config.command, config)
        return DISPATCH[config.command](config)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _validation_exit(exc)
    except MarketError as exc:
        for diagnostic in exc.diagnostics:
            print(f"error: {diagnostic}", file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CapExceededError, SamplingExhaustedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

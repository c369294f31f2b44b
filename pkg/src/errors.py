# src/errors.py

from dataclasses import dataclass


@dataclass(frozen=True)
class Diagnostic:
    line: int | None
    entity: str
    message: str

    def __str__(self) -> str:
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{where}{self.entity}: {self.message}"


class MatchingError(Exception):
    """Root of every error raised by the engine."""


class MarketError(MatchingError, ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


class AgentTargetError(MarketError):
    pass


class OutcomeError(MarketError):
    pass


class OrderingError(MarketError):
    pass


class PreconditionError(MatchingError, ValueError):
    pass


class CapExceededError(MatchingError):
    pass


class SamplingExhaustedError(MatchingError):
    def __init__(self, condition: str, attempts: dict[str, int], cap: int):
        self.condition = condition
        self.attempts = dict(attempts)
        self.cap = cap
        stats = ", ".join(f"{agent}={n}" for agent, n in self.attempts.items())
        super().__init__(
            f"no preference passing '{condition}' within {cap} attempts ({stats})"
        )

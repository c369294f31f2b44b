# src/config.py

from pathlib import Path

# -----------------------------
# Size caps
# -----------------------------
# Every auditor is exhaustive, so the caps keep the worst case tractable.
MAX_CONTRACTS = 24
MAX_AGENTS = 12

# Per-agent quantifier scans run over 3^|X_i| or 4^|X_i| instances.
MAX_AGENT_CONTRACTS = 12

# -----------------------------
# Random markets & sampling
# -----------------------------
RNG_SEED = 42
SAMPLING_ATTEMPT_CAP = 10_000

DEFAULT_AGENTS = 3
DEFAULT_CONTRACTS = 4
DEFAULT_MAX_SIGNERS = 3
DEFAULT_MAX_PORTFOLIOS = 4

# Agent-target specs
DEFAULT_COOPERATIONS = 5
DEFAULT_ATM_CONTRACTS = 5
DEFAULT_TARGETS_PER_AGENT = 4

# -----------------------------
# Corpus pipeline
# -----------------------------
CORPUS_SIZE = 200
CORPUS_MAX_AGENTS = 5
CORPUS_MAX_CONTRACTS = 8
CORPUS_ORDERINGS = 10  # seeded orderings when |I| is too large for all of them

# -----------------------------
# CLI
# -----------------------------
EXIT_OK = 0
EXIT_INPUT = 1
EXIT_RESOURCE = 2
EXIT_IO = 3

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# -----------------------------
# Paths
# -----------------------------
PROJECT_ROOT = Path(__file__).resolve().parents[1]
DATA_MARKETS = PROJECT_ROOT / "data/markets"
DATA_AGENT_TARGET = PROJECT_ROOT / "data/agent_target"
DATA_PROCESSED = PROJECT_ROOT / "data/processed"

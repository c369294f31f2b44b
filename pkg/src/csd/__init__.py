from src.csd.algorithm import (
    CsdStep,
    CsdTrace,
    Ordering,
    all_orderings,
    csd,
    csd_feasible_extensions,
    csd_over_orderings,
    format_trace,
    parse_ordering,
    random_ordering,
)

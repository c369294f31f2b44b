from src.conditions.checks import (
    CHECKERS,
    Condition,
    ConditionReport,
    Counterexample,
    check,
    check_complementary,
    check_different_group_complementary,
    check_one_contract_per_group,
    check_ordinal_scale_economies,
    check_scale_economies,
    check_single_contract_se,
    counterexample_is_valid,
    holds_for_all,
)

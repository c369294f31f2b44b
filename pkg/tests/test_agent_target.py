import pytest

from src.agent_target.model import (
    AtmContract,
    AtmSpec,
    Cooperation,
    Target,
    achieved_targets,
    compile_spec,
    compile_to_text,
    induce_preference,
    target_assumption_violations,
    validate_spec,
)
from src.agent_target.parser import format_spec, parse_spec, read_spec
from src.conditions.checks import Condition, holds_for_all
from src.core.parser import format_market, parse_market
from src.errors import AgentTargetError, CapExceededError
from src.generate.agent_target import RandomSpecParams, generate_spec


def two_partner_spec() -> AtmSpec:
    return AtmSpec(
        agents=("A", "B", "C"),
        cooperations=(
            Cooperation("e1", frozenset({"A", "B"})),
            Cooperation("e2", frozenset({"A", "C"})),
        ),
        contracts=(AtmContract("x", ("e1",)), AtmContract("y", ("e2",))),
        targets=(Target("t", "A", frozenset({"e1", "e2"})),),
    )


def messages(exc: AgentTargetError) -> list[str]:
    return [d.message for d in exc.diagnostics]


def test_achieved_targets() -> None:
    spec = two_partner_spec()
    assert achieved_targets(spec, "A", []) == frozenset()
    assert achieved_targets(spec, "A", ["x", "y"]) == {"t"}
    assert achieved_targets(spec, "A", ["x"]) == frozenset()


def test_induced_preference_only_accepts_target_achieving_sets() -> None:
    spec = two_partner_spec()
    assert induce_preference(spec, "A") == (("x", "y"),)
    assert induce_preference(spec, "B") == ()


def test_fewer_contracts_win_on_equal_targets() -> None:
    spec = AtmSpec(
        agents=("A", "B"),
        cooperations=(
            Cooperation("e1", frozenset({"A", "B"})),
            Cooperation("e2", frozenset({"A", "B"})),
        ),
        contracts=(AtmContract("x", ("e1",)), AtmContract("xp", ("e1", "e2"))),
        targets=(Target("t", "A", frozenset({"e2"})),),
    )
    assert induce_preference(spec, "A") == (("xp",), ("x", "xp"))


def test_bilateral_agreements_preference(bilateral_spec) -> None:
    assert induce_preference(bilateral_spec, "A") == (
        ("y", "w"),
        ("x", "y", "w"),
        ("x", "y"),
        ("w",),
        ("x", "w"),
    )


def test_bilateral_agreements_compile(bilateral_spec) -> None:
    market = compile_spec(bilateral_spec)
    text = compile_to_text(bilateral_spec)

    assert [c.id for c in market.contracts] == ["x", "y", "z", "w"]
    assert market.agent_names(market.contracts[3].signer_mask) == ("A", "B")
    assert "pref A {y,w} {x,y,w} {x,y} {w} {x,w}\n" in text
    assert parse_market(text) == market
    assert format_market(parse_market(text)) == text
    assert holds_for_all(market, Condition.DIFFERENT_GROUP_COMPLEMENTARY)
    assert holds_for_all(market, Condition.SCALE_ECONOMIES)


def test_mixed_implementers_are_rejected(atm_path) -> None:
    with pytest.raises(AgentTargetError) as info:
        read_spec(atm_path("mixed_implementers.atm"))
    diag = info.value.diagnostics[0]
    assert diag.message == "contract must have uniform signer set"
    assert diag.entity == "x"
    assert diag.line == 4


def test_empty_spec_compiles_to_contractless_market(atm_path) -> None:
    text = compile_to_text(read_spec(atm_path("empty.atm")))
    assert text == "agents A B\npref A\npref B\n"


def test_spec_validation_messages() -> None:
    spec = AtmSpec(
        agents=("A", "B", "C"),
        cooperations=(
            Cooperation("e1", frozenset({"A", "B"})),
            Cooperation("e2", frozenset({"A"})),
        ),
        contracts=(AtmContract("x", ("e1", "e9")),),
        targets=(
            Target("t1", "C", frozenset({"e1"})),
            Target("t2", "A", frozenset()),
            Target("t3", "Q", frozenset({"e1"})),
        ),
    )
    with pytest.raises(AgentTargetError) as info:
        validate_spec(spec)
    found = messages(info.value)
    assert "cooperation must have ≥2 implementers" in found
    assert "unknown cooperation 'e9'" in found
    assert "target references cooperation 'e1' not involving its agent 'C'" in found
    assert "empty required set" in found
    assert "unknown agent 'Q'" in found


def test_parser_reports_bad_lines() -> None:
    with pytest.raises(AgentTargetError) as info:
        parse_spec("agents A B\ncoop\nbogus 1\ntarget A\n")
    assert messages(info.value) == ["too few arguments", "unknown directive", "too few arguments"]


def test_spec_writer_reads_back(bilateral_spec) -> None:
    assert parse_spec(format_spec(bilateral_spec)) == bilateral_spec


def test_per_agent_cap() -> None:
    coop = Cooperation("e", frozenset({"A", "B"}))
    spec = AtmSpec(
        agents=("A", "B"),
        cooperations=(coop,),
        contracts=tuple(AtmContract(f"x{k}", ("e",)) for k in range(13)),
        targets=(),
    )
    with pytest.raises(CapExceededError):
        induce_preference(spec, "A")


def test_generated_specs_are_deterministic() -> None:
    params = RandomSpecParams(seed=11)
    assert format_spec(generate_spec(params)) == format_spec(generate_spec(params))


@pytest.mark.parametrize("seed", range(200))
def test_compiled_markets_keep_different_groups_complementary(seed: int) -> None:
    spec = generate_spec(
        RandomSpecParams(agents=3, cooperations=5, contracts=5, targets_per_agent=4, seed=seed)
    )
    market = compile_spec(spec)
    assert holds_for_all(market, Condition.DIFFERENT_GROUP_COMPLEMENTARY)
    assert holds_for_all(market, Condition.SCALE_ECONOMIES)
    for agent in spec.agents:
        assert target_assumption_violations(spec, market, agent) == []


@pytest.mark.parametrize("seed", range(20))
def test_achieved_targets_grow_with_the_portfolio(seed: int) -> None:
    spec = generate_spec(RandomSpecParams(seed=seed))
    for agent in spec.agents:
        own = [x.id for x in spec.contracts if agent in spec.cooperation(x.cooperations[0]).implementers]
        for k in range(len(own)):
            assert achieved_targets(spec, agent, own[:k]) <= achieved_targets(spec, agent, own[: k + 1])

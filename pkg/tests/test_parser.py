import pytest

from src.config import MAX_CONTRACTS
from src.core.parser import format_market, parse_market, parse_outcome, read_market, write_market
from src.errors import CapExceededError, MarketError, OutcomeError

from conftest import MARKET_FILES


def messages(exc: MarketError) -> list[str]:
    return [d.message for d in exc.diagnostics]


def test_reads_sample_market(three_party) -> None:
    m = three_party
    assert [a.name for a in m.agents] == ["i1", "i2", "i3"]
    assert [c.id for c in m.contracts] == ["x", "y", "z", "u"]
    assert m.agent_names(m.contracts[3].signer_mask) == ("i1", "i2", "i3")
    assert [m.format_set(e) for e in m.ranked(m.agent_index("i1"))] == ["{x,y,u}", "{x,u}"]


def test_missing_pref_line_means_empty_preference(empty_prefs) -> None:
    assert empty_prefs.ranked(empty_prefs.agent_index("Bob")) == ()
    assert empty_prefs.ranked(empty_prefs.agent_index("Ana")) == ()


def test_comments_and_blank_lines_are_ignored() -> None:
    m = parse_market("# header\n\nagents A B   # two\ncontract x A B\npref A {x}\n")
    assert len(m.contracts) == 1


def test_one_signer_contract_is_rejected(market_path) -> None:
    with pytest.raises(MarketError) as info:
        read_market(market_path("one_signer.mkt"))
    diag = info.value.diagnostics[0]
    assert diag.line == 2
    assert diag.entity == "x"
    assert "≥2 signers" in diag.message


def test_all_problems_are_reported_together() -> None:
    text = "\n".join(
        [
            "agents A B C",
            "contract x A B",
            "contract x A C",
            "contract y A D",
            "pref A {x} {x}",
            "pref C {x}",
            "pref A {x}",
            "frobnicate",
        ]
    )
    with pytest.raises(MarketError) as info:
        parse_market(text)
    found = messages(info.value)
    assert "unknown directive" in found
    assert "duplicate contract id" in found
    assert "unknown signer 'D'" in found
    assert "duplicate pref line" in found
    assert any(m.startswith("duplicate preference entry") for m in found)
    assert any(m.startswith("entry not in X_i") for m in found)


def test_malformed_and_empty_sets() -> None:
    with pytest.raises(MarketError) as info:
        parse_market("agents A B\ncontract x A B\npref A {x,} {} {x,x}\n")
    found = messages(info.value)
    assert "malformed set" in found

    with pytest.raises(MarketError) as info:
        parse_market("agents A B\ncontract x A B\npref A {} {x,x}\n")
    found = messages(info.value)
    assert any("implicit" in m for m in found)
    assert any("repeated contract" in m for m in found)


def test_preference_for_unknown_agent() -> None:
    with pytest.raises(MarketError) as info:
        parse_market("agents A B\ncontract x A B\npref Q {x}\n")
    assert messages(info.value) == ["preference for unknown agent"]


def test_agents_line_is_required() -> None:
    for text in ("", "# nothing here\n", "contract x A B\n"):
        with pytest.raises(MarketError) as info:
            parse_market(text)
        assert "missing agents line" in messages(info.value)


def test_caps_are_enforced() -> None:
    lines = ["agents A B"] + [f"contract c{k} A B" for k in range(MAX_CONTRACTS + 1)]
    with pytest.raises(CapExceededError):
        parse_market("\n".join(lines))


def test_parse_outcome_rejects_bad_literals(no_stable) -> None:
    assert parse_outcome(no_stable, "{}") == 0
    assert parse_outcome(no_stable, " {y,x} ") == no_stable.full
    for text in ("x,y", "{x,q}", "{x,x}", "{x y}"):
        with pytest.raises(OutcomeError):
            parse_outcome(no_stable, text)


@pytest.mark.parametrize("name", MARKET_FILES)
def test_writer_output_reparses_to_same_market(market_path, name: str) -> None:
    m = read_market(market_path(name))
    text = format_market(m)
    assert parse_market(text) == m
    assert format_market(parse_market(text)) == text


def test_writer_emits_bare_pref_for_empty_list(empty_prefs, tmp_path) -> None:
    path = tmp_path / "out.mkt"
    write_market(empty_prefs, path)
    assert path.read_text(encoding="utf-8") == (
        "agents Ana Bob\ncontract x Ana Bob\ncontract y Ana Bob\npref Ana\npref Bob\n"
    )

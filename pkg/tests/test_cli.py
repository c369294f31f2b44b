import logging

import pytest

from src.cli import main
from src.config import DATA_AGENT_TARGET, DATA_MARKETS


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def market(name: str) -> str:
    return str(DATA_MARKETS / name)


def atm(name: str) -> str:
    return str(DATA_AGENT_TARGET / name)


def test_check(capsys) -> None:
    assert run(capsys, "check", market("three_party.mkt")) == (0, "OK\n", "")


def test_check_reports_diagnostics(capsys) -> None:
    code, out, err = run(capsys, "check", market("one_signer.mkt"))
    assert code == 1
    assert out == ""
    assert err.startswith("error: line 2: x:")


def test_check_rejects_a_file_without_agents(capsys, tmp_path) -> None:
    path = tmp_path / "empty.mkt"
    path.write_text("")
    code, out, err = run(capsys, "check", str(path))
    assert code == 1
    assert out == ""
    assert err == "error: agents: missing agents line\n"


def test_missing_file_is_an_io_error(capsys, tmp_path) -> None:
    code, _, err = run(capsys, "check", str(tmp_path / "nope.mkt"))
    assert code == 3
    assert err.startswith("error:")


def test_unknown_command_and_missing_path(capsys) -> None:
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "check")[0] == 1


def test_audit_structured(capsys) -> None:
    code, out, _ = run(
        capsys, "audit", market("compromise_block.mkt"), "--outcome", "{y}", "--format", "structured"
    )
    assert code == 0
    assert "stable=true\n" in out
    assert "setwise_stable=false\n" in out
    assert "setwise_block.z={x,z}\n" in out
    assert "setwise_block.ystar={x,z}\n" in out


def test_audit_text(capsys) -> None:
    code, out, _ = run(capsys, "audit", market("reinstated_partner.mkt"), "--outcome", "{y,z,u}")
    assert code == 0
    assert out.startswith("outcome {y,z,u}\n")
    assert "weakly setwise stable   : yes" in out
    assert "setwise stable          : no  (blocked by Z={x}, Y*={x,u})" in out


def test_audit_of_the_empty_outcome(capsys) -> None:
    code, out, _ = run(
        capsys, "audit", market("no_stable_outcome.mkt"), "--outcome", "{}", "--format", "structured"
    )
    assert code == 0
    assert "constrained_efficient=false\n" in out
    assert "dominator={x}\n" in out


def test_audit_rejects_bad_outcomes(capsys) -> None:
    path = market("compromise_block.mkt")
    assert run(capsys, "audit", path, "--outcome", "{q}")[0] == 1
    assert run(capsys, "audit", path)[0] == 1


def test_conditions(capsys) -> None:
    code, out, _ = run(capsys, "conditions", market("reinstated_partner.mkt"), "--format", "structured")
    assert code == 0
    assert "Ana.ordinal-se=false\n" in out
    assert "Bob.ordinal-se=true\n" in out

    code, out, _ = run(
        capsys, "conditions", market("reinstated_partner.mkt"),
        "--condition", "complementary", "--format", "structured",
    )
    assert code == 0
    assert "ordinal-se" not in out


def test_conditions_cap(capsys, tmp_path) -> None:
    path = tmp_path / "wide.mkt"
    path.write_text("agents A B\n" + "".join(f"contract c{k} A B\n" for k in range(13)))
    code, _, err = run(capsys, "conditions", str(path))
    assert code == 2
    assert err.startswith("error:")


def test_csd_with_order(capsys) -> None:
    code, out, _ = run(capsys, "csd", market("three_party.mkt"), "--order", "i1,i2,i3")
    assert code == 0
    assert out.endswith("result={x,z,u}\n")


def test_csd_bad_order(capsys) -> None:
    assert run(capsys, "csd", market("three_party.mkt"), "--order", "i1,i1,i2")[0] == 1


def test_csd_seeded_runs_repeat(capsys) -> None:
    first = run(capsys, "csd", market("reinstated_partner.mkt"), "--seed", "5")
    second = run(capsys, "csd", market("reinstated_partner.mkt"), "--seed", "5")
    assert first == second
    assert first[0] == 0


def test_csd_all_orders(capsys) -> None:
    code, out, _ = run(
        capsys, "csd", market("three_party.mkt"), "--all-orders", "--format", "structured"
    )
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "ordering,outcome,completion_rule_steps"
    assert len(lines) == 7
    assert all(line.endswith(',"{x,z,u}",0') for line in lines[1:])


def test_ir_and_efficient(capsys) -> None:
    assert run(capsys, "ir", market("reinstated_partner.mkt")) == (0, "{}\n{y,z,u}\n", "")
    assert run(capsys, "efficient", market("no_stable_outcome.mkt")) == (0, "{x}\n", "")
    assert run(capsys, "efficient", market("compromise_block.mkt")) == (0, "{x,z}\n", "")

    code, out, _ = run(capsys, "ir", market("compromise_block.mkt"), "--format", "structured")
    assert code == 0
    assert out == "count=3\noutcome.1={}\noutcome.2={y}\noutcome.3={x,z}\n"


def test_compile_atm_writes_a_checkable_market(capsys, tmp_path) -> None:
    target = tmp_path / "bilateral.mkt"
    assert run(capsys, "compile-atm", atm("bilateral_agreements.atm"), "-o", str(target))[0] == 0
    assert "pref A {y,w} {x,y,w} {x,y} {w} {x,w}\n" in target.read_text()
    assert run(capsys, "check", str(target)) == (0, "OK\n", "")


def test_compile_atm_errors_and_empty_spec(capsys) -> None:
    code, _, err = run(capsys, "compile-atm", atm("mixed_implementers.atm"))
    assert code == 1
    assert "contract must have uniform signer set" in err
    assert run(capsys, "compile-atm", atm("empty.atm")) == (0, "agents A B\npref A\npref B\n", "")


def test_random_is_reproducible(capsys, tmp_path) -> None:
    first = run(capsys, "random", "--seed", "42")
    second = run(capsys, "random", "--seed", "42")
    assert first == second
    assert first[1].startswith("agents i1 i2 i3\n")

    target = tmp_path / "random.mkt"
    assert run(capsys, "random", "--seed", "42", "-o", str(target))[0] == 0
    assert target.read_text() == first[1]


def test_random_with_condition(capsys, tmp_path) -> None:
    target = tmp_path / "se.mkt"
    code, _, _ = run(
        capsys, "random", "--seed", "3", "--agents", "3", "--contracts", "4",
        "--condition", "scale-economies", "-o", str(target),
    )
    assert code == 0
    code, out, _ = run(capsys, "conditions", str(target), "--condition", "scale-economies",
                       "--format", "structured")
    assert code == 0
    assert "=false" not in out.split("one_contract_per_group")[0]


@pytest.mark.parametrize("flag, value", [("--agents", "13"), ("--contracts", "25")])
def test_random_size_caps(capsys, flag: str, value: str) -> None:
    assert run(capsys, "random", flag, value)[0] == 2


def test_random_agent_target_spec(capsys, tmp_path) -> None:
    target = tmp_path / "random.atm"
    assert run(capsys, "random", "--kind", "atm", "--seed", "4", "-o", str(target))[0] == 0
    assert run(capsys, "compile-atm", str(target))[0] == 0


def test_corpus(capsys, tmp_path) -> None:
    target = tmp_path / "summary.csv"
    code, out, _ = run(capsys, "corpus", "--count", "10", "--seed", "1", "-o", str(target))
    assert code == 0
    assert out.startswith("markets: 10\n")
    assert "total violations: 0\n" in out
    assert target.exists()


def test_dispatch_is_logged(capsys, caplog) -> None:
    with caplog.at_level(logging.DEBUG, logger="src.cli"):
        assert run(capsys, "check", market("three_party.mkt"), "--verbose")[0] == 0
    assert any(message.startswith("running check with ") for message in caplog.messages)

import json

import pytest

from skewtower.cli import SpecError, main, parse_spec

BASE = "[tower]\np = 2\nprimes = 2, 3\ntruncation = 1\n"


@pytest.fixture
def spec(tmp_path):
    def write(text, name="tower.ini"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_schedule_three_primes(spec, capsys):
    code, out, _ = run(capsys, "schedule", "--spec", spec("[tower]\np = 2\nprimes = 2, 3, 5\n"))
    report = json.loads(out)
    assert code == 0
    assert report["schedule"]["l"] == [2, 6, 150]
    assert report["status"] == "pass" and report["schema"] == "1"
    assert out.endswith("\n")


def test_schedule_tampered_fails_with_index(spec, capsys):
    code, out, _ = run(capsys, "schedule", "--spec", spec(BASE + "[overrides]\nl = 2, 4\n"))
    report = json.loads(out)
    assert code == 1
    assert report["validation"]["first_failing_index"] == 0


@pytest.mark.parametrize("text", [
    "[tower]\np = 2\nprimes = 2, 2\n",
    "[tower]\np = 2\nprimes = 2, 3\n[gext]\npreset = kummer\n",
    "[tower]\np = 2\n",
    "[tower]\np = 2\nprimes = 2, x\n",
    "[tower]\np = 2\nprimes = 2, 3\ncolour = red\n",
    "not an ini file",
])
def test_invalid_specs_exit_2(spec, capsys, text):
    code, _, err = run(capsys, "schedule", "--spec", spec(text))
    assert code == 2 and err


def test_missing_spec_file(capsys, tmp_path):
    assert run(capsys, "schedule", "--spec", str(tmp_path / "none.ini"))[0] == 2


def test_usage_errors_exit_2(spec, capsys):
    path = spec(BASE)
    assert run(capsys, "verify", "--spec", path, "--suite", "")[0] == 2
    assert run(capsys, "verify", "--spec", path, "--suite", "bogus")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_verify_gext_suite(spec, capsys, tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--spec", spec(BASE), "--suite", "gext", "--out", str(out)])
    report = json.loads(out.read_text(encoding="utf-8"))
    assert code == 0 and report["status"] == "pass"
    names = [c["name"] for c in report["checks"]]
    assert names == sorted(names)
    assert {"gext.diagrams", "gext.fixed_field", "gext.outerness"} <= set(names)


def test_verify_artin_suite(spec, capsys):
    code, out, _ = run(capsys, "verify", "--spec", spec(BASE), "--suite", "artin")
    report = json.loads(out)
    assert code == 0
    compiler = next(c for c in report["checks"] if c["name"] == "artin.compiler")
    assert compiler["witness"]["disagreements"] == 0


def test_verify_invalid_schedule_exit_1(spec, capsys):
    code, out, _ = run(capsys, "verify", "--spec", spec(BASE + "[overrides]\nl = 2, 4\n"), "--suite", "tower")
    assert code == 1 and json.loads(out)["status"] == "fail"


def test_timings_are_opt_in(spec, capsys):
    _, out, _ = run(capsys, "verify", "--spec", spec(BASE), "--suite", "schedule")
    assert "elapsed_seconds" not in json.loads(out)
    _, out, _ = run(capsys, "verify", "--spec", spec(BASE), "--suite", "schedule", "--timings")
    assert "elapsed_seconds" in json.loads(out)


def test_seed_flag_changes_spec_echo(spec, capsys):
    _, out, _ = run(capsys, "verify", "--spec", spec(BASE), "--suite", "field", "--seed", "7")
    assert json.loads(out)["spec"]["seed"] == 7


def test_explain(spec, capsys):
    path = spec(BASE)
    assert run(capsys, "explain", "--spec", path, "u_0")[1] == (
        "t ↦ t³; morphism conditions: 2|2, 6|6, 3≡1 (mod 2)\n"
    )
    assert run(capsys, "explain", "--spec", path, "root t0")[1] == "t_0 = t_1³\n"
    assert run(capsys, "explain", "--spec", path, "psi_0")[1].startswith("psi_0 = h_0: σ, h_1: σ³")
    assert run(capsys, "explain", "--spec", path, "v_0")[1].startswith("X_2 ↦ X_6")
    assert run(capsys, "explain", "--spec", path, "w_9")[0] == 2
    assert run(capsys, "explain", "--spec", path, "u_5")[0] == 2


def test_parse_spec_defaults():
    s = parse_spec(BASE)
    assert (s.preset, s.precision, s.samples, s.seed) == ("artin_schreier", 20, 20, 0)
    with pytest.raises(SpecError):
        parse_spec(BASE + "[checks]\nseed = -1\n")

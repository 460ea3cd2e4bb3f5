import json
import subprocess
import sys
from fractions import Fraction as Q

import pytest

from artifact.cli import WeightSyntaxError, emit, main, parse_weight
from artifact.root_data import BETA2, Weight, basis_weight
from artifact.affine import Affine

s, t, z = Affine.var("s"), Affine.var("t"), Affine.var("z")


@pytest.mark.parametrize("text,want", [
    ("s*b2", BETA2 * s),
    ("1/2*a1 + a3", basis_weight("a1") / 2 + basis_weight("a3")),
    ("t*a2/2 + z*a4/2", Weight.from_tz(t, z)),
    ("a3 - 1/2*a1", basis_weight("a3") - basis_weight("a1") / 2),
    ("-a4", -basis_weight("a4")),
    ("3/4*a4", basis_weight("a4") * Q(3, 4)),
])
def test_parse_weight(text, want):
    assert parse_weight(text) == want


@pytest.mark.parametrize("text,pos", [("a1 +", 4), ("a5", 0), ("1/0*a1", 2), ("s*t*a1", 2), ("a1 ) ", 3)])
def test_weight_syntax_errors_report_a_position(text, pos):
    with pytest.raises(WeightSyntaxError) as info:
        parse_weight(text)
    assert info.value.position == pos


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "weyl", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    rows = rows["rows"] if isinstance(rows, dict) else rows
    assert len(rows) == 8


def test_gk_text(capsys):
    code, out, _ = run(capsys, "gk", "--weyl", "w212", "--weight", "s*b2")
    assert code == 0
    assert "L(2*s,tau,Sym2)/L(2*s + 1,tau,Sym2)" in out


def test_residue_reports_the_constant(capsys):
    code, out, _ = run(capsys, "residue", "--path", "S2:z=1/2", "--relations", "chi=mu,chi^2=1")
    assert code == 0
    assert "c = a_-1/2" in out
    assert "matches closed form(s): a_-1/2" in out


def test_spectrum_and_arthur(capsys):
    code, out, _ = run(capsys, "spectrum", "--parabolic", "borel", "--relations", "chi^2=1, mu^2=1, chi!=mu",
                       "--format", "json")
    assert code == 0
    assert "a3/2" in out
    code, out, _ = run(capsys, "arthur", "--type", "hps")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["gk", "--weyl", "w212", "--weight", "s*"],
    ["gk", "--weyl", "w13", "--weight", "s*b2"],
    ["residue", "--path", "S4:x=1"],
    ["residue", "--path", "S1:y=2", "--relations", "chi=mu, chi!=mu"],
    ["arthur", "--type", "hps", "--local", "chi=mu"],
    ["table", "roots"],
    ["verify", "--suite", "other"],
])
def test_usage_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err


def test_unsupported_exits_2(capsys, monkeypatch):
    # no preset reaches a pole the engine refuses, so force one to check the mapping
    from artifact import cli
    from artifact.residue_engine import UnsupportedPole

    def refuse(*args, **kw):
        raise UnsupportedPole("pole of order 3")

    monkeypatch.setattr(cli, "iterated_residue", refuse)
    code, out, err = run(capsys, "residue", "--path", "S1:y=2")
    assert code == 2
    assert out == "" and "unsupported: pole of order 3" in err


@pytest.mark.parametrize("argv", [
    ["table", "weyl"],
    ["constant-term", "--parabolic", "borel"],
    ["residue", "--path", "S1:y=2", "--relations", "chi=mu, chi^2=1"],
    ["spectrum", "--parabolic", "siegel", "--self-dual", "--nontrivial-quadratic"],
    ["arthur", "--type", "saito_kurokawa"],
])
def test_json_is_deterministic_and_round_trips(capsys, argv):
    _, first, _ = run(capsys, *argv, "--format", "json")
    _, second, _ = run(capsys, *argv, "--format", "json")
    assert first == second
    data = json.loads(first)
    assert emit(("", data), "json") == first


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "table.json"
    code, out, _ = run(capsys, "table", "weyl", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "artifact", "arthur", "--type", "principal"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "3/2" in proc.stdout

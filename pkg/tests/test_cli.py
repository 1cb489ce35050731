import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest

from hypertoric import cli

from support import DATA, FIXTURES

SNAPSHOTS = DATA.parent / "snapshots"
FIXTURE_NAMES = sorted(p.stem for p in FIXTURES.glob("*.toml"))


def invoke(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- parsing ---------------------------------------------------------------

def test_parse_rational():
    assert cli.parse_rational("3/4") == Fraction(3, 4)
    assert cli.parse_rational("−2") == -2
    assert cli.parse_rational(5) == 5
    for bad in ("0.5", 0.5, True, "1/0", "x", None):
        with pytest.raises(cli.ParseError):
            cli.parse_rational(bad)


def test_parse_spec_text_defaults():
    sf = cli.parse_spec_text('[torus]\nbasis = [[1, 1, 1]]\n[parameter]\nalpha = "2/3"\n')
    assert sf.N == 3 and sf.basis == [[1, 1, 1]]
    assert sf.parameter.alpha == (Fraction(2, 3),)
    assert sf.parameter.beta_re == (0,)
    assert sf.moduli is None


def test_point_formats():
    sf = cli.parse_spec(str(FIXTURES / "example1_point.toml"))
    assert sf.point.z == (1 + 0j, 1 + 0j)
    assert sf.moduli.z2 == (1, 1)
    sf = cli.parse_spec(str(FIXTURES / "example1_unstable.toml"))
    assert sf.point is None and sf.moduli.w2 == (1, 0)


@pytest.mark.parametrize("name, line, fragment", [
    ("syntax_error", 4, "malformed spec"),
    ("float_alpha", 6, "not an exact rational"),
    ("ragged_row", 5, "basis row 2 has length 2"),
    ("fractional_basis", 2, "is not an integer"),
    ("alpha_length", 5, "expected d=2"),
    ("zero_denominator", 5, "zero denominator"),
    ("negative_moduli", 8, "nonnegative"),
    ("missing_torus", None, "missing [torus]"),
])
def test_parse_errors_carry_line_numbers(name, line, fragment):
    with pytest.raises(cli.ParseError) as err:
        cli.parse_spec(str(DATA / f"{name}.toml"))
    assert err.value.line == line
    assert fragment in str(err.value)
    if line:
        assert str(err.value).startswith(f"line {line}:")


# -- exit codes ------------------------------------------------------------

@pytest.mark.parametrize("name, command, code", [
    ("syntax_error", "validate", 2),
    ("float_alpha", "betti", 2),
    ("ragged_row", "walls", 2),
    ("fractional_basis", "validate", 2),
    ("missing_torus", "validate", 2),
    ("alpha_length", "regular", 2),
    ("zero_denominator", "betti", 2),
    ("negative_moduli", "stability", 2),
    ("unsaturated", "validate", 3),
    ("rank_deficient", "walls", 3),
    ("nonregular", "betti", 3),
    ("nonregular", "core", 3),
    ("nonregular", "period", 3),
    ("no_parameter", "betti", 3),
    ("no_parameter", "stability", 3),
])
def test_exit_codes_for_malformed_corpus(capsys, name, command, code):
    got, out, err = invoke(capsys, command, str(DATA / f"{name}.toml"))
    assert got == code
    assert out == ""
    assert err.startswith("hypertoric:")


def test_missing_file_is_a_parse_error(capsys):
    assert invoke(capsys, "validate", str(DATA / "nope.toml"))[0] == 2


def test_usage_errors(capsys, monkeypatch):
    ex2 = str(FIXTURES / "example2.toml")
    assert invoke(capsys, "frobnicate", ex2)[0] == 1
    assert invoke(capsys, "cross", ex2)[0] == 1
    assert invoke(capsys, "cross", ex2, "--to", "1,x")[0] == 1
    assert invoke(capsys, "cross", ex2, "--to", "1")[0] == 1
    assert invoke(capsys, "betti", ex2, "--threads", "0")[0] == 1
    monkeypatch.setenv("HYPERTORIC_THREADS", "many")
    assert invoke(capsys, "betti", ex2)[0] == 1


def test_threads_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("HYPERTORIC_THREADS", "3")
    code, out, _ = invoke(capsys, "walls", str(FIXTURES / "example2.toml"))
    assert code == 0 and out.startswith("3 walls")


def test_internal_error(capsys, monkeypatch):
    def boom(ctx):
        raise RuntimeError("boom")

    monkeypatch.setitem(cli.COMMANDS, "walls", boom)
    code, _, err = invoke(capsys, "walls", str(FIXTURES / "example2.toml"))
    assert code == 4 and "internal error" in err


def test_wall_crossing_errors_are_preconditions(capsys):
    ex2 = str(FIXTURES / "example2.toml")
    assert invoke(capsys, "cross", ex2, "--to", "4,1")[0] == 3
    assert invoke(capsys, "cross", ex2, "--to=-1,1")[0] == 3


# -- outputs ---------------------------------------------------------------

def test_text_outputs(capsys):
    ex2 = str(FIXTURES / "example2.toml")
    assert invoke(capsys, "chambers", ex2)[1] == "6 chambers\n"
    assert invoke(capsys, "betti", ex2)[1] == "P = 1 + 2t^2 + 3t^4 + 2t^6\n"
    assert invoke(capsys, "smooth", ex2)[1] == "smooth\n"
    assert invoke(capsys, "cross", ex2, "--to", "1,3")[1].startswith(
        "mukai_flop across W_3: fiber CP^3, codim 3")
    assert invoke(capsys, "ring", "--reduced", str(FIXTURES / "example1_n3.toml"))[1] == "Z[v]/(v^4)\n"
    out = invoke(capsys, "flow", str(FIXTURES / "example1_point.toml"))[1]
    assert out.startswith("converged, X* = (0.693147")
    assert invoke(capsys, "stability", str(FIXTURES / "example1_unstable.toml"))[1] == "unstable\n"


def test_flow_json(capsys):
    code, out, _ = invoke(capsys, "flow", "--json", str(FIXTURES / "example1_point.toml"))
    res = json.loads(out)["results"]
    assert code == 0 and res["status"] == "converged"
    assert abs(res["minimizer"][0] - math.log(2)) < 1e-9
    code, out, _ = invoke(capsys, "flow", "--json", str(FIXTURES / "example1_unstable.toml"))
    res = json.loads(out)["results"]
    assert res["status"] == "diverged" and res["certificate"] == [-1]


def test_core_json(capsys):
    code, out, _ = invoke(capsys, "core", "--json", str(FIXTURES / "example2.toml"))
    res = json.loads(out)["results"]
    assert [c["sign"] for c in res["components"]] == ["+++++", "++-+-"]
    assert [c["betti"] for c in res["components"]] == [[1, 2, 2, 1], [1, 1, 1, 1]]
    assert res["intersections"] == [{"components": [1, 2], "face": "++0+0", "dim": 1}]


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_report_matches_snapshot(capsys, name):
    code, out, _ = invoke(capsys, "report", "--json", str(FIXTURES / f"{name}.toml"))
    assert code == 0
    assert out == (SNAPSHOTS / f"{name}.json").read_text(encoding="utf-8")
    # serialization round-trips byte for byte
    assert cli.dumps(json.loads(out)) == out


def test_svg_output(tmp_path, capsys):
    path = tmp_path / "ch.svg"
    code, _, _ = invoke(capsys, "chambers", str(FIXTURES / "example2.toml"), "--svg", str(path))
    assert code == 0 and path.read_text().startswith("<?xml")
    code, _, err = invoke(capsys, "arrangement", str(FIXTURES / "example2.toml"),
                          "--svg", str(tmp_path / "a.svg"))
    assert code == 3 and "n=2" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypertoric", "walls",
                           str(FIXTURES / "example2.toml")], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("3 walls")

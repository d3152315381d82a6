import json
import subprocess
import sys

import pytest

from cyclica import registry as R
from cyclica.cli import main
from cyclica.specfile import ParseError, SpecFile, ValidationError, parse_spec, serialize


def _dual_numbers_json():
    return json.loads(serialize(R.algebra("dual-numbers")))


# spec files --------------------------------------------------------------------

@pytest.mark.parametrize("name", R.algebra_names())
def test_algebra_round_trip(name):
    alg = R.algebra(name)
    back = parse_spec(serialize(alg)).algebra
    assert back.dim == alg.dim
    assert back.entries() == alg.entries()
    assert back.unit == alg.unit
    assert serialize(back, name=alg.name) == serialize(alg)


@pytest.mark.parametrize("name", ["z2-on-dual-numbers", "h4-on-dual-numbers"])
def test_action_round_trip(name):
    act = R.action(name)
    spec = parse_spec(serialize(act))
    assert spec.action.entries() == act.entries()
    assert spec.hopf.antipode == act.hopf.antipode
    assert spec.hopf.antipode_inverse == act.hopf.antipode_inverse
    assert spec.hopf.semisimple == act.hopf.semisimple


def test_subalgebra_round_trip():
    alg = R.algebra("group-algebra:z4")
    spec = SpecFile("z4", alg, subalgebra=R.unit_subalgebra(alg))
    back = parse_spec(serialize(spec))
    assert back.subalgebra.embed == spec.subalgebra.embed


def test_division_by_zero_scalar():
    data = _dual_numbers_json()
    data["algebra"]["unit"][1] = "1/0"
    with pytest.raises(ParseError) as exc:
        parse_spec(json.dumps(data))
    assert exc.value.location == "$.algebra.unit[1]"


@pytest.mark.parametrize("bad", [1.0, True, "0.5", "1e3"])
def test_inexact_scalars_rejected(bad):
    data = _dual_numbers_json()
    data["algebra"]["unit"][0] = bad
    with pytest.raises(ParseError):
        parse_spec(json.dumps(data))


def test_non_associative_names_quadruple():
    data = _dual_numbers_json()
    # x x = 1 and x 1 = -x: no longer associative
    data["algebra"]["mul"] = [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "-1"], [1, 1, 0, "1"]]
    with pytest.raises(ValidationError) as exc:
        parse_spec(json.dumps(data))
    assert exc.value.axiom == "associativity"
    assert len(exc.value.witness) == 4


def test_malformed_json_reports_line():
    with pytest.raises(ParseError) as exc:
        parse_spec('{\n  "name": "x",\n  "algebra": [\n}')
    assert exc.value.location.startswith("line ")


def test_non_rational_field_rejected():
    data = _dual_numbers_json()
    data["field"] = "GF(2)"
    with pytest.raises(ParseError):
        parse_spec(json.dumps(data))


# command line ------------------------------------------------------------------

def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ground_field_table(capsys):
    code, out, _ = run(capsys, "compute", "hc", "--algebra", "ground-field", "--max-degree", "4", "--format", "json")
    assert code == 0
    assert [r["hc_dim"] for r in json.loads(out)["rows"]][:4] == [1, 0, 1, 0]


def test_dual_numbers_degree_zero(capsys):
    code, out, _ = run(capsys, "compute", "hc", "--algebra", "dual-numbers", "--max-degree", "0", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "degree,kernel_dim,image_rank,hc_dim,truncation_stable"
    assert lines[1].split(",")[3] == "2"


@pytest.mark.parametrize("kind", ["plain", "lambda", "constant"])
def test_complex_variants_agree(capsys, kind):
    code, out, _ = run(capsys, "compute", "hc", "--algebra", "dual-numbers", "--complex", kind,
                       "--subalgebra", "unit", "--max-degree", "2", "--format", "json")
    assert code == 0
    assert [r["hc_dim"] for r in json.loads(out)["rows"]] == [2, 0, 2]


def test_equivariant_compute(capsys):
    code, out, _ = run(capsys, "compute", "hc-equivariant", "--action", "z2-on-dual-numbers", "--max-degree", "2",
                       "--format", "json")
    assert code == 0
    assert [r["hc_dim"] for r in json.loads(out)["rows"]] == [2, 1, 2]


def test_verify_theorem_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "theorem", "--action", "z2-on-dual-numbers", "--max-degree", "2")
    assert code == 0
    assert out.rstrip().endswith("verdict: pass")


def test_corollary_skip_for_sweedler(capsys):
    code, out, _ = run(capsys, "verify", "corollary", "--action", "h4-on-dual-numbers", "--max-degree", "1")
    assert code == 0
    assert "skipped" in out


def test_unknown_name_is_bad_input(capsys):
    code, _, err = run(capsys, "compute", "hc", "--algebra", "octonions")
    assert code == 2 and "error" in err


def test_missing_file_is_bad_input(capsys, tmp_path):
    code, _, _ = run(capsys, "validate", "--spec", str(tmp_path / "nope.json"))
    assert code == 2


def test_invalid_spec_exit_one(capsys, tmp_path):
    data = _dual_numbers_json()
    data["algebra"]["mul"] = [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "-1"], [1, 1, 0, "1"]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "validate", "--spec", str(path))
    assert code == 1
    assert "associativity[1,0,0,1]" in out and out.rstrip().endswith("verdict: fail")


def test_validate_builtin(capsys):
    code, out, _ = run(capsys, "validate", "--action", "h4-on-dual-numbers")
    assert code == 0 and "verdict: pass" in out


def test_large_dimension_needs_force(capsys):
    # crossed product of Z/6 acting trivially on Z/2 has dimension 12
    code, _, err = run(capsys, "compute", "hc", "--algebra", "crossed:trivial:group-algebra:z6-on-group-algebra:z2")
    assert code == 2 and "--force" in err


def test_list_json(capsys):
    code, out, _ = run(capsys, "list", "--format", "json")
    assert code == 0
    assert "sweedler-h4" in json.loads(out)["hopf"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cyclica", "compute", "hc", "--algebra", "ground-field",
                           "--max-degree", "1", "--format", "csv"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("0,1,0,1")

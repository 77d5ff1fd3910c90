import json

import pytest

from kbsm import arrowdiag as ad
from kbsm import bracket as br
from kbsm import cli
from kbsm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cheb(capsys):
    code, out, _ = run(capsys, "cheb", "2")
    assert code == 0
    assert out.splitlines() == ["# monomial basis", "t^2 - 1"]


def test_relation(capsys):
    code, out, _ = run(capsys, "relation", "2")
    assert code == 0
    assert "c = A^3 + A^-3" in out and "d = A^3 + 2A + 2A^-1 + A^-3" in out
    code, out, _ = run(capsys, "relation", "2", "--json")
    data = json.loads(out)
    assert data["c"] == "A^3 + A^-3"


def test_rank(capsys):
    code, out, _ = run(capsys, "rank")
    assert code == 0 and out.splitlines()[0] == "4"
    assert len(out.splitlines()) == 2 + 29
    code, out, _ = run(capsys, "rank", "--bound", "5", "--json")
    assert json.loads(out)["rank"] == 4


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "(A^3 + A^-3)*S_2 + (-A^3 - 2A - 2A^-1 - A^-3)*S_0")
    assert code == 0 and "zero: yes" in out
    code, out, _ = run(capsys, "nf", "S_2")
    assert "zero: no" in out


def test_parse_error_is_domain_error(capsys):
    code, _, err = run(capsys, "nf", "t^")
    assert code == 1 and "column 3" in err


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["cheb"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_relation_out_of_range(capsys):
    code, _, err = run(capsys, "relation", "1")
    assert code == 1 and "n >= 2" in err


def test_torsion_and_verify(capsys, tmp_path):
    cert = tmp_path / "t2.json"
    code, out, _ = run(capsys, "torsion", "2", "--out", str(cert))
    assert code == 0 and "annihilator = A + A^-1" in out
    assert json.loads(cert.read_text())["kind"] == "torsion"
    code, out, _ = run(capsys, "verify", str(cert))
    assert code == 0 and out.strip() == "verified"
    data = json.loads(cert.read_text())
    data["annihilator"] = "A + 3"
    cert.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(cert))
    assert code == 1 and "NOT" in out


def test_torsion_odd_without_witness(capsys):
    code, out, _ = run(capsys, "torsion", "3", "--out", "-")
    assert code == 0 and "no torsion witness" in out


def test_obstruction(capsys, tmp_path):
    cert = tmp_path / "o3.json"
    code, out, _ = run(capsys, "obstruction", "3", "--out", str(cert))
    assert code == 0 and "NonPrincipal" in out and "mod 2" in out
    code, out, _ = run(capsys, "verify", str(cert))
    assert code == 0


def test_typecheck(capsys):
    assert run(capsys, "typecheck", "A + A^-1")[1].strip() == "k = 2"
    out = run(capsys, "typecheck", "2", "--k-bound", "10")[1]
    assert out.startswith("NotOfType") and "k <= 10" in out


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--json")
    data = json.loads(out)
    assert data["profiles"][0]["d"] == 1 and data["profiles"][1]["d"] == 35


def test_bracket(capsys, tmp_path):
    f = tmp_path / "trefoil.json"
    f.write_text(br.braid_closure([1, 1, 1]).to_json())
    code, out, _ = run(capsys, "bracket", str(f), "--threads", "2")
    assert code == 0 and out.strip() == str(br.bracket(br.braid_closure([1, 1, 1])))
    f.write_text('{"crossings": [{"edges": [0, 1, 2, 3], "over": [0, 2]}]}')
    code, _, err = run(capsys, "bracket", str(f))
    assert code == 1 and "label" in err
    code, _, err = run(capsys, "bracket", str(tmp_path / "missing.json"))
    assert code == 1


def test_arrow_commands(capsys, tmp_path):
    f = tmp_path / "kp.json"
    code, out, _ = run(capsys, "arrow", "generator", "K'")
    f.write_text(out)
    assert run(capsys, "arrow", "validate", str(f))[1].strip() == "valid"
    assert run(capsys, "arrow", "parity", str(f))[1].strip() == "1"
    code, out, _ = run(capsys, "arrow", "apply", str(f), '{"kind": "BOUNDARY_ARROW", "strand": 0, "end": 1}')
    assert code == 0
    assert ad.ArrowDiagram.from_json(out).strands[0].visits == (ad.Arrow(-1),)
    code, _, err = run(capsys, "arrow", "apply", str(f), '{"kind": "R1-", "strand": 0, "pos": 0}')
    assert code == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"strands": [{"visits": [], "ends": [0, 1]}], "boundary_points": 4, "signs": {}}')
    code, out, _ = run(capsys, "arrow", "validate", str(bad))
    assert code == 1 and "lacks antipode" in out


def test_run_returns_exit_code(capsys):
    assert cli.run(["cheb", "2"]) == 0
    assert "t^2 - 1" in capsys.readouterr().out


def test_missing_file_names_path(capsys, tmp_path):
    missing = tmp_path / "nope.json"
    assert cli.run(["bracket", str(missing)]) == 1
    assert str(missing) in capsys.readouterr().err


def test_unwritable_certificate_path(capsys, tmp_path):
    target = tmp_path / "no-such-dir" / "cert.json"
    assert cli.run(["torsion", "2", "--out", str(target)]) == 1
    assert str(target) in capsys.readouterr().err

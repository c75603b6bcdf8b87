import json
from pathlib import Path

import pytest

from k3lattice.cli import InputError, main, parse_lattice_file

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_lattice_json():
    lat = parse_lattice_file('{"rank":2,"gram":[[0,1],[1,0]]}')
    assert lat.gram == ((0, 1), (1, 0))


def test_parse_lattice_expression():
    assert parse_lattice_file("U(3)+6A2").rank == 14


@pytest.mark.parametrize("bad", ['{"rank":2,"gram":[[0,1],[2,0]]}', '{"gram":[[0,1],[1]]}',
                                 '{"rank":3,"gram":[[0,1],[1,0]]}', "Q7", "missing.json"])
def test_parse_lattice_errors(bad):
    with pytest.raises(InputError):
        parse_lattice_file(bad)


def test_parse_lattice_file(tmp_path):
    p = tmp_path / "u.json"
    p.write_text(json.dumps({"rank": 2, "gram": [[0, 1], [1, 0]], "labels": ["e", "f"]}))
    assert parse_lattice_file(str(p)).labels == ("e", "f")


def test_info_json(capsys):
    code, out, _ = run(capsys, "--json", "info", "U+E8")
    assert code == 0
    assert json.loads(out) == {"rank": 10, "determinant": -1, "signature": [1, 9, 0], "even": True}


def test_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "bound", "--l3", "4", "--rank", "12", "--json")
    assert code == 0 and json.loads(out)["sigma_max"] == 7


def test_disc(capsys):
    code, out, _ = run(capsys, "--json", "disc", "L")
    assert json.loads(out)["invariant_factors"] == [3, 3, 3, 3]


def test_glue(capsys):
    vec = ",".join(["1/3,2/3"] * 6)
    code, out, _ = run(capsys, "--json", "glue", "6A2", "--vector", vec)
    data = json.loads(out)
    assert (code, data["index"], data["determinant"]) == (0, 3, 81)


def test_glue_bad_vector(capsys):
    code, _, err = run(capsys, "glue", "A2", "--vector", "1/2,0")
    assert code == 2 and "error" in err


def test_closure_complement(capsys):
    code, out, _ = run(capsys, "--json", "closure", "E8", "--vectors", "[[2,0,0,0,0,0,0,0]]")
    assert json.loads(out)["index"] == 2
    code, out, _ = run(capsys, "--json", "complement", "E8", "--vectors", "1,0,0,0,0,0,0,0")
    assert json.loads(out)["rank"] == 7


def test_roots(capsys):
    code, out, _ = run(capsys, "--json", "roots", "L'")
    assert json.loads(out) == {"norm": -2, "count": 216, "type": "3E6"}
    code, out, _ = run(capsys, "--json", "roots", "A2", "--norm", "-6", "--dump")
    assert json.loads(out)["count"] == 6


def test_ledger_and_milnor(capsys):
    code, out, _ = run(capsys, "--json", "ledger", "--n", "9")
    assert json.loads(out)["h1_OY"] == 20
    code, out, _ = run(capsys, "--json", "milnor", "--poly", "x^2+y^6")
    assert json.loads(out)["dimension"] == "Infinite"
    code, _, _ = run(capsys, "ledger", "--n", "4")
    assert code == 2


def test_fib_commands(capsys):
    code, out, _ = run(capsys, "--json", "fib", "solve", str(SAMPLES / "ten_iv_section.json"))
    assert json.loads(out)["coefficients"]["F"] == 6
    d = " + ".join(f"2*t{i}.T1 + t{i}.T2" for i in range(1, 7))
    code, out, _ = run(capsys, "--json", "fib", "divis", str(SAMPLES / "six_i3_torsion.json"), "--class", d)
    data = json.loads(out)
    assert data["divisible"] and data["certificate_holds"] and data["d_square"] == -36
    code, out, _ = run(capsys, "--json", "fib", "gap", "--m", "2")
    assert json.loads(out)["verdict"] == "Impossible"
    code, out, _ = run(capsys, "--json", "fib", "hdeg", str(SAMPLES / "ten_iv_no_section.json"))
    assert json.loads(out)["h_square"] == 4
    code, _, _ = run(capsys, "fib", "gap", "--m", "10")
    assert code == 2
    code, _, _ = run(capsys, "fib", "solve", "nosuch.json")
    assert code == 2


def test_lambda(capsys):
    code, out, _ = run(capsys, "--json", "lambda", "--sigma", "1")
    data = json.loads(out)
    assert code == 0 and len(data["entries"]) == 2 and all(e["passed"] for e in data["entries"])


def test_verify_section_and_errors(capsys):
    code, out, _ = run(capsys, "--json", "verify-paper", "--section", "divisibility")
    data = json.loads(out)
    assert code == 0
    assert {i["section"] for i in data["items"]} == {"divisibility"}
    code, _, err = run(capsys, "verify-paper", "--section", "nosuch")
    assert code == 2 and "unknown section" in err
    code, out, _ = run(capsys, "--quiet", "verify-paper", "--section", "supersingular")
    assert code == 0 and out == ""


def test_markdown(capsys):
    code, out, _ = run(capsys, "--md", "verify-paper", "--section", "supersingular")
    assert out.startswith("| key |")
    code, out, _ = run(capsys, "--md", "info", "A2")
    assert "| rank | 2 |" in out


def test_usage_error(capsys):
    assert main(["nosuch"]) == 2
    assert main(["--json", "--md", "info", "A2"]) == 2


def test_roots_output_independent_of_workers(capsys):
    _, one, _ = run(capsys, "--json", "roots", "L", "--dump")
    _, three, _ = run(capsys, "--json", "roots", "L", "--dump", "--workers", "3")
    assert one == three

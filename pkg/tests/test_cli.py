import json

import pytest

from sexticlab.cli import (
    EXIT_BUDGET,
    EXIT_INCONCLUSIVE,
    EXIT_INPUT,
    EXIT_OK,
    build_parser,
    main,
)
from sexticlab.parser import parse


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- analyze ------------------------------------------------------------------


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "--poly", "x^6 + y^6")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["route"] == "MP0"
    assert obj["schema"] == "1"


def test_analyze_text_format(capsys):
    code, out, _ = run(capsys, "analyze", "--poly", "x^6 - y^6", "--format", "text")
    assert code == EXIT_OK
    assert "route: not-positive-leading" in out


def test_analyze_poly_file(tmp_path, capsys):
    obj = parse("x^6 + x^2*y^3").to_json_obj()
    pf = tmp_path / "p.json"
    pf.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "analyze", "--poly-file", str(pf))
    assert code == EXIT_OK
    assert json.loads(out)["route"] == "MP3"


def test_analyze_out_file(tmp_path, capsys):
    dest = tmp_path / "rep.json"
    code, out, _ = run(capsys, "analyze", "--poly", "x^6 + y^6", "--out", str(dest))
    assert code == EXIT_OK
    assert out == ""
    assert json.loads(dest.read_text())["route"] == "MP0"


def test_analyze_requires_one_source(capsys):
    code, _, err = run(capsys, "analyze")
    assert code == EXIT_INPUT
    assert "exactly one" in err
    code, _, _ = run(capsys, "analyze", "--poly", "x", "--poly-file", "x.json")
    assert code == EXIT_INPUT


def test_analyze_parse_error(capsys):
    code, _, err = run(capsys, "analyze", "--poly", "x +")
    assert code == EXIT_INPUT
    assert "parse error" in err


def test_bad_poly_file(tmp_path, capsys):
    pf = tmp_path / "bad.json"
    pf.write_text("{not json")
    code, _, err = run(capsys, "analyze", "--poly-file", str(pf))
    assert code == EXIT_INPUT


# -- witness ------------------------------------------------------------------


def test_witness_negative_value(capsys):
    code, out, _ = run(capsys, "witness", "--poly", "(y^2 - x^3 - x)^2 - y + 100")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["kind"] == "negative-value"
    assert obj["route"] == "MP3"
    x, y, v = obj["points"][0]
    assert parse("(y^2 - x^3 - x)^2 - y + 100").eval(x, y) == int(v)


def test_witness_inconclusive_exit(capsys):
    code, out, _ = run(capsys, "witness", "--poly", "x^6 + y^6")
    assert code == EXIT_INCONCLUSIVE
    assert json.loads(out)["kind"] == "inconclusive"


def test_witness_budget_exit(capsys):
    # a tiny anisotropic budget exhausts and reports exit code 4
    code, out, _ = run(
        capsys, "witness", "--poly", "x^6 + x^2*y^3 + 1", "--budget-tmax", "4"
    )
    obj = json.loads(out)
    if obj["kind"] == "inconclusive":
        assert code == EXIT_BUDGET
    else:
        assert code == EXIT_OK


def test_witness_rejects_bad_budget(capsys):
    code, _, err = run(
        capsys, "witness", "--poly", "x^6 + y^6", "--budget-tmax", "-1"
    )
    assert code == EXIT_INPUT
    assert "positive" in err


def test_witness_text_format(capsys):
    code, out, _ = run(
        capsys, "witness", "--poly", "x^6 - y^6 + x*y", "--format", "text"
    )
    assert code == EXIT_OK
    assert "kind: negative-value" in out


# -- density ------------------------------------------------------------------


def test_density_bound_json(capsys):
    code, out, _ = run(capsys, "density", "--poly", "x^2 + y^2", "--bound", "100")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["schema"] == "1" and obj["range"] == [100, 200]


def test_density_csv(capsys):
    code, out, _ = run(
        capsys, "density", "--poly", "x^2 + y^2", "--bound", "100", "--format", "csv"
    )
    assert code == EXIT_OK
    assert out.splitlines()[0] == "N,count,normalized"


def test_density_ladder(capsys):
    code, out, _ = run(
        capsys, "density", "--poly", "x^2 + y^2", "--ladder", "100,200,400"
    )
    assert code == EXIT_OK
    obj = json.loads(out)
    assert len(obj["rows"]) == 3


def test_density_baseline(capsys):
    code, out, _ = run(capsys, "density", "--baseline", "--bound", "10000",
                       "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "Nmax,count,ratio"
    assert lines[1].startswith("10000,")


def test_density_requires_bound(capsys):
    code, _, err = run(capsys, "density", "--poly", "x^2 + y^2")
    assert code == EXIT_INPUT
    assert "--bound" in err


def test_density_bad_ladder(capsys):
    code, _, _ = run(
        capsys, "density", "--poly", "x^2 + y^2", "--ladder", "10,zz"
    )
    assert code == EXIT_INPUT


# -- curve --------------------------------------------------------------------


def test_curve_rouse_csv(capsys):
    code, out, _ = run(
        capsys, "curve", "rouse", "--b1", "1", "--b0", "0", "--r", "1..3"
    )
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "r,x,y,gap,ratio"
    assert lines[1].startswith("1,72,611,1,")


def test_curve_rouse_comma_range(capsys):
    code, out, _ = run(
        capsys, "curve", "rouse", "--b1", "1", "--b0", "0", "--r", "2,4",
        "--format", "json",
    )
    assert code == EXIT_OK
    rows = json.loads(out)
    assert [row[0] for row in rows] == [2, 4]


def test_curve_danilov(capsys):
    code, out, _ = run(capsys, "curve", "danilov", "--count", "3")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "x,y,gap,ratio"
    assert len(lines) == 4


def test_curve_hall(capsys):
    code, out, _ = run(capsys, "curve", "hall", "--xmax", "100", "--threshold", "2")
    assert code == EXIT_OK
    assert "2,3" in out  # gap 1 at (2, 3)


def test_curve_pell(capsys):
    code, out, _ = run(capsys, "curve", "pell", "--d", "2", "--c", "1", "--count", "3")
    assert code == EXIT_OK
    assert out.splitlines()[1:] == ["3,2", "17,12", "99,70"]


def test_curve_pell_unsolvable(capsys):
    code, _, err = run(capsys, "curve", "pell", "--d", "3", "--c", "-1")
    assert code == EXIT_INPUT
    assert "no integer solutions" in err


def test_bad_subcommand_exit(capsys):
    assert main(["frobnicate"]) == EXIT_INPUT


# -- determinism across workers ----------------------------------------------


@pytest.mark.parametrize("workers", ["1", "4"])
def test_density_workers_identical(capsys, workers):
    code, out, _ = run(
        capsys, "density", "--poly", "x^6 + y^6", "--bound", "2000",
        "--workers", workers,
    )
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["count"] == json.loads(
        run(capsys, "density", "--poly", "x^6 + y^6", "--bound", "2000")[1]
    )["count"]


def test_parser_prog_name():
    assert build_parser().prog == "sextic-sieve"

import csv
import io
import json
from fractions import Fraction as F

import pytest

from signedortho.cli import (
    SWEEP_COLUMNS,
    hex_float,
    main,
    parse_hex_float,
    parse_scalar_json,
    scalar_json,
)
from signedortho.families import FamilyParams, p_poly_ttrr
from signedortho.numerics import float_context
from signedortho.polynomials import Poly


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coeffs_rows(capsys):
    code, out, _ = run(capsys, "coeffs", "--n-max", "3", "--format", "json")
    assert code == 0
    rows = json.loads(out)["coefficients"]
    assert [r["beta"] for r in rows] == ["-1", "1", "-1", "1"]
    assert [r["gamma"] for r in rows] == [None, "-2/5", "-6/35", "-20/63"]


def test_coeffs_csv(capsys):
    _, out, _ = run(capsys, "coeffs", "--n-max", "2", "--format", "csv")
    assert list(csv.reader(io.StringIO(out))) == [["n", "beta", "gamma"], ["0", "-1", ""], ["1", "1", "-2/5"], ["2", "-1", "-6/35"]]


@pytest.mark.parametrize("argv", [["--alpha", "-1"], ["--q", "-1"], ["--alpha", "pi"], ["--alpha", "1/0"]])
def test_parameter_errors(capsys, argv):
    code, out, err = run(capsys, "coeffs", *argv)
    assert code == 2 and out == "" and "error" in err


def test_poly_listing(capsys):
    code, out, _ = run(capsys, "poly", "--n", "4", "--format", "json")
    assert code == 0
    assert json.loads(out)["polynomials"][0]["coefficients"] == ["5/21", "0", "-10/9", "0", "1"]
    _, out, _ = run(capsys, "poly", "--n", "0", "--format", "json")
    assert json.loads(out)["polynomials"][0]["coefficients"] == ["1"]


def test_poly_routes_agree(capsys):
    outputs = []
    for route in ("ttrr", "hyper", "gs-oracle"):
        _, out, _ = run(capsys, "poly", "--n", "2", "--alpha", "1/2", "--q", "2", "--format", "csv", "--route", route)
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]
    code, _, err = run(capsys, "poly", "--n", "3", "--route", "hyper")
    assert code == 2 and "even" in err


def test_poly_with_gg(capsys):
    _, out, _ = run(capsys, "poly", "--n", "3", "--mu", "0", "--format", "json")
    gg = json.loads(out)["polynomials"][1]
    assert gg["name"] == "GG_3" and gg["coefficients"] == ["0", "-3/5", "0", "1"]


def test_json_roundtrip_exact(capsys):
    _, out, _ = run(capsys, "poly", "--n", "7", "--alpha", "3/2", "--q", "1", "--format", "json")
    coeffs = [parse_scalar_json(c) for c in json.loads(out)["polynomials"][0]["coefficients"]]
    p = p_poly_ttrr(FamilyParams(F(3, 2), 1), 7)
    assert Poly(coeffs) == p
    assert Poly(coeffs)(F(2, 7)) == p(F(2, 7))


def test_json_roundtrip_float(capsys):
    _, out, _ = run(capsys, "poly", "--n", "5", "--alpha", "1/3", "--mode", "float", "--precision", "128", "--format", "json")
    coeffs = [parse_scalar_json(c, 128) for c in json.loads(out)["polynomials"][0]["coefficients"]]
    ctx = float_context(128)
    p = p_poly_ttrr(FamilyParams(ctx.mpf(1) / 3, 0), 5)
    assert Poly(coeffs) == p


def test_hex_float_roundtrip():
    ctx = float_context(256)
    for x in (ctx.mpf(1) / 3, -ctx.mpf(2) ** -70 * 5, ctx.mpf(0), ctx.mpf(-1)):
        assert parse_hex_float(hex_float(x), 256) == x
    assert scalar_json(F(-3, 5)) == "-3/5"


def test_zeros_text(capsys):
    code, out, _ = run(capsys, "zeros", "--n", "3")
    assert code == 0
    lines = out.splitlines()
    assert "structural" in lines[1] and lines[1].split()[1] == "-1"
    assert lines[2].split()[1].startswith("-0.654653670")
    _, out, _ = run(capsys, "zeros", "--n", "2", "--interlace-with", "3")
    assert out.splitlines()[-1] == "non-interlacing, witness (-0.654654, 0.654654)"


def test_zeros_json(capsys):
    _, out, _ = run(capsys, "zeros", "--n", "3", "--format", "json", "--interlace-with", "2")
    payload = json.loads(out)
    assert [r["structural"] for r in payload["roots"]] == ["at_minus_one", None, None]
    for r in payload["roots"]:
        assert F(r["hi"]) - F(r["lo"]) <= F(payload["tolerance"])
    assert payload["interlacing"]["interlaces"] is False
    _, out, _ = run(capsys, "zeros", "--n", "0", "--format", "json")
    assert json.loads(out)["roots"] == []
    code, _, _ = run(capsys, "zeros", "--n", "3", "--interlace-with", "5")
    assert code == 2


def test_figure_dataset(capsys):
    _, out, _ = run(capsys, "zeros", "--figure", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["family"] for r in rows] == ["P_2"] * 2 + ["P_3"] * 3
    assert [r["zero_index"] for r in rows] == ["1", "2", "1", "2", "3"]
    assert float(rows[2]["x"]) == -1.0


def test_verify_small_grid(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--alpha", "0,1/2", "--q", "0,1", "--n-max", "6", "--format", "json", "--out", str(out_file))
    assert code == 0 and out == ""
    report = json.loads(out_file.read_text())
    assert report["summary"]["failed"] == 0
    assert {tuple(sorted(r)) for r in report["records"]} == {
        ("identity", "n", "params", "residual_norm_or_witness", "status")
    }
    identities = {r["identity"] for r in report["records"]}
    assert {"orthogonality", "relationpmu", "contig5", "non_interlacing", "odd_even_zero_map[k=1,l=1]"} <= identities


def test_verify_csv_columns(capsys):
    code, out, _ = run(capsys, "verify", "--alpha", "1", "--q", "2", "--n-max", "4", "--format", "csv")
    assert code == 0
    header = out.splitlines()[0]
    assert header == "identity,alpha,q,n,status,residual_norm_or_witness"


def test_verify_empty_grid(capsys):
    code, out, _ = run(capsys, "verify", "--alpha", "", "--format", "json")
    assert code == 0
    assert json.loads(out)["summary"] == {"total": 0, "failed": 0}


def test_verify_fault_injection(capsys):
    code, out, _ = run(capsys, "verify", "--alpha", "0", "--q", "0", "--n-max", "6", "--inject-fault", "3", "--format", "json")
    assert code == 1
    failing = [r for r in json.loads(out)["records"] if r["status"] == "fail"]
    assert {r["identity"] for r in failing} == {"orthogonality"}
    assert [r["n"] for r in failing] == [4, 5, 6]


def test_verify_float_mode(capsys):
    code, out, _ = run(capsys, "verify", "--alpha=-1/2,5/2", "--q", "3", "--n-max", "8", "--mode", "float")
    assert code == 0, out
    assert out.splitlines()[-1].endswith("checks passed")


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--alpha", "0", "--q", "0", "--n-max", "5", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == SWEEP_COLUMNS
    assert [r[3] for r in rows[1:]] == ["0", "1", "2", "3", "4", "5"]
    assert rows[4][-1] == "false"  # P_2 vs P_3


def test_determinism(capsys):
    argv = ["verify", "--alpha", "1/2,3/2", "--q", "0,3", "--n-max", "6", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second

import json

import pytest

from carlitz_mzv.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_zeta_text_and_json(capsys):
    code, out, _ = invoke(capsys, "zeta", "--p", "3", "--s", "2",
                          "--prec", "30")
    assert code == 0 and out.startswith("1*u^0")
    code, out, _ = invoke(capsys, "zeta", "--p", "3", "--s", "2",
                          "--prec", "30", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["q"] == 3 and obj["precisionScaled"] == 30


def test_output_is_deterministic(capsys):
    runs = [invoke(capsys, "zeta", "--p", "3", "--s", "2,1", "--prec", "40",
                   "--json")[1] for _ in range(2)]
    assert runs[0] == runs[1]


def test_zeta_variants(capsys):
    code, out, _ = invoke(capsys, "zeta", "--p", "3", "--s", "1,2",
                          "--blocks", "2|1", "--prec", "25")
    assert code == 0
    code, out, _ = invoke(capsys, "zeta", "--p", "3", "--s", "1,1",
                          "--jumps", "", "--prec", "25")
    assert code == 0


def test_power_sum_cross_check(capsys):
    code, out, _ = invoke(capsys, "power-sum", "--p", "2", "--d", "2",
                          "--s", "3", "--method", "cross-check",
                          "--prec", "40")
    assert code == 0


def test_verify_holds_and_exit_codes(capsys):
    code, out, _ = invoke(capsys, "verify", "--p", "3", "--id", "p-power",
                          "--s", "2", "--prec", "60")
    assert code == 0 and "holds" in out
    # side condition -> usage error exit code
    code, _, err = invoke(capsys, "verify", "--p", "3", "--id",
                          "even-rational", "--s", "3", "--prec", "60")
    assert code == 2 and "error" in err
    code, _, err = invoke(capsys, "verify", "--p", "3", "--id", "no-such-id",
                          "--prec", "30")
    assert code == 2


def test_composite_characteristic_is_usage_error(capsys):
    code, _, err = invoke(capsys, "zeta", "--p", "6", "--s", "1",
                          "--prec", "20")
    assert code == 2


def test_insufficient_precision_exit_code(tmp_path, capsys):
    # store a short series, then ask for degree bounds the precision
    # cannot support
    code, _, _ = invoke(capsys, "zeta", "--p", "3", "--s", "2", "--prec",
                        "30", "--json", "--fixture",
                        str(tmp_path / "short.json"))
    assert code == 0
    code, _, err = invoke(capsys, "reconstruct", "--p", "3", "--fixture",
                          str(tmp_path / "short.json"),
                          "--num-deg", "40", "--den-deg", "40")
    assert code == 3 and "insufficient precision" in err


def test_fixture_write_match_mismatch(tmp_path, capsys):
    fx = str(tmp_path / "z.json")
    code, out, _ = invoke(capsys, "zeta", "--p", "3", "--s", "2",
                          "--prec", "30", "--fixture", fx)
    assert code == 0 and "written" in out
    code, out, _ = invoke(capsys, "zeta", "--p", "3", "--s", "2",
                          "--prec", "30", "--fixture", fx)
    assert code == 0 and "match" in out
    code, _, err = invoke(capsys, "zeta", "--p", "3", "--s", "4",
                          "--prec", "30", "--fixture", fx)
    assert code == 1 and "mismatch" in err


def test_reconstruct_even_zeta(tmp_path, capsys):
    from carlitz_mzv import jsonio, zeta
    from conftest import shared_cache
    cc = shared_cache(3, 1)
    ratio = (zeta(cc, (2,), 200) * cc.pi_tilde_pow(-2, 200)).truncate(200)
    path = tmp_path / "ratio.json"
    path.write_text(jsonio.series_dumps(ratio))
    code, out, _ = invoke(capsys, "reconstruct", "--p", "3",
                          "--fixture", str(path))
    assert code == 0 and "/" in out


def test_find_relations_json(capsys):
    code, out, _ = invoke(capsys, "find-relations", "--p", "2",
                          "--weight", "2", "--prec", "60", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["weight"] == 2 and obj["verifiedAtPrecision"] == 120
    assert obj["relations"]


def test_period_matrix_output(capsys):
    code, out, _ = invoke(capsys, "period-matrix", "--p", "3", "--s", "2,1",
                          "--prec", "40", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["zExpression"][1][0] == "2*Z1"
    assert len(obj["psiNormalized"]) == 3


def test_hpoly_and_omega(capsys):
    code, out, _ = invoke(capsys, "hpoly", "--p", "3", "--s", "4")
    assert code == 0 and out.startswith("H_4")
    code, out, _ = invoke(capsys, "omega", "--p", "2", "--order", "3",
                          "--prec", "12")
    assert code == 0 and out.startswith("T^0")

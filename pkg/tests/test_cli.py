import json
from fractions import Fraction

from k3fan.cli import main
from k3fan.report import Report, flatten


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_census_cox_passes(capsys):
    code, out = run(capsys, "census", "--fan", "cox", "--group", "W")
    assert code == 0
    d = json.loads(out)
    assert d["payload"]["counts"] == {"total": 522244, "maximal": 1, "facets": 19, "rays": 82}


def test_census_ram_flags_discrepancy(capsys):
    code, out = run(capsys, "census", "--fan", "ram", "--group", "Gamma")
    assert code == 2
    d = json.loads(out)
    assert d["payload"]["counts"]["facets"] == 9
    assert d["payload"]["counts"]["rays_type_iii"] == 35


def test_census_resource_limit_exit_code(capsys):
    code, _ = run(capsys, "census", "--fan", "rc", "--max-bytes", "10")
    assert code == 1


def test_reports_are_byte_identical(capsys):
    _, a = run(capsys, "census", "--fan", "cox", "--group", "Gamma", "--csv")
    _, b = run(capsys, "census", "--fan", "cox", "--group", "Gamma", "--csv")
    assert a == b and a.startswith("key,value\n")


def test_classify_ell(capsys):
    code, out = run(capsys, "classify", "--ell", "2,1", "2,0,0,0,0,0,0,1,0,0,0,0,0,0,0,1,0,0,0")
    assert code == 0
    p = json.loads(out)["payload"]
    assert p["comb_type"] == "Y2Y8I8X6" and p["stable_type"] == "D6A7E3"
    assert p["dims"]["stratum"] == p["dims"]["index_sum"] == 16


def test_classify_all_twos(capsys):
    code, out = run(capsys, "classify", "--ell", "1,1", ",".join(["2"] * 19))
    p = json.loads(out)["payload"]
    assert p["comb_type"] == "X3I1^18X3" and p["stable_type"] == "E0A0^18E0"
    assert p["dims"]["stratum"] == 0 and p["dims"]["index_sum"] == 0


def test_classify_weyl_vector(capsys):
    code, out = run(capsys, "classify", "--pairings", ",".join(["1"] * 19))
    p = json.loads(out)["payload"]
    assert code == 0 and p["chamber"] == "RC(2,2)"
    assert p["on_boundary_of"] == ["RC(2,2)", "RC(2,3)", "RC(3,2)", "RC(3,3)"]
    assert p["divisibility"]["strong"] is False


def test_classify_type_ii(capsys):
    code, out = run(capsys, "classify", "--ell", "2,2", "1," + ",".join(["0"] * 17) + ",1")
    p = json.loads(out)["payload"]
    assert p["comb_type"] == "~Y4~Y20" and p["type_ii"]["degree"] == 8


def test_classify_invalid(capsys):
    code, _ = run(capsys, "classify", "--ell", "2,2", "1," + ",".join(["0"] * 18))
    assert code == 1


def test_audit_gammas_and_saturation(capsys):
    assert run(capsys, "audit", "gammas")[0] == 0
    assert run(capsys, "audit", "saturation")[0] == 0
    code, out = run(capsys, "audit", "saturation", "--all-chambers")
    assert code == 2 and json.loads(out)["payload"]["counterexample"]["chamber"] == "RC(1,2)"


def test_audit_monodromy_sample(capsys):
    code, out = run(capsys, "audit", "monodromy", "--sample", "200", "--seed", "3")
    assert code == 0 and json.loads(out)["payload"]["cases"] == 200


def test_weier(capsys):
    code, out = run(capsys, "weier", "--all", "--trials", "20", "--seed", "7")
    p = json.loads(out)["payload"]
    assert code == 0 and len(p["rows"]) == 11
    code, out = run(capsys, "weier", "--row", "D0")
    assert code == 0


def test_figure_and_report_dir(capsys, tmp_path):
    out_svg = tmp_path / "q11.svg"
    code, _ = run(capsys, "figure", "--ell", "1,1", ",".join(["1"] * 19), "--out", str(out_svg))
    assert code == 0 and out_svg.read_text().lstrip().startswith("<?xml")
    rep = tmp_path / "rep"
    code, _ = run(capsys, "census", "--fan", "cox", "--report", str(rep))
    assert code == 0
    assert {p.name for p in rep.iterdir()} == {"report.json", "report.csv", "census_cox_W.svg"}
    code, _ = run(capsys, "figure", "--ell", "2,2", "1," + ",".join(["0"] * 18), "--out", str(out_svg))
    assert code == 1


def test_figure_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    e = ["1,2", ",".join(["2"] * 18 + ["9"])]
    run(capsys, "figure", "--ell", *e, "--out", str(a))
    run(capsys, "figure", "--ell", *e, "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_report_serialization():
    r = Report(["k3fan"], 1, {"big": 2 ** 70, "q": Fraction(1, 3), "xs": [1, 2]}, True)
    d = json.loads(r.to_json())
    assert d["payload"] == {"big": str(2 ** 70), "q": "1/3", "xs": [1, 2]}
    assert dict(flatten(r.as_dict()))["payload.xs"] == "1 2"

import json
import re
from pathlib import Path

import pytest

from wedgedyn import parse
from wedgedyn.cli import main

MAPS = Path(__file__).resolve().parent.parent / "maps"

RAT = re.compile(r"^-?\d+(/\d+)?$")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def csv_rows(text):
    lines = [l for l in text.strip().splitlines() if l]
    return [l.split(",") for l in lines]


def test_map_files_parse_and_match_builtins():
    texts = {p.stem: p.read_text() for p in MAPS.glob("*.map")}
    assert set(texts) == {"phi1", "phi2", "phi3"}
    rules = {name: parse(t)[0].rules for name, t in texts.items()}
    assert rules["phi1"] == ("aabAB", "BAbba")
    assert rules["phi2"] == ("aaab", "bbba")
    assert rules["phi3"] == ("aaabaaa", "bbbabbb")


def test_analyze_json(capsys):
    code, out = run(capsys, "analyze", str(MAPS / "phi2.map"))
    assert code == 0
    data = json.loads(out)
    assert data["abelianization"] == [[3, 1], [1, 3]]
    evs = [(ev["re"], ev["im"]) for ev in data["eigenvalues"]]
    assert evs == [("2", "0"), ("4", "0")]
    assert data["is_expanding"] is True
    assert data["c"] == "3/4"
    assert data["delta"] == "3/4"
    assert data["lam"] == "2"
    assert data["holder_bound"] == "1/2"


def test_analyze_sup_norm(capsys):
    code, out = run(capsys, "analyze", str(MAPS / "phi3.map"), "--norm", "sup")
    assert code == 0
    data = json.loads(out)
    assert data["norm"] == "sup"
    evs = [(ev["re"], ev["im"]) for ev in data["eigenvalues"]]
    assert evs == [("5", "0"), ("7", "0")]


def test_analyze_nonexpanding(capsys):
    code, out = run(capsys, "analyze", str(MAPS / "phi1.map"))
    assert code == 0
    data = json.loads(out)
    assert data["is_expanding"] is False
    assert "delta" not in data


def test_bf_csv(capsys):
    code, out = run(capsys, "bf", str(MAPS / "phi2.map"), "--k", "3",
                    "--format", "csv")
    assert code == 0
    rows = csv_rows(out)
    assert rows[0] == ["k", "invariant_factors", "order"]
    assert rows[1] == ["1", "3", "3"]
    assert rows[2] == ["2", "3x15", "45"]
    assert rows[3] == ["3", "7x63", "441"]


def test_bf_matrix_override(capsys):
    code, out = run(capsys, "bf", str(MAPS / "phi2.map"), "--matrix",
                    "[[2,1],[1,1]]", "--k", "5", "--format", "csv")
    assert code == 0
    rows = csv_rows(out)
    factors = [r[1] for r in rows[1:]]
    assert factors == ["", "5", "4x4", "3x15", "11x11"]


def test_bf_json(capsys):
    code, out = run(capsys, "bf", str(MAPS / "phi2.map"), "--k", "2")
    assert code == 0
    data = json.loads(out)
    assert data["matrix"] == [[3, 1], [1, 3]]
    g1, g2 = data["groups"]
    assert g1["k"] == 1 and g1["order"] == "3" and g1["invariant_factors"] == ["3"]
    assert g2["k"] == 2 and g2["order"] == "45"
    assert g2["invariant_factors"] == ["3", "15"]


def test_bf_root_of_unity_exit(capsys):
    code = main(["bf", str(MAPS / "phi1.map")])
    assert code == 1
    err = capsys.readouterr().err
    assert "RootOfUnitySpectrum" in err


def test_fix_csv(capsys):
    code, out = run(capsys, "fix", str(MAPS / "phi2.map"))
    assert code == 0
    rows = csv_rows(out)
    assert rows[0] == ["edge", "t", "period", "least_period",
                       "delta_0", "delta_1", "disp_0", "disp_1",
                       "alpha_0", "alpha_1"]
    body = rows[1:]
    assert len(body) == 5
    points = {(r[0], r[1]) for r in body}
    assert points == {("0", "0"), ("0", "1/3"), ("0", "2/3"),
                      ("1", "1/3"), ("1", "2/3")}
    by_point = {(r[0], r[1]): r for r in body}
    assert by_point[("0", "1/3")][4:] == ["1", "0", "0", "2", "2/3", "2/3"]
    assert by_point[("1", "2/3")][4:] == ["0", "2", "0", "1", "1/3", "1/3"]
    for r in body:
        for cell in r:
            assert cell == "" or RAT.match(cell), cell


def test_torus_csv(capsys):
    code, out = run(capsys, "torus", str(MAPS / "phi2.map"))
    assert code == 0
    rows = csv_rows(out)
    pts = {tuple(r[:2]) for r in rows[1:]}
    assert pts == {("0", "0"), ("1/3", "1/3"), ("2/3", "2/3")}


def test_rotset_csv_and_svg(capsys, tmp_path):
    svg = tmp_path / "rotset.svg"
    code, out = run(capsys, "rotset", str(MAPS / "phi1.map"), "--svg", str(svg))
    assert code == 0
    rows = csv_rows(out)
    kinds = [r[0] for r in rows[1:]]
    assert kinds.count("loop") == 10
    assert kinds.count("hull") == 5
    assert kinds.count("fixed") == 6
    assert kinds.count("period2") == 4
    content = svg.read_text()
    assert "<svg" in content
    assert 'class="hull"' in content


def test_rotset_budget_exit(capsys):
    code = main(["rotset", str(MAPS / "phi1.map"), "--budget", "2"])
    assert code == 3


def test_beta_csv_and_svg(capsys, tmp_path):
    svg = tmp_path / "beta.svg"
    code, out = run(capsys, "beta", str(MAPS / "phi2.map"), "--k", "2",
                    "--svg", str(svg))
    assert code == 0
    rows = csv_rows(out)
    assert rows[0] == ["edge", "i", "t", "beta_0", "beta_1"]
    table = {(r[0], r[2]): (r[3], r[4]) for r in rows[1:]}
    assert table[("0", "1/4")] == ("3/8", "-1/8")
    assert table[("0", "5/16")] == ("17/32", "-7/32")
    for r in rows[1:]:
        assert RAT.match(r[2]) and RAT.match(r[3]) and RAT.match(r[4])
    assert "<svg" in svg.read_text()


def test_shadow_json(capsys):
    code, out = run(capsys, "shadow", str(MAPS / "phi2.map"))
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "NOT_INJECTIVE"
    assert data["depth"] == 1
    assert len(data["witness"]) == 2

    code, out = run(capsys, "shadow", str(MAPS / "phi3.map"))
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "CERTIFIED_INJECTIVE"
    assert data["witness"] is None


def test_shadow_unknown_exit(capsys):
    code, out = run(capsys, "shadow", str(MAPS / "phi3.map"), "--depth", "0")
    assert code == 2
    assert json.loads(out)["status"] == "UNKNOWN"


def test_missing_file_exit(capsys):
    code = main(["analyze", "no-such-file.map"])
    assert code == 1


def test_bad_name_exit(capsys):
    code = main(["analyze", str(MAPS / "phi2.map"), "--name", "nope"])
    assert code == 1


def test_deterministic_output(capsys, tmp_path):
    _, out1 = run(capsys, "analyze", str(MAPS / "phi3.map"))
    _, out2 = run(capsys, "analyze", str(MAPS / "phi3.map"))
    assert out1 == out2
    svg1, svg2 = tmp_path / "a.svg", tmp_path / "b.svg"
    run(capsys, "beta", str(MAPS / "phi2.map"), "--k", "3", "--svg", str(svg1))
    run(capsys, "beta", str(MAPS / "phi2.map"), "--k", "3", "--svg", str(svg2))
    assert svg1.read_bytes() == svg2.read_bytes()

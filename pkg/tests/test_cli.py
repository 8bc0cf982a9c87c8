import json
import subprocess
import sys

import pytest

from petrilab.cli import main

F7_G2 = {"field": {"kind": "prime", "p": 7}, "f": [1, 0, 0, 0, 0, 1]}
Q_G3 = {"field": {"kind": "rational"}, "f": [1, 0, 0, 0, 0, 0, 0, 1]}


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out.err


def test_curve_info(files, capsys):
    code, doc, _ = run(["curve-info", "-i", files("c.json", F7_G2)], capsys)
    assert code == 0
    assert (doc["result"]["genus"], doc["result"]["K"]) == (2, "2*inf")
    assert doc["seed"] == 0 and doc["version"] and len(doc["inputs"]["curve"]) == 64
    code, doc, _ = run(["curve-info", "-i", files("q.json", Q_G3)], capsys)
    assert (doc["result"]["genus"], doc["result"]["K"]) == (3, "4*inf")


def test_even_degree_is_input_error(files, capsys):
    bad = {"field": {"kind": "prime", "p": 7}, "f": [1, 0, 0, 0, 1]}
    code, doc, err = run(["curve-info", "-i", files("e.json", bad)], capsys)
    assert code == 2 and doc is None and "EvenDegree" in err


def test_malformed_json_is_input_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{")
    code, _, err = run(["curve-info", "-i", str(path)], capsys)
    assert code == 2 and "broken.json:1" in err


def test_petri(files, capsys):
    curve = files("q.json", Q_G3)
    d1 = files("d1.json", {"affine": [{"x": 0, "y": 1, "mult": 1}], "inf": 2})
    code, doc, _ = run(["petri", "-i", curve, "-d", d1], capsys)
    assert code == 0 and doc["result"]["dim_coker"] == 1 and doc["result"]["checks"]["martens"]
    d2 = files("d2.json", {"affine": [], "inf": 2})
    code, doc, _ = run(["petri", "-i", curve, "-d", d2], capsys)
    assert code == 0 and doc["result"]["dim_coker"] == 0
    assert all(v for v in doc["result"]["checks"].values())
    d5 = files("d5.json", {"affine": [], "inf": 7})
    code, _, err = run(["petri", "-i", curve, "-d", d5], capsys)
    assert code == 2 and "NotSpecial" in err


def test_rr_bpf_chain(files, capsys):
    curve = files("q.json", Q_G3)
    d1 = files("d1.json", {"affine": [{"x": 0, "y": 1, "mult": 1}], "inf": 2})
    code, doc, _ = run(["rr", "-i", curve, "-d", d1], capsys)
    assert code == 0 and doc["result"]["h0"] == 2 and doc["result"]["rr_identity"]
    code, doc, _ = run(["bpf", "-i", curve, "-d", d1], capsys)
    assert code == 0 and doc["result"]["base_points"] == ["(0,1)"] and doc["result"]["ok"]
    code, doc, _ = run(["chain", "-i", curve, "-d", files("d2.json", {"affine": [], "inf": 2})], capsys)
    assert code == 0 and doc["result"]["ok"]


def test_hopf_and_budget(files, capsys):
    f4 = {"field": {"kind": "prime", "p": 2}, "dims": [2, 2, 2], "coeffs": [1, 0, 0, 1, 0, 1, 1, 1]}
    code, doc, _ = run(["hopf-test", "-i", files("t.json", f4), "--max-ext", "2"], capsys)
    res = doc["result"]
    assert code == 0 and res["injective_on_factors"] and res["image_dim"] == 2
    assert res["witness"]["found"] and res["witness"]["degree"] == 2
    big = {"field": {"kind": "prime", "p": 101}, "dims": [4, 4, 7], "coeffs": [0] * 112}
    code, _, err = run(["hopf-test", "-i", files("b.json", big), "--budget", "100"], capsys)
    assert code == 4 and "BudgetExceeded" in err


def test_detvar_and_bounds(capsys):
    code, doc, _ = run(["detvar-count", "--m", "2", "--n", "2", "-r", "1", "--q", "2", "--brute"], capsys)
    assert code == 0 and doc["result"]["count"] == doc["result"]["brute_force"] == 10
    code, doc, _ = run(["bounds", "-g", "11", "--degree", "8", "-r", "1", "-c", "2"], capsys)
    assert code == 0 and doc["result"]["main_result"] == 5 and doc["result"]["keem_applicable"]
    code, _, _ = run(["bounds", "-g", "1", "--degree", "8", "-r", "1"], capsys)
    assert code == 2


def test_suite_is_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"s{i}.json"
        assert main(["suite", "martens", "--samples", "10", "--seed", "9", "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["result"]["failed"] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "petrilab", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "petrilab" in proc.stdout

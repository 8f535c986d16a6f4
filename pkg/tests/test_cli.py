import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from atac import io
from atac.cli import main
from atac.lp import data_limit


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fano_file(tmp_path, fano):
    path = tmp_path / "fano.json"
    io.write_json(path, fano.to_dict())
    return path


def test_limit(capsys, fano_file, tmp_path):
    cert_path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "limit", str(fano_file), "--certificate-out", str(cert_path))
    assert code == 0
    assert out.startswith("L(D) = 3/7")
    assert io.certificate_from_dict(io.read_json(cert_path)).limit == F(3, 7)


def test_limit_json(capsys, fano_file):
    code, out, _ = run(capsys, "limit", str(fano_file), "--json")
    data = json.loads(out)
    assert data["limit"] == "3/7"
    assert data["bounds"]["min_replication"] == "3/7"
    assert (data["points"], data["blocks"]) == (7, 7)


def test_verify_certificate(capsys, fano_file, tmp_path, fano):
    cert = io.certificate_to_dict(data_limit(fano))
    good = tmp_path / "good.json"
    io.write_json(good, cert)
    assert run(capsys, "verify-certificate", str(fano_file), str(good))[0] == 0
    cert["limit"] = "2/7"
    bad = tmp_path / "bad.json"
    io.write_json(bad, cert)
    code, out, _ = run(capsys, "verify-certificate", str(fano_file), str(bad), "--json")
    assert code == 1
    assert json.loads(out)["valid"] is False


def test_bounds_single(capsys):
    code, out, _ = run(capsys, "bounds", "28", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["best_known_upper"] == "3/14"
    assert data["best_known_design"] == "hjelmslev(2)"
    assert float(data["new_bound_decimal"]) == pytest.approx(0.2095, abs=5e-5)


def test_bounds_range_csv(capsys):
    code, out, _ = run(capsys, "bounds", "--range", "2", "13", "--csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0].startswith("m,s,hkt_bound")
    assert len(lines) == 13
    assert lines[6].split(",")[5] == "3/7"


def test_bounds_text_and_plot(capsys, tmp_path):
    png = tmp_path / "b.png"
    code, out, _ = run(capsys, "bounds", "--range", "2", "30", "--plot", str(png))
    assert code == 0
    assert out.count("\n") == 29
    assert png.stat().st_size > 1000
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_bounds_bad_range(capsys):
    assert run(capsys, "bounds", "--range", "5", "2")[0] == 1
    assert run(capsys, "bounds")[0] == 1


def test_construct(capsys, tmp_path):
    out_path = tmp_path / "pg.json"
    code, out, _ = run(capsys, "construct", "projective", "3", "--out", str(out_path))
    assert code == 0 and "13 points" in out
    assert io.load_design(out_path).b == 13
    code, out, _ = run(capsys, "construct", "transversal", "3", "4")
    assert len(json.loads(out)["blocks"]) == 19


def test_construct_bad_params(capsys):
    code, _, err = run(capsys, "construct", "projective", "6")
    assert code == 1 and "error:" in err


def test_classify(capsys, tmp_path):
    path = tmp_path / "z12.json"
    blocks = [[str((i + a) % 12) for a in (0, 1, 4, 6)] for i in range(12)]
    io.write_json(path, {"points": [str(i) for i in range(12)], "blocks": blocks})
    code, out, _ = run(capsys, "classify", str(path), "--json")
    assert json.loads(out)["classes"] == ["almost-projective-plane(s=3)"]


def test_existence(capsys):
    code, out, _ = run(capsys, "existence", "10", "--almost", "--json")
    data = json.loads(out)
    assert data["status"] == "possibly-exists" and data["witness"] == [1, 1, 3]
    code, out, _ = run(capsys, "existence", "6")
    assert "ruled-out" in out


def test_search(capsys, tmp_path):
    wpath = tmp_path / "w.json"
    code, out, err = run(capsys, "search", "5", "--json", "--witness", str(wpath))
    data = json.loads(out)
    assert code == 0 and data["limit"] == "5/9"
    assert "nodes=" in err
    assert data_limit(io.load_design(wpath)).limit == F(5, 9)


def test_search_seeded_seven(capsys):
    code, out, _ = run(capsys, "search", "7", "--budget", "60", "--seed-catalog")
    assert code == 0 and out.startswith("L(7) = 3/7")


def test_search_without_budget_fails(capsys):
    code, _, err = run(capsys, "search", "7")
    assert code == 1 and "budget" in err


def test_plan_items(capsys, tmp_path):
    out_path = tmp_path / "m.json"
    code, out, _ = run(capsys, "plan", "--machines", "7", "--items", "70", "--out", str(out_path))
    assert code == 0
    assert "achieved max load 3/7" in out
    manifest = io.read_json(out_path)
    assert len(manifest["groups"]) == 70


@pytest.mark.parametrize(
    "content",
    [
        "a 5\nb 3\n# comment\nc 2\n",
        '{"a": 5, "b": 3, "c": 2}',
        '[["a", 5], ["b", 3], ["c", 2]]',
        '[{"id": "a", "size": 5}, {"id": "b", "size": 3}, {"id": "c", "size": 2}]',
    ],
)
def test_plan_items_file_formats(capsys, tmp_path, content):
    path = tmp_path / "items"
    path.write_text(content)
    code, out, _ = run(capsys, "plan", "--machines", "4", "--items-file", str(path), "--json")
    data = json.loads(out)
    assert code == 0
    assert set(data["groups"]) == {"a", "b", "c"}


@pytest.mark.parametrize("content", ["a 5 6\n", "a x\n", '[["a", 1.5]]'])
def test_plan_items_file_errors(capsys, tmp_path, content):
    path = tmp_path / "items"
    path.write_text(content)
    assert run(capsys, "plan", "--machines", "4", "--items-file", str(path))[0] == 1


def test_plan_with_design_file(capsys, fano_file):
    code, out, _ = run(capsys, "plan", "--machines", "7", "--items", "7", "--design", str(fano_file), "--json")
    assert json.loads(out)["design"]["source"] == "inline"
    assert run(capsys, "plan", "--machines", "8", "--items", "7", "--design", str(fano_file))[0] == 1


def test_plan_needs_one_item_source(capsys):
    assert run(capsys, "plan", "--machines", "4")[0] == 1


def test_plan_reports_empty_groups(capsys):
    code, out, _ = run(capsys, "plan", "--machines", "3", "--items", "2")
    assert code == 0 and "empty groups" in out


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "limit", str(tmp_path / "nope.json"))
    assert code == 1 and "error:" in err


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "atac.cli", "bounds", "--range", "x"], capture_output=True, text=True)
    assert proc.returncode == 2
    proc = subprocess.run([sys.executable, "-m", "atac.cli"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_console_entry_point():
    proc = subprocess.run(["atac", "bounds", "7"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "L(m) 3/7" in proc.stdout

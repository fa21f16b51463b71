import json
from pathlib import Path

import pytest

from largeabel import catalog
from largeabel.cli import main
from largeabel.errors import VerificationError

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kulkarni_default(capsys):
    code, out, _ = run(capsys, "kulkarni")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["families"]) == 7 and len(doc["exceptional"]) == 102
    assert "expanded" not in doc


def test_kulkarni_expanded(capsys):
    code, out, _ = run(capsys, "kulkarni", "--max-param", "10")
    doc = json.loads(out)
    first = doc["expanded"][0]
    assert first["signatures"][:3] == [[2, 2, 2, 3], [2, 2, 2, 4], [2, 2, 2, 5]]


def test_kulkarni_latex_golden(capsys):
    code, out, _ = run(capsys, "kulkarni", "--format", "latex")
    assert code == 0
    assert out == (GOLDEN / "kulkarni.tex").read_text()


def test_classify_golden(capsys):
    code, out, _ = run(capsys, "classify", "--max-genus", "4")
    assert code == 0
    assert out == (GOLDEN / "classify_g4.json").read_text()


def test_classify_genus_two(capsys):
    code, out, _ = run(capsys, "classify", "--max-genus", "2")
    doc = json.loads(out)
    assert len(doc["entries"]) == 6
    for e in doc["entries"]:
        assert set(e) >= {"group", "signature", "genus", "building_data", "model", "hyperelliptic", "flags"}
        assert set(e["model"]) >= {"ambient", "equations", "lambda_excluded"}


def test_table_and_latex_formats(capsys):
    code, out, _ = run(capsys, "classify", "--max-genus", "3", "--format", "table")
    assert "y^10 = x^5*(x-z)^2*z^3" in out
    code, out, _ = run(capsys, "classify", "--max-genus", "3", "--format", "latex")
    assert out.startswith("\\begin{tabular}")


def test_output_file_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["classify", "--max-genus", "10", "-o", str(a)]) == 0
    assert main(["classify", "--max-genus", "10", "--workers", "2", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "--genus", "7", "--group", "Z3xZ9")
    doc = json.loads(out)
    assert code == 0 and len(doc["entries"]) == 1
    assert doc["entries"][0]["model"]["rendered"] == "y^3 = x*z^2; w^9 = (x-z)*z^8"
    code, _, err = run(capsys, "construct", "--genus", "5", "--group", "Z3xZ9")
    assert code == 2 and "no large abelian action" in err


def test_hyperelliptic_command(capsys):
    code, out, _ = run(capsys, "hyperelliptic", "--max-genus", "3", "--format", "json")
    rows = json.loads(out)
    z12 = next(r for r in rows if r["group"] == "Z12" and r["indices"] == [3, 4, 12])
    assert z12["involution_fixed_points"] == {"6": 4} and not z12["hyperelliptic"]


def test_verify_passes_with_flags(capsys):
    code, out, _ = run(capsys, "verify", "--max-genus", "20")
    assert code == 0
    assert "FAIL" not in out
    assert "FLAG row2-printed-equation" in out


def test_verify_genus_two_nakajima(capsys):
    code, out, _ = run(capsys, "verify", "--max-genus", "2")
    assert "PASS nakajima_subsets: 6 passed, 0 failed" in out


@pytest.mark.parametrize(
    "argv",
    [["verify", "--max-genus", "1"], ["classify"], ["classify", "--max-genus", "3", "--format", "xml"], ["bogus"]],
)
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_capacity_exit(capsys):
    code, _, err = run(capsys, "classify", "--max-genus", "5", "--brute-bound", "10")
    assert code == 4 and "capacity" in err


def test_verification_failure_exit(monkeypatch, capsys):
    def broken(entry):
        raise VerificationError("forced")

    monkeypatch.setattr(catalog, "attach_model", broken)
    code, _, err = run(capsys, "classify", "--max-genus", "2")
    assert code == 3 and "forced" in err

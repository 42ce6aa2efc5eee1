import json

import pytest

from sylvester.cli import main
from sylvester.records import MATCH, relation
from sylvester.cyclo import zeta_pow
from sylvester.exactmat import ExactMatrix
from sylvester.report import Whitelist, worst_exit, write_atomic


def run(tmp_path, *args):
    out = tmp_path / "out.json"
    code = main([*args, "--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def test_basis_plain(tmp_path, capsys):
    code, doc = run(tmp_path, "basis", "--n", "3")
    assert code == 0
    assert len(doc["elements"]) == 8
    assert "rank 8, closure dimension 8" in capsys.readouterr().out


def test_basis_super_one(tmp_path, capsys):
    code, doc = run(tmp_path, "basis", "--n", "1", "--super")
    assert code == 0 and len(doc["elements"]) == 4
    assert "note" in capsys.readouterr().out


def test_usage_errors(tmp_path, capsys):
    assert main(["basis", "--n", "1", "--out", str(tmp_path / "b.json")]) == 64
    assert main(["basis"]) == 64
    assert main(["nonsense"]) == 64
    assert main(["verify-all", "--max-n", "1", "--out", str(tmp_path / "r.json")]) == 64
    assert main(["basis", "--n", "3", "--out", str(tmp_path / "missing" / "b.json")]) == 64
    assert main(["sine", "--n", "1", "--out", str(tmp_path / "s.json")]) == 64
    bad = tmp_path / "wl.json"
    bad.write_text('{"expected": 3}')
    assert main(["verify", "--n", "2", "--whitelist", str(bad), "--out", str(tmp_path / "r.json")]) == 64


def test_verify_without_and_with_whitelist(tmp_path, capsys):
    code, doc = run(tmp_path, "verify", "--n", "3")
    assert code == 1
    unexpected = doc["summary"]["unexpected"]
    assert "grozman[n=3](ad D)^3 S" in unexpected
    wl = tmp_path / "known.json"
    wl.write_text(json.dumps({"expected": unexpected}))
    code, doc = run(tmp_path, "verify", "--n", "3", "--whitelist", str(wl))
    assert code == 0
    assert doc["summary"]["whitelisted"] == unexpected
    assert "[expected] grozman[n=3](ad D)^3 S" in capsys.readouterr().out


def test_report_layout(tmp_path):
    code, doc = run(tmp_path, "verify", "--n", "3")
    ids = [r["id"] for r in doc["records"]]
    assert ids == sorted(ids)
    assert doc["ranks"] == {"generated": 8, "rank": 8, "closure": 8}
    assert doc["sine"]["winner"] == "half-angle"
    assert doc["bracket_fit"]["pairs_total"] == 36
    passing = [r for r in doc["records"] if r["status"] == MATCH]
    assert all("oracle_value" not in r for r in passing)
    failing = [r for r in doc["records"] if r["status"] == "coefficient-mismatch" and r["reference"] != "-"]
    assert all("oracle_value" in r for r in failing)
    _, full = run(tmp_path, "verify", "--n", "3", "--full")
    assert all("oracle_value" in r for r in full["records"])


def test_verify_super(tmp_path):
    code, doc = run(tmp_path, "verify", "--n", "2", "--super")
    assert code == 1
    assert doc["ranks"] == {"generated": 16, "rank": 15, "closure": 15}
    assert "basis.generated-list-independent" in doc["summary"]["unexpected"]


def test_constants_command(tmp_path):
    code, doc = run(tmp_path, "constants", "--n", "2", "--super", "--verbose")
    assert code == 0
    assert doc["mode"] == "super" and doc["dropped"] == ["T(4,2)"]


def test_sine_command_dump(tmp_path):
    code, doc = run(tmp_path, "sine", "--n", "3", "--dump-j")
    assert code == 0
    assert len(doc["J"]) == 9
    assert doc["sine"]["winner"] == "half-angle"


def test_verify_all_identical_runs(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify-all", "--max-n", "3", "--out", str(a)]) == 1
    main(["verify-all", "--max-n", "3", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert [(r["mode"], r["n"]) for r in doc["runs"]] == [("plain", 2), ("plain", 3), ("super", 1)]


def test_whitelist_exact_and_pattern():
    wl = Whitelist(("rel2[m=1]", "path[[]m=3*"))
    assert wl.covers("rel2[m=1]")
    assert not wl.covers("rel2[m=2]")
    assert wl.covers("path[m=3,k=2,s1=1]")
    assert not wl.covers("path[m=2,k=3,s1=1]")


def test_whitelist_list_form(tmp_path):
    p = tmp_path / "wl.json"
    p.write_text('["rel3"]')
    assert Whitelist.load(p).covers("rel3")


def test_worst_exit():
    assert worst_exit([0, 1, 0]) == 1
    assert worst_exit([1, 2, 0]) == 2
    assert worst_exit([]) == 0


def test_atomic_write_leaves_no_partial_file(tmp_path):
    target = tmp_path / "x.json"
    target.write_text("old\n")

    with pytest.raises(TypeError):
        write_atomic(target, 12345)
    assert target.read_text() == "old\n"
    assert [p.name for p in tmp_path.iterdir()] == ["x.json"]


def test_relation_status_rules():
    a = zeta_pow(3, 1)
    x = ExactMatrix(2, 3, {(0, 1): 1})
    assert relation("r", "", x.scale(a), "x", x, a).status == MATCH
    assert relation("r", "", x.scale(a), "x", x, 1).status == "coefficient-mismatch"
    assert relation("r", "", x.scale(a), "x", x, None).status == "proportionality-holds"
    assert relation("r", "", x, "0", None, None).status == "fails"
    y = ExactMatrix(2, 3, {(1, 0): 1})
    assert relation("r", "", y, "x", x, 1).status == "fails"

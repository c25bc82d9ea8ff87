import json

import pytest

from zcverify.cli import main
from zcverify.groupfile import format_cayley
from zcverify.constructions import cyclic_group


S3_PERM = "perm\n(1 2 3)\n(1 2)\n"


@pytest.fixture()
def s3_file(tmp_path):
    p = tmp_path / "s3.grp"
    p.write_text(S3_PERM)
    return p


def test_build(tmp_path, s3_file, capsys):
    out = tmp_path / "s3.cayley"
    rc = main(["build", "--input", str(s3_file), "--out", str(out)])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["order"] == 6
    assert doc["class_sizes"] == [1, 2, 3]
    assert out.read_text().startswith("cayley")


def test_build_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.grp"
    p.write_text("perm\n(1 2 x)\n")
    rc = main(["build", "--input", str(p)])
    assert rc == 2
    assert "line 2" in capsys.readouterr().err


def test_build_empty_spec(tmp_path, capsys):
    p = tmp_path / "empty.grp"
    p.write_text("# nothing here\n")
    assert main(["build", "--input", str(p)]) == 2


def test_build_cap_error(tmp_path, capsys):
    # a cayley table larger than the cap cannot even be written reasonably;
    # exercise the missing-file input error path instead
    assert main(["build", "--input", str(tmp_path / "missing.grp")]) == 2


def test_audit(tmp_path, s3_file, capsys):
    out = tmp_path / "audit.json"
    rc = main(["audit", "--input", str(s3_file), "--orders", "2,3,6", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["bound"] == 5
    assert [o["status"] for o in doc["orders"]] == ["certified"] * 3
    text = capsys.readouterr().out
    assert "order 2: certified" in text


def test_audit_default_orders(tmp_path, s3_file):
    out = tmp_path / "audit.json"
    rc = main(["audit", "--input", str(s3_file), "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert [o["m"] for o in doc["orders"]] == [1, 2, 3, 6]


def test_audit_budget_exit(tmp_path, capsys):
    p = tmp_path / "c11.grp"
    p.write_text(format_cayley(cyclic_group(11)))
    rc = main(["audit", "--input", str(p), "--orders", "11", "--budget", "50"])
    assert rc == 3


def test_audit_bad_orders(tmp_path, s3_file):
    assert main(["audit", "--input", str(s3_file), "--orders", "2,x"]) == 2


def test_corpus_and_lemmas(tmp_path, capsys):
    manifest = tmp_path / "manifest.json"
    rc = main(["corpus", "--max-order", "12", "--out", str(manifest)])
    assert rc == 0
    doc = json.loads(manifest.read_text())
    assert doc["schema_version"] == 1 and doc["entries"]

    ledger = tmp_path / "ledger.json"
    rc = main(["lemmas", "--input", str(manifest), "--out", str(ledger)])
    assert rc == 0
    led = json.loads(ledger.read_text())
    assert led["violations"] == 0
    assert led["checks"] > 0


def test_lemmas_empty_manifest(tmp_path):
    manifest = tmp_path / "empty.json"
    manifest.write_text(json.dumps({"schema_version": 1, "entries": []}))
    ledger = tmp_path / "ledger.json"
    assert main(["lemmas", "--input", str(manifest), "--out", str(ledger)]) == 0
    assert json.loads(ledger.read_text())["checks"] == 0


def test_lemmas_malformed_manifest(tmp_path):
    manifest = tmp_path / "bad.json"
    manifest.write_text("{not json")
    assert main(["lemmas", "--input", str(manifest)]) == 2
    manifest.write_text(json.dumps({"schema_version": 99, "entries": []}))
    assert main(["lemmas", "--input", str(manifest)]) == 2


def test_lemmas_deterministic(tmp_path):
    manifest = tmp_path / "manifest.json"
    assert main(["corpus", "--max-order", "12", "--out", str(manifest)]) == 0

    def run(path):
        assert main(["lemmas", "--input", str(manifest), "--out", str(path)]) == 0
        doc = json.loads(path.read_text())
        for rec in doc["records"]:
            rec.pop("elapsed_s", None)
        return json.dumps(doc, sort_keys=True)

    a = run(tmp_path / "a.json")
    b = run(tmp_path / "b.json")
    assert a == b


def test_lemmas_workers_match_serial(tmp_path):
    manifest = tmp_path / "manifest.json"
    assert main(["corpus", "--max-order", "10", "--out", str(manifest)]) == 0

    def run(path, workers):
        rc = main(["lemmas", "--input", str(manifest), "--out", str(path), "--workers", str(workers)])
        assert rc == 0
        doc = json.loads(path.read_text())
        for rec in doc["records"]:
            rec.pop("elapsed_s", None)
        return json.dumps(doc, sort_keys=True)

    assert run(tmp_path / "w1.json", 1) == run(tmp_path / "w2.json", 2)

import json

import pytest

import listprod.cli as cli
from listprod.cli import run
from listprod.lists import ListAssignment
from listprod.suites import random_product_instance


def report(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = run([*argv, "--no-cache", "-o", str(out)])
    return code, json.loads(out.read_text()) if out.exists() else None


def test_chi_list(tmp_path, capsys):
    code, rep = report(tmp_path, "chi-list", "K(2,4)")
    assert code == 0
    assert rep["result"]["chi_list"] == 3 and rep["schema_version"] == 1 and rep["verified"]
    assert "chi_l(K(2,4)) = 3" in capsys.readouterr().out


def test_lcf_and_chromatic(tmp_path):
    assert report(tmp_path, "lcf", "K(3)", "3")[1]["result"]["value"] == "6"
    assert report(tmp_path, "chromatic", "C(5)", "3")[1]["result"]["value"] == "30"


def test_scc(tmp_path):
    assert report(tmp_path, "scc", "C(5)")[1]["result"]["value"] is True
    assert report(tmp_path, "scc", "C(4)")[1]["result"]["value"] is False


def test_fa(tmp_path):
    code, rep = report(tmp_path, "fa", "K(3)", "1")
    assert code == 0 and rep["result"]["value"] == "6"
    assert run(["fa", "K(4)", "1", "--no-cache"]) == 1  # guarded


def test_witness(tmp_path):
    code, rep = report(tmp_path, "witness", "2", "1", "--verify", "--check-deletions")
    assert code == 0
    res = rep["result"]
    assert res["b"] == "2" and res["certificate"] == "non-colorable-by-cover"
    assert res["deletions_colourable"] == res["deletions_checked"] == 2


def test_certify_random_and_file(tmp_path):
    code, rep = report(tmp_path, "certify", "2", "2", "3", "--random", "20")
    assert code == 0 and sum(rep["result"]["kinds"].values()) == 20
    H, L = random_product_instance(__import__("random").Random(1), 2, 1, 2)
    lists = tmp_path / "in.lists"
    lists.write_text(L.to_text())
    code, rep = report(tmp_path, "certify", "2", "1", "2", "--lists", str(lists))
    assert code == 0 and rep["result"]["kind"].startswith(("colorable", "non-colorable"))


def test_optlemma(tmp_path):
    code, rep = report(tmp_path, "optlemma", "--n", "2", "--m", "3", "--k", "2", "--C", "5")
    assert code == 0 and rep["result"]["value"] == "12"
    code, rep = report(tmp_path, "optlemma", "--grid", "--n-max", "3", "--k-max", "3", "--c-max", "6")
    assert code == 0 and rep["result"]["mismatches"] == []


def test_key_sweep_csv(tmp_path, capsys):
    csv_path = tmp_path / "sweep.csv"
    code, rep = report(tmp_path, "key-sweep", "--n-max", "3", "--a-max", "5", "--csv", str(csv_path))
    assert code == 0 and rep["result"]["fails"] == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("n,a,s,verdict")
    assert len(lines) - 1 == rep["result"]["holds"]
    capsys.readouterr()
    assert run(["key-sweep", "--n-max", "2", "--a-max", "3", "--no-cache"]) == 0
    assert capsys.readouterr().out.startswith("n,a,s,verdict")


def test_facts(tmp_path):
    code, rep = report(tmp_path, "facts", "--step", "1/20", "--a-max", "40")
    assert code == 0 and rep["result"]["all_hold"]


def test_lemma_suite_small(tmp_path):
    code, rep = report(tmp_path, "lemma-suite", "--count", "15")
    assert code == 0 and rep["result"]["product"]["violations"] == 0


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(["certify", "2", "2", "4", "--random", "10", "--seed", "7", "--no-cache", "-o", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_json_to_stdout(capsys):
    assert run(["chromatic", "K(3)", "3", "--json", "--no-cache"]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["value"] == "6"


def test_usage_errors():
    assert run(["nope"]) == 1
    assert run(["chi-list"]) == 1
    assert run(["chi-list", "K(", "--no-cache"]) == 1
    assert run(["certify", "2", "2", "3", "--no-cache"]) == 1
    assert run(["optlemma", "--n", "2", "--no-cache"]) == 1


def test_falsification_writes_counterexample(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(cli, "optlemma_closed_form", lambda inst: -1)
    code = run(["optlemma", "--n", "2", "--m", "3", "--k", "2", "--C", "5", "--no-cache",
                "--dump-dir", str(tmp_path)])
    assert code == 2
    assert (tmp_path / "falsification-optlemma.lists").exists()
    assert "FALSIFICATION" in capsys.readouterr().err


def test_falsification_dump_is_a_list_file(tmp_path, monkeypatch):
    from listprod.product import FalsificationError

    L = ListAssignment.from_sequence([[0, 1], [1, 2]])

    def boom(*args, **kwargs):
        raise FalsificationError("synthetic", L)

    monkeypatch.setattr(cli, "certificate_sample", boom)
    assert run(["certify", "2", "1", "1", "--random", "1", "--no-cache", "--dump-dir", str(tmp_path)]) == 2
    text = (tmp_path / "falsification-certify.lists").read_text()
    body = "\n".join(l for l in text.splitlines() if not l.startswith("#"))
    assert ListAssignment.from_text(body) == L

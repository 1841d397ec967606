import json

import pytest

from fintopo import cli
from fintopo.cli import EXIT_FATAL, EXIT_OK, EXIT_USAGE, main
from fintopo.documents import SpaceDocument, map_to_text
from fintopo.implications import parse_dot_edges

X_TEXT = "points: a b c\nopen: {}\nopen: {a}\nopen: {a,b,c}\n"
Y_TEXT = "points: p q\nopen: {}\nopen: {p}\nopen: {p,q}\n"
MAP_TEXT = "a -> q\nb -> p\nc -> q\n"


@pytest.fixture
def files(tmp_path):
    x, y, f = tmp_path / "X.space", tmp_path / "Y.space", tmp_path / "f.map"
    x.write_text(X_TEXT)
    y.write_text(Y_TEXT)
    f.write_text(MAP_TEXT)
    return x, y, f


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def machine(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "machine")
    assert code == EXIT_OK, err
    return json.loads(out)


# -- classify -------------------------------------------------------------


def test_classify_subset_reports_witness(capsys, files):
    doc = machine(capsys, "classify", files[0], "--subset", "{a,c}", "--variant", "alpha-open")
    assert doc["variant"] == "alpha-open"
    (row,) = doc["rows"]
    assert row["classes"]["alpha-m-closed"] is False
    assert row["witnesses"]["alpha-m-closed"] == "{a,c}"


def test_classify_table_output(capsys, files):
    code, out, _ = run(capsys, "classify", files[0], "--subset", "{a,c}")
    assert code == EXIT_OK
    header, row = out.splitlines()
    assert header.split("\t")[0] == "object"
    assert row.startswith("{a,c}\t")
    assert "alpha-m-closed: U={a,c}" in row


def test_classify_discrete_all_subsets(capsys, tmp_path):
    path = tmp_path / "d.space"
    path.write_text("points: a b\nopen: {}\nopen: {a}\nopen: {b}\nopen: {a,b}\n")
    doc = machine(capsys, "classify", path)
    assert len(doc["rows"]) == 4
    for row in doc["rows"]:
        assert all(row["classes"].values())


def test_classify_map_per_variant(capsys, files):
    x, y, f = files
    doc = machine(capsys, "classify", x, "--map", f, "--codomain", y, "--variant", "open")
    classes = doc["rows"][0]["classes"]
    assert classes["alpha-m-continuous"] is True and classes["continuous"] is False
    doc = machine(capsys, "classify", x, "--map", f, "--codomain", y)
    assert doc["rows"][0]["classes"]["alpha-m-continuous"] is False
    assert doc["rows"][0]["witnesses"]["alpha-m-continuous"]["preimage"] == "{a,c}"
    assert "alpha-m-closed-map" in doc["supplied_classes"]


def test_classify_unknown_point(capsys, tmp_path):
    path = tmp_path / "bad.space"
    path.write_text("points: a b\nopen: {}\nopen: {z}\nopen: {a,b}\n")
    code, _, err = run(capsys, "classify", path)
    assert code == EXIT_USAGE
    assert "'z'" in err and "bad.space:3:" in err


def test_classify_not_a_topology(capsys, tmp_path):
    path = tmp_path / "bad.space"
    path.write_text("points: a b c\nopen: {}\nopen: {a}\nopen: {b}\nopen: {a,b,c}\n")
    code, _, err = run(capsys, "classify", path)
    assert code == EXIT_USAGE and "not a topology" in err


def test_classify_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "classify", tmp_path / "nope.space")
    assert code == EXIT_USAGE


def test_classify_output_file(capsys, files, tmp_path):
    out = tmp_path / "out" / "r.json"
    code, stdout, _ = run(capsys, "classify", files[0], "--format", "machine", "-o", out)
    assert code == EXIT_OK and stdout == ""
    assert json.loads(out.read_text())["command"] == "classify"


# -- check-claims ---------------------------------------------------------


def test_check_claims_filter(capsys):
    doc = machine(capsys, "check-claims", "--claim", "C-3.2-fwd", "--variant", "open")
    (v,) = doc["verdicts"]
    assert v["claim"] == "C-3.2-fwd" and v["outcome"] == "verified-up-to"
    assert doc["budget"]["max_domain_n"] == 3


def test_check_claims_unknown(capsys):
    code, _, err = run(capsys, "check-claims", "--claim", "C-0")
    assert code == EXIT_USAGE and "C-0" in err


def test_check_claims_divergence_and_figure(capsys, tmp_path):
    doc = machine(capsys, "check-claims", "--claim", "C-ex-3.3", "--claim", "C-3.2-fwd", "--figures", tmp_path)
    assert doc["variants"] == ["alpha-open", "open"]
    assert doc["variant_divergence"] == ["C-ex-3.3"]
    assert (tmp_path / "claim-verdicts.png").stat().st_size > 0
    code, out, _ = run(capsys, "check-claims", "--claim", "C-ex-3.3")
    assert "# outcome differs between variants: C-ex-3.3" in out


def test_fatal_claim_sets_exit_status(capsys, caplog, monkeypatch):
    real = cli.report.claims_report

    def fake(by_variant, budget):
        doc = real(by_variant, budget)
        doc["fatal_failures"] = ["C-3.4-I"]
        return doc

    monkeypatch.setattr(cli.report, "claims_report", fake)
    code, _, _ = run(capsys, "check-claims", "--claim", "C-3.4-I", "--max-n", "2")
    assert code == EXIT_FATAL
    assert "C-3.4-I" in caplog.text


def test_budget_exceeded_is_not_a_process_failure(capsys):
    doc = machine(capsys, "check-claims", "--claim", "C-4.3", "--wall-clock", "1e-9", "--variant", "open")
    assert doc["verdicts"][0]["outcome"] == "budget-exceeded"


def test_witness_reviolates_through_classify(capsys, tmp_path):
    doc = machine(capsys, "check-claims", "--claim", "C-3.2-conv", "--variant", "open")
    w = doc["verdicts"][0]["witness"]
    x, y = tmp_path / "wx.json", tmp_path / "wy.json"
    x.write_text(json.dumps(w["spaces"][0]))
    y.write_text(json.dumps(w["spaces"][1]))
    m = tmp_path / "w.map"
    m.write_text("".join(f"{a} -> {b}\n" for a, b in w["maps"][0].items()))
    out = machine(capsys, "classify", x, "--map", m, "--codomain", y, "--variant", "open")
    classes = out["rows"][0]["classes"]
    assert classes["alpha-m-continuous"] and not classes["continuous"]


# -- enumerate ------------------------------------------------------------


def test_enumerate_counts(capsys, tmp_path):
    doc = machine(capsys, "enumerate", "--max-n", "4", "--cache-dir", tmp_path)
    assert [r["count"] for r in doc["counts"]] == [1, 4, 29, 355]
    code, out, _ = run(capsys, "enumerate", "--max-n", "3", "--mode", "homeo")
    assert out.splitlines()[-1] == "3\thomeo\t9\tcomplete"


def test_enumerate_env_cache_and_listing(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("FINTOPO_CACHE_DIR", str(tmp_path))
    doc = machine(capsys, "enumerate", "--max-n", "2", "--list", "--figures", tmp_path / "fig")
    assert doc["spaces"]["2"][0] == [[], ["a", "b"]]
    assert sorted(p.name for p in tmp_path.glob("*.txt")) == ["topologies-n1-labeled-v1.txt", "topologies-n2-labeled-v1.txt"]
    assert (tmp_path / "fig" / "topology-counts-labeled.png").exists()


def test_enumerate_rejects_large_n(capsys):
    with pytest.raises(SystemExit):
        main(["enumerate", "--max-n", "9"])


# -- implication-matrix ---------------------------------------------------


@pytest.mark.parametrize("variant", ["alpha-open", "open"])
def test_matrix_graph(capsys, variant):
    code, out, _ = run(capsys, "implication-matrix", "--max-n", "3", "--variant", variant, "--format", "graph")
    assert code == EXIT_OK
    edges = parse_dot_edges(out)
    assert ("closed", "alpha-m-closed") in edges
    assert ("alpha-m-closed", "closed") not in edges
    assert ("open", "alpha-open") in edges and ("alpha-open", "semi-open") in edges


def test_matrix_witnesses_reviolate(capsys, tmp_path):
    doc = machine(capsys, "implication-matrix", "--max-n", "3", "--figures", tmp_path)
    assert (tmp_path / "hasse-n3-alpha-open.png").exists()
    assert (tmp_path / "implications-n3-alpha-open.png").exists()
    pair = next(p for p in doc["pairs"] if p["from"] == "alpha-m-closed" and p["to"] == "closed")
    w = pair["witness"]
    path = tmp_path / "w.json"
    path.write_text(json.dumps(w["space"]))
    out = machine(capsys, "classify", path, "--subset", "{" + ",".join(w["subset"]) + "}")
    classes = out["rows"][0]["classes"]
    assert classes["alpha-m-closed"] and not classes["closed"]


def test_matrix_table(capsys):
    code, out, _ = run(capsys, "implication-matrix", "--max-n", "2")
    lines = out.splitlines()
    assert lines[0].startswith("implies\topen\t")
    assert len(lines) == 1 + 18


def test_reports_are_byte_identical(capsys):
    a = run(capsys, "implication-matrix", "--max-n", "3", "--format", "machine")[1]
    b = run(capsys, "implication-matrix", "--max-n", "3", "--format", "machine")[1]
    assert a == b
    c = run(capsys, "check-claims", "--claim", "C-3.5", "--format", "machine")[1]
    d = run(capsys, "check-claims", "--claim", "C-3.5", "--format", "machine")[1]
    assert c == d


def test_space_document_round_trip_through_cli(capsys, files):
    doc = machine(capsys, "classify", files[0])
    assert doc["space"] == SpaceDocument(["a", "b", "c"], [[], ["a"], ["a", "b", "c"]]).as_dict()


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "fintopo" in capsys.readouterr().out


def test_map_to_text_is_cli_readable(capsys, files, ex_x, ex_y, tmp_path):
    m = tmp_path / "g.map"
    m.write_text(map_to_text((0, 0, 0), ex_x, ex_y))
    doc = machine(capsys, "classify", files[0], "--map", m, "--codomain", files[1])
    assert doc["rows"][0]["classes"]["continuous"] is True

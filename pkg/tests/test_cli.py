"""End-to-end command-line behavior and exit codes."""

from __future__ import annotations

import json

import pytest

from ebdi import ComputationError
from ebdi.cli import main
from conftest import write_corpus_files


@pytest.fixture
def corpus_paths(tmp_path):
    sc_rows = [("F", "Focal", ""), ("A", "Other A", ""), ("B", "Other B", "")]
    journal_rows = [
        ("J1", "One", "F"),
        ("J2", "Two", "F"),
        ("J3", "Three", "F"),
        ("JA", "A Journal", "A"),
        ("JB", "B Journal", "A;B"),
    ]
    citation_rows = [
        ("J1", "J2", "CITED", 8), ("J1", "JA", "CITED", 2), ("J1", "JB", "CITED", 1),
        ("J1", "J3", "CITING", 5), ("J1", "JA", "CITING", 4),
        ("J2", "J1", "CITED", 3), ("J2", "JB", "CITED", 6),
        ("J2", "JA", "CITING", 1), ("J2", "J3", "CITING", 1),
        ("J3", "J1", "CITED", 2), ("J3", "JA", "CITED", 2),
        ("J3", "J2", "CITING", 7), ("J3", "JB", "CITING", 2),
    ]
    return write_corpus_files(tmp_path, sc_rows, journal_rows, citation_rows)


def corpus_args(paths):
    return [
        "--classification", str(paths["classification"]),
        "--journals", str(paths["journals"]),
        "--citations", str(paths["citations"]),
    ]


def test_indicators_end_to_end(tmp_path, corpus_paths, capsys):
    out = tmp_path / "out"
    code = main(["indicators", *corpus_args(corpus_paths), "--focal-sc", "F",
                 "--out", str(out)])
    assert code == 0
    assert (out / "indicators.csv").exists()
    assert (out / "run_meta.json").exists()
    meta = json.loads((out / "run_meta.json").read_text())
    assert meta["n_categories"] == 3
    assert "indicators" in capsys.readouterr().out


def test_roles_end_to_end(tmp_path, corpus_paths):
    out = tmp_path / "out"
    code = main(["roles", *corpus_args(corpus_paths), "--focal-sc", "F",
                 "--out", str(out), "--format", "json"])
    assert code == 0
    assert (out / "roles.json").exists()
    assert (out / "scatter.svg").exists()
    payload = json.loads((out / "roles.json").read_text())
    assert len(payload["rows"]) == 3
    assert payload["meta"]["cited_threshold"] is not None


def test_roles_from_scores_file(tmp_path):
    scores = tmp_path / "scores.csv"
    scores.write_text(
        "unit_id,cited_ebdi,citing_ebdi\na,1.0,2.0\nb,2.0,1.0\nc,0.5,0.7\n",
        encoding="utf-8",
    )
    out = tmp_path / "out"
    code = main(["roles", "--scores", str(scores), "--out", str(out)])
    assert code == 0
    assert (out / "roles.csv").exists()


def test_correlate_end_to_end(tmp_path, corpus_paths):
    metrics = tmp_path / "metrics.csv"
    metrics.write_text(
        "journal_id,metric_name,value\n"
        "J1,impact,3.2\nJ2,impact,1.1\nJ3,impact,2.4\n",
        encoding="utf-8",
    )
    out = tmp_path / "out"
    code = main(["correlate", *corpus_args(corpus_paths), "--focal-sc", "F",
                 "--metrics", str(metrics), "--out", str(out)])
    assert code == 0
    assert (out / "correlations.csv").exists()


def test_network_end_to_end(tmp_path, corpus_paths):
    out = tmp_path / "out"
    code = main(["network", *corpus_args(corpus_paths), "--dimension", "cited",
                 "--top-k", "2", "--out", str(out)])
    assert code == 0
    lines = (out / "sc_network.csv").read_text().splitlines()
    assert lines[0] == "source_sc,target_sc,weight"
    assert len(lines) > 1


def test_missing_input_file_exits_1(tmp_path, corpus_paths):
    code = main(["indicators",
                 "--classification", str(tmp_path / "nope.csv"),
                 "--journals", str(corpus_paths["journals"]),
                 "--citations", str(corpus_paths["citations"]),
                 "--out", str(tmp_path / "out")])
    assert code == 1


def test_malformed_row_exits_1(tmp_path, corpus_paths):
    bad = tmp_path / "bad_citations.csv"
    bad.write_text(
        "focal_journal_id,partner_journal_id,dimension,count\nJ1,J2,CITED,-3\n",
        encoding="utf-8",
    )
    code = main(["indicators",
                 "--classification", str(corpus_paths["classification"]),
                 "--journals", str(corpus_paths["journals"]),
                 "--citations", str(bad),
                 "--out", str(tmp_path / "out")])
    assert code == 1


def test_warning_still_exits_0(tmp_path):
    # J2 never cites anything: its CITING rows are missing values, not errors
    paths = write_corpus_files(
        tmp_path,
        sc_rows=[("F", "Focal", ""), ("A", "Other", "")],
        journal_rows=[("J1", "One", "F"), ("J2", "Two", "F")],
        citation_rows=[("J1", "J2", "CITED", 3)],
    )
    code = main(["indicators", *corpus_args(paths), "--out", str(tmp_path / "out")])
    assert code == 0


def test_internal_error_exits_2(tmp_path, corpus_paths, monkeypatch):
    import ebdi.cli as cli_module

    def boom(config):
        raise ComputationError("synthetic failure")

    monkeypatch.setattr(cli_module, "run_indicators", boom)
    code = main(["indicators", *corpus_args(corpus_paths), "--out", str(tmp_path / "out")])
    assert code == 2


def test_n_categories_override_recorded(tmp_path, corpus_paths):
    out = tmp_path / "out"
    code = main(["indicators", *corpus_args(corpus_paths), "--n-categories", "53",
                 "--out", str(out)])
    assert code == 0
    meta = json.loads((out / "run_meta.json").read_text())
    assert meta["n_categories"] == 53


def test_fractional_counting_flag(tmp_path, corpus_paths):
    out = tmp_path / "out"
    code = main(["indicators", *corpus_args(corpus_paths), "--counting", "fractional",
                 "--out", str(out)])
    assert code == 0
    meta = json.loads((out / "run_meta.json").read_text())
    assert meta["counting_mode"] == "fractional"

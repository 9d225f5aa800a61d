"""CLI subcommands, exports, report structure and exit codes."""

from __future__ import annotations

import json

import pytest

from gradenet import build_graph, group_campaigns, parse_records
from gradenet.cli import main
from gradenet.exports import (
    dot_dumps,
    dot_loads,
    graphml_dumps,
    graphml_loads,
    records_csv_dumps,
)
from gradenet.pipeline import AnalysisConfig, run_analysis, zscore_rows
from gradenet.stats import STATISTICS

from conftest import SNAPSHOT_CSV

SYNTH_CONFIG = {
    "bands": [
        {
            "name": "low",
            "interval": [0.0, 0.1],
            "items": {
                f"L{i}": {"carbon": 0.01 * (i + 1), "width_mm": 1500.0}
                for i in range(4)
            },
        },
        {
            "name": "high",
            "interval": [0.15, 0.3],
            "items": {
                f"H{i}": {"carbon": 0.15 + 0.03 * i, "width_mm": 1600.0}
                for i in range(4)
            },
        },
    ],
    "campaign_count": 60,
    "campaign_size": [2, 3],
}


@pytest.fixture
def input_csv(tmp_path):
    path = tmp_path / "records.csv"
    path.write_text(SNAPSHOT_CSV, encoding="utf-8")
    return path


def test_mine_outputs(tmp_path, input_csv):
    out = tmp_path / "out"
    assert main(["mine", str(input_csv), "--out", str(out)]) == 0
    for name in (
        "network.graphml",
        "network.dot",
        "edges.csv",
        "hist_campaign_diversity.csv",
        "hist_slabs_per_grade.csv",
    ):
        assert (out / name).exists()
    nodes, edges = graphml_loads((out / "network.graphml").read_text())
    assert nodes == ["1", "2", "3", "4"]
    assert edges == [("1", "2"), ("3", "4")]
    dot_nodes, dot_edges = dot_loads((out / "network.dot").read_text())
    assert (dot_nodes, dot_edges) == (nodes, edges)
    assert (out / "edges.csv").read_text().splitlines()[0] == "item_a,item_b,lift"


def test_export_round_trip_preserves_graph():
    records = parse_records(SNAPSHOT_CSV)
    cograph = build_graph(group_campaigns(records), records)
    for dumps, loads in ((graphml_dumps, graphml_loads), (dot_dumps, dot_loads)):
        nodes, edges = loads(dumps(cograph))
        assert nodes == cograph.graph.nodes()
        assert edges == cograph.graph.edges()


def test_records_csv_round_trip():
    records = parse_records(SNAPSHOT_CSV)
    again = parse_records(records_csv_dumps(records))
    assert again == records


def test_analyze_outputs(tmp_path, input_csv):
    out = tmp_path / "report"
    code = main(
        [
            "analyze",
            str(input_csv),
            "--out",
            str(out),
            "--windows",
            "2",
            "--ensemble",
            "30",
            "--seed",
            "7",
        ]
    )
    assert code == 0
    report = json.loads((out / "report.json").read_text())
    assert report["input"]["campaigns"] == 2
    assert report["config"]["seed"] == 7
    assert len(report["stages"]) == 2
    final = report["stages"][-1]
    assert sorted(map(sorted, final["components"])) == [["1", "2"], ["3", "4"]]
    assert (out / "zscores.csv").read_text().startswith("stage,scope,model,statistic")


def test_analyze_byte_identical_reports(tmp_path, input_csv):
    args = ["analyze", str(input_csv), "--windows", "2", "--ensemble", "20"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    first = (tmp_path / "a" / "report.json").read_bytes()
    second = (tmp_path / "b" / "report.json").read_bytes()
    assert first == second


def test_synth_command(tmp_path):
    config_path = tmp_path / "planner.json"
    config_path.write_text(json.dumps(SYNTH_CONFIG), encoding="utf-8")
    out = tmp_path / "synthetic"
    assert main(["synth", str(config_path), "--seed", "3", "--out", str(out)]) == 0
    records = parse_records((out / "records.csv").read_text())
    assert {rec.item[0] for rec in records} == {"L", "H"}
    # synth output feeds straight back into analyze
    out2 = tmp_path / "analysis"
    code = main(
        [
            "analyze",
            str(out / "records.csv"),
            "--out",
            str(out2),
            "--windows",
            "3",
            "--ensemble",
            "25",
        ]
    )
    assert code == 0


def test_exit_codes(tmp_path, input_csv, capsys):
    assert main([]) == 1  # missing subcommand
    assert main(["mine", str(input_csv)]) == 1  # missing --out
    bad_csv = tmp_path / "bad.csv"
    bad_csv.write_text("campaign,grade\nA,\n", encoding="utf-8")
    assert main(["mine", str(bad_csv), "--out", str(tmp_path / "o1")]) == 2
    missing_column = tmp_path / "cols.csv"
    missing_column.write_text("foo,bar\n1,2\n", encoding="utf-8")
    assert main(["mine", str(missing_column), "--out", str(tmp_path / "o2")]) == 2
    assert main(["mine", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "o3")]) == 2
    bad_config = tmp_path / "bad.json"
    bad_config.write_text("{not json", encoding="utf-8")
    assert main(["synth", str(bad_config), "--out", str(tmp_path / "o4")]) == 1
    code = main(
        [
            "analyze",
            str(input_csv),
            "--out",
            str(tmp_path / "o5"),
            "--windows",
            "99",
        ]
    )
    assert code == 1  # more windows than campaigns
    capsys.readouterr()


def test_report_cell_completeness(snapshot_csv):
    config = AnalysisConfig(windows=2, ensemble=20, seed=1)
    report = run_analysis(snapshot_csv, config)
    for entry in report["stages"]:
        for scope in ("full", "pruned"):
            block = entry["ensembles"][scope]
            for model in report["config"]["models"]:
                assert set(block[model]) == set(STATISTICS)
                for cell in block[model].values():
                    assert "z" in cell or "undefined" in cell
    rows = zscore_rows(report)
    assert len(rows) == 2 * 2 * 3 * 2  # stages x scopes x models x statistics


def test_analyze_component_selector(snapshot_csv):
    config = AnalysisConfig(windows=1, ensemble=20, component="min-mean:carbon")
    report = run_analysis(snapshot_csv, config)
    assert report["stages"][0]["selected_component"] == ["1", "2"]
    config_high = AnalysisConfig(windows=1, ensemble=20, component="largest")
    report_high = run_analysis(snapshot_csv, config_high)
    assert report_high["stages"][0]["selected_component"] == ["1", "2"]


def test_analyze_node_ages(snapshot_csv):
    report = run_analysis(snapshot_csv, AnalysisConfig(windows=2, ensemble=20))
    assert report["node_ages"] == {"1": 0, "2": 0, "3": 1, "4": 1}

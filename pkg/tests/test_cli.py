import json

import pytest
from click.testing import CliRunner

from genperm.backend.cli.manifest import fmt_number, manifest_path, render_csv
from genperm.main import cli, main


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def ring_files(runner, tmp_path):
    graph, cover = tmp_path / "ring.txt", tmp_path / "ring.cmty"
    result = runner.invoke(cli, ["generate", "ring", "--k", "3", "--s", "4", "--out-graph", str(graph), "--out-cover", str(cover)])
    assert result.exit_code == 0, result.output
    return graph, cover, json.loads(result.stdout)


def test_generate_writes_files_and_manifests(ring_files):
    graph, cover, summary = ring_files
    assert summary == {"nodes": 15, "edges": 24, "communities": 6}
    assert len(cover.read_text().splitlines()) == 6
    manifest = json.loads(manifest_path(graph).read_text())
    assert manifest["subcommand"] == "generate ring"
    assert manifest["flags"] == {"k": 3, "s": 4}
    assert manifest_path(cover).exists()


def test_detect_is_reproducible(runner, ring_files, tmp_path):
    graph, _, _ = ring_files
    outs = []
    for name in ("a.cmty", "b.cmty"):
        out = tmp_path / name
        result = runner.invoke(cli, ["detect", "--graph", str(graph), "--out", str(out), "--report", str(out) + ".json"])
        assert result.exit_code == 0, result.output
        outs.append(out.read_text())
    assert outs[0] == outs[1]
    report = json.loads((tmp_path / "a.cmty.json").read_text())
    assert report["iterations"] == len(report["objective_history"])
    assert manifest_path(tmp_path / "a.cmty").exists()


def test_score(runner, ring_files):
    graph, cover, _ = ring_files
    result = runner.invoke(cli, ["score", "--graph", str(graph), "--cover", str(cover)])
    assert result.exit_code == 0, result.output
    scores = json.loads(result.stdout)
    assert list(scores) == ["genperm", "eq", "qov", "cc", "oc", "per_vertex_path"]
    assert scores["genperm"] == pytest.approx(0.7)
    assert scores["per_vertex_path"] is None

    table = runner.invoke(cli, ["score", "--graph", str(graph), "--cover", str(cover), "--table"])
    lines = table.stdout.splitlines()
    assert lines[0] == "v,c,genperm"
    assert len(lines) == 1 + 15


def test_score_writes_per_vertex_table(runner, ring_files, tmp_path):
    graph, cover, _ = ring_files
    target = tmp_path / "tables" / "ring.csv"
    result = runner.invoke(cli, ["score", "--graph", str(graph), "--cover", str(cover), "--per-vertex", str(target)])
    assert result.exit_code == 0, result.output
    scores = json.loads(result.stdout)
    assert scores["per_vertex_path"] == str(target)
    assert scores["genperm"] == pytest.approx(0.7)
    table = runner.invoke(cli, ["score", "--graph", str(graph), "--cover", str(cover), "--table"])
    assert target.read_text() == table.stdout
    assert target.read_text().splitlines()[0] == "v,c,genperm"


def test_validate_identical(runner, ring_files):
    _, cover, _ = ring_files
    result = runner.invoke(cli, ["validate", "--truth", str(cover), "--detected", str(cover)])
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["onmi"] == 1.0
    assert report["composite"] == pytest.approx(3.0)


def test_one_indexed_round_trip(runner, tmp_path):
    graph, cover = tmp_path / "g.txt", tmp_path / "c.txt"
    result = runner.invoke(cli, ["--one-indexed", "generate", "bridge-pair", "--size", "3",
                                 "--out-graph", str(graph), "--out-cover", str(cover)])
    assert result.exit_code == 0, result.output
    assert cover.read_text().splitlines() == ["1 2 3", "4 5 6"]
    result = runner.invoke(cli, ["--one-indexed", "score", "--graph", str(graph), "--cover", str(cover), "--table"])
    assert result.stdout.splitlines()[1].startswith("1,0,")


def test_spread_trace(runner, tmp_path):
    graph = tmp_path / "path.txt"
    graph.write_text("0 1\n1 2\n")
    cover = tmp_path / "path.cmty"
    cover.write_text("0 1 2\n")
    result = runner.invoke(cli, ["spread", "--graph", str(graph), "--cover", str(cover), "--initiators", "1"])
    assert result.exit_code == 0, result.output
    trace = json.loads(result.stdout)
    assert trace["steps"] == 2
    assert trace["informed_per_step"] == [1, 2, 3]


def test_spread_trace_needs_no_cover(runner, tmp_path):
    graph = tmp_path / "path.txt"
    graph.write_text("0 1\n1 2\n")
    result = runner.invoke(cli, ["spread", "--graph", str(graph), "--initiators", "1"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["steps"] == 2

    result = runner.invoke(cli, ["spread", "--graph", str(graph), "--k", "1", "--runs", "2"])
    assert result.exit_code == 2
    assert "--cover is required" in result.output


def test_sample_anchor_outside_the_graph(runner, tmp_path):
    graph, cover = tmp_path / "star.txt", tmp_path / "star.cmty"
    result = runner.invoke(cli, ["--one-indexed", "generate", "star", "--center", "4", "--surround", "4,4,4,4",
                                 "--out-graph", str(graph), "--out-cover", str(cover)])
    assert result.exit_code == 0, result.output
    result = runner.invoke(cli, ["--one-indexed", "sample", "--graph", str(graph), "--cover", str(cover),
                                 "--anchor", "0", "--out-graph", str(tmp_path / "s.txt"),
                                 "--out-cover", str(tmp_path / "s.cmty")])
    assert result.exit_code == 1
    assert "outside" in result.stderr


@pytest.fixture
def study_files(runner, ring_files, tmp_path):
    graph, cover, _ = ring_files
    star_graph, star_cover = tmp_path / "star.txt", tmp_path / "star.cmty"
    result = runner.invoke(cli, ["generate", "star", "--center", "4", "--surround", "4,4,4,4",
                                 "--out-graph", str(star_graph), "--out-cover", str(star_cover)])
    assert result.exit_code == 0, result.output
    (tmp_path / "whole.cmty").write_text(" ".join(str(v) for v in range(15)) + "\n")
    (tmp_path / "halves.cmty").write_text("0 1 2 3 4 5 6 7\n8 9 10 11 12 13 14\n")
    candidates = tmp_path / "candidates.yaml"
    candidates.write_text(
        "candidates:\n"
        "  - {name: truth, path: ring.cmty}\n"
        "  - {name: whole, path: whole.cmty}\n"
        "  - {name: halves, path: halves.cmty}\n"
    )
    return {
        "graph": str(graph),
        "cover": str(cover),
        "star_graph": str(star_graph),
        "star_cover": str(star_cover),
        "candidates": str(candidates),
        "dir": tmp_path,
    }


REPEATABLE = {
    "rankcorr": lambda f: ["rankcorr", "--graph", f["graph"], "--truth", f["cover"], "--candidates", f["candidates"]],
    "perturb-apply": lambda f: ["perturb", "apply", "--graph", f["graph"], "--cover", f["cover"],
                                "--strategy", "random", "--p", "0.2"],
    "perturb-sweep": lambda f: ["perturb", "sweep", "--graph", f["graph"], "--cover", f["cover"],
                                "--p-grid", "0,0.2", "--trials", "2"],
    "profile": lambda f: ["analyze", "profile", "--graph", f["graph"], "--cover", f["cover"]],
    "farness": lambda f: ["analyze", "farness", "--graph", f["graph"], "--cover", f["cover"], "--community", "0"],
    "assortativity": lambda f: ["analyze", "assortativity", "--graph", f["graph"], "--cover", f["cover"],
                                "--community", "0", "--community", "1"],
    # the ring's second layer is empty, so only the zero share is valid
    "removal": lambda f: ["analyze", "removal", "--graph", f["graph"], "--cover", f["cover"],
                          "--x-grid", "0", "--trials", "1"],
    "constant": lambda f: ["analyze", "constant", "--graph", f["graph"], "--runs", "2"],
    "spread": lambda f: ["spread", "--graph", f["graph"], "--cover", f["cover"], "--k", "2", "--runs", "5"],
}


@pytest.mark.parametrize("name", sorted(REPEATABLE))
def test_commands_repeat_byte_for_byte(runner, study_files, name):
    args = REPEATABLE[name](study_files)
    outputs = []
    for _ in range(2):
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        outputs.append(result.stdout)
    assert outputs[0] == outputs[1]
    assert outputs[0]


def test_sample_repeats_byte_for_byte(runner, study_files):
    out_dir = study_files["dir"]
    runs = []
    for tag in ("a", "b"):
        out_graph, out_cover = out_dir / f"{tag}.txt", out_dir / f"{tag}.cmty"
        result = runner.invoke(cli, ["sample", "--graph", study_files["star_graph"], "--cover", study_files["star_cover"],
                                     "--seed", "3", "--out-graph", str(out_graph), "--out-cover", str(out_cover)])
        assert result.exit_code == 0, result.output
        runs.append((result.stdout, out_graph.read_text(), out_cover.read_text()))
    assert runs[0] == runs[1]


def test_usage_error_exits_2(runner):
    result = runner.invoke(cli, ["detect"])
    assert result.exit_code == 2


def test_data_error_exits_1(runner, tmp_path):
    graph = tmp_path / "split.txt"
    graph.write_text("0 1\n2 3\n")
    result = runner.invoke(cli, ["detect", "--graph", str(graph)])
    assert result.exit_code == 1
    assert result.stderr.splitlines()[-1].startswith("error: DetectionError:")


def test_main_returns_exit_code(tmp_path):
    assert main(["--version"]) == 0
    assert main(["detect"]) == 2


def test_render_helpers():
    assert fmt_number(1 / 3) == "0.333333333333"
    assert fmt_number(2.0) == "2"
    assert render_csv(["a", "b"], [[1, 0.5], ["x", None]]) == "a,b\n1,0.5\nx,\n"

import json
import math
from pathlib import Path

import pytest

from astopo import (
    EmptyGraphError,
    build_from_edges,
    compute_summary,
    edge_lines,
    scale_free,
)
from astopo.cli import main
from astopo.summary import emit_run, format_scalar, summary_json, summary_lines

from .generators import clique, cycle, gnp, path, star


# -- summary computation --------------------------------------------------------


def test_summary_clique4():
    s = compute_summary(clique(4)).summary
    assert s.n == 4 and s.m == 6
    assert s.avg_degree == 3.0
    assert s.k_max == 3
    assert s.assortativity is None  # zero degree variance
    assert s.c_mean == 1.0 and s.c_coeff == 1.0
    assert s.avg_distance == 1.0
    assert s.distance_sigma == 0.0
    assert s.node_betweenness_norm == pytest.approx(0.5)
    assert s.edge_betweenness_norm == pytest.approx(1 / 6)
    assert s.top_eigenvalues[0] == pytest.approx(3.0)
    assert s.top_eigenvalues[1] == pytest.approx(-1.0)


def test_summary_notes_giant_component():
    g = build_from_edges([(1, 2), (2, 3), (5, 6)])
    bundle = compute_summary(g)
    assert any("giant component" in note for note in bundle.notes)
    # distances come from the 3-node component
    assert bundle.summary.avg_distance == pytest.approx(4 / 3)


def test_summary_single_node():
    bundle = compute_summary(build_from_edges([], nodes=[7]))
    s = bundle.summary
    assert s.n == 1 and s.m == 0
    assert s.avg_distance is None
    assert s.node_betweenness_norm is None
    assert any("skipped" in note for note in bundle.notes)


def test_summary_empty_graph_is_an_error():
    with pytest.raises(EmptyGraphError):
        compute_summary(build_from_edges([]))


def test_summary_series_catalog():
    bundle = compute_summary(gnp(40, 0.15, seed=2))
    for name in (
        "degree_pdf",
        "degree_ccdf",
        "avg_neighbor_degree",
        "avg_neighbor_degree_norm",
        "clustering",
        "rich_club",
        "distance_distribution",
        "expansion",
        "distance_by_degree",
        "node_betweenness_by_degree",
        "edge_betweenness_by_degrees",
        "jdd",
        "spectrum",
    ):
        assert name in bundle.series, name
        assert bundle.series[name], name


def test_summary_eigs_parameter():
    bundle = compute_summary(gnp(30, 0.2, seed=1), eigs=7)
    assert len(bundle.series["spectrum"]) == 7
    assert len(bundle.summary.top_eigenvalues) == 3


def test_summary_scale_free_exponent():
    g = scale_free(600, attach=3, seed=4)
    bundle = compute_summary(g, fit_threshold=0.5)
    s = bundle.summary
    assert s.gamma is not None
    assert 1.5 < s.gamma < 3.5
    if s.gamma > 1.0:
        assert s.k_max_pl == pytest.approx(600 ** (1 / (s.gamma - 1)))


def test_summary_pdf_series_sums_to_one():
    bundle = compute_summary(gnp(25, 0.2, seed=3))
    total = math.fsum(p for _k, p in bundle.series["degree_pdf"])
    assert total == pytest.approx(1.0, abs=1e-12)
    d_total = math.fsum(p for _d, _c, p in bundle.series["distance_distribution"])
    assert d_total == pytest.approx(1.0, abs=1e-12)


# -- formatting ------------------------------------------------------------------


def test_format_scalar():
    assert format_scalar(None) == "-"
    assert format_scalar(True) == "true"
    assert format_scalar(False) == "false"
    assert format_scalar(42) == "42"
    assert format_scalar(3.14159265) == "3.14159"
    assert format_scalar(0.5) == "0.5"
    assert format_scalar(1e-7) == "1e-07"


def test_summary_lines_shape():
    s = compute_summary(clique(4)).summary
    lines = summary_lines(s)
    assert lines[0] == "n 4"
    assert lines[1] == "m 6"
    assert "assortativity -" in lines
    assert any(line.startswith("eigenvalue_1 3") for line in lines)
    # one token pair per line
    for line in lines:
        assert len(line.split()) == 2


def test_summary_json_rounding():
    s = compute_summary(cycle(5)).summary
    doc = summary_json(s)
    assert doc["n"] == 5
    assert doc["avg_distance"] == 1.5
    assert isinstance(doc["top_eigenvalues"], list)
    json.dumps(doc)  # must be serializable as-is


def test_emit_run_writes_catalog(tmp_path):
    bundle = compute_summary(gnp(20, 0.25, seed=5))
    files = emit_run(bundle, tmp_path)
    assert "summary.txt" in files and "summary.json" in files
    for name in files:
        assert (tmp_path / name).is_file()
    text = (tmp_path / "summary.txt").read_text()
    assert text.startswith("n 20\n")
    for name, rows in bundle.series.items():
        body = (tmp_path / f"{name}.txt").read_text().splitlines()
        assert body[0].startswith("# ")
        assert len(body) == 1 + len(rows)


def test_emit_run_text_only(tmp_path):
    bundle = compute_summary(cycle(4))
    files = emit_run(bundle, tmp_path, emit="text")
    assert "summary.txt" in files
    assert "summary.json" not in files


# -- CLI ----------------------------------------------------------------------


def adjacency_file(tmp_path: Path, g, name="graph.txt") -> Path:
    f = tmp_path / name
    f.write_text("\n".join(f"{u} {v}" for u, v in g.edges()) + "\n")
    return f


def test_cli_build_stdout(tmp_path, capsys):
    f = tmp_path / "in.txt"
    f.write_text("2 1\n3 1\n1 2\n")
    assert main(["build", str(f)]) == 0
    out = capsys.readouterr().out
    assert out == "1 2\n1 3\n"


def test_cli_build_roundtrip_is_identity(tmp_path, capsys):
    g = gnp(30, 0.2, seed=8)
    first = tmp_path / "first.txt"
    assert main(["build", str(adjacency_file(tmp_path, g)), "--out", str(first)]) == 0
    assert main(["build", str(first)]) == 0
    assert capsys.readouterr().out == first.read_text()


def test_cli_build_merges_inputs(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text("1 2\n")
    b.write_text("2 3\n")
    assert main(["build", str(a), str(b)]) == 0
    assert capsys.readouterr().out == "1 2\n2 3\n"


def test_cli_build_as_paths_format(tmp_path, capsys):
    f = tmp_path / "paths.txt"
    f.write_text("701 701 1239\n1239 3356\n")
    assert main(["build", str(f), "--format", "as-paths"]) == 0
    # canonical order is lexicographic on the line text
    assert capsys.readouterr().out == "1239 3356\n701 1239\n"


def test_cli_build_rpsl_format(tmp_path, capsys):
    f = tmp_path / "db.txt"
    f.write_text(
        "aut-num: AS1\nimport: from AS2 accept ANY\n\naut-num: AS2\n"
    )
    assert main(["build", str(f), "--format", "rpsl"]) == 0
    assert capsys.readouterr().out == "1 2\n"


def test_cli_filter_flags(tmp_path, capsys):
    f = tmp_path / "in.txt"
    f.write_text("1 65000\n")
    assert main(["build", str(f)]) == 0
    assert capsys.readouterr().out == "1\n"
    assert main(["build", str(f), "--filter-private", "none"]) == 0
    assert capsys.readouterr().out == "1 65000\n"


def test_cli_keep_as_sets(tmp_path, capsys):
    f = tmp_path / "paths.txt"
    f.write_text("1 {8} 3\n")
    assert main(["build", str(f), "--format", "as-paths", "--keep-as-sets"]) == 0
    assert capsys.readouterr().out == "1\n3\n8\n"


def test_cli_summary_stdout(tmp_path, capsys):
    f = adjacency_file(tmp_path, clique(4))
    assert main(["summary", str(f)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("n 4\nm 6\n")
    assert "avg_degree 3" in out


def test_cli_summary_out_dir(tmp_path, capsys):
    f = adjacency_file(tmp_path, gnp(25, 0.2, seed=6))
    out = tmp_path / "run"
    assert main(["summary", str(f), "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    for name in manifest["files"]:
        assert (out / name).is_file(), name
    assert (out / "summary.txt").is_file()
    assert (out / "summary.json").is_file()
    doc = json.loads((out / "summary.json").read_text())
    assert doc["n"] == 25


def test_cli_fit_reads_emitted_series(tmp_path, capsys):
    f = adjacency_file(tmp_path, scale_free(300, attach=2, seed=9))
    out = tmp_path / "run"
    assert main(["summary", str(f), "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["fit", str(out / "degree_ccdf.txt")]) == 0
    line = capsys.readouterr().out
    assert line.startswith("exponent ")
    assert "r_squared" in line


def test_cli_fit_json(tmp_path, capsys):
    f = tmp_path / "law.txt"
    f.write_text("# x y\n" + "\n".join(f"{x} {5.0 * x**-2.0}" for x in range(1, 20)))
    assert main(["fit", str(f), "--emit", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["exponent"] == pytest.approx(-2.0, abs=1e-12)
    assert doc["accepted"] is True


def test_cli_fit_range(tmp_path, capsys):
    f = tmp_path / "law.txt"
    f.write_text("\n".join(f"{x} {x**-1.5}" for x in range(1, 30)))
    assert main(["fit", str(f), "--range", "5:15"]) == 0
    assert "n_points 11" in capsys.readouterr().out


def test_cli_fit_bad_file(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("1 2\nfoo bar\n")
    assert main(["fit", str(f)]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert "line" in err or "2" in err


def test_cli_spectrum(tmp_path, capsys):
    f = adjacency_file(tmp_path, clique(4))
    assert main(["spectrum", str(f), "--eigs", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "# rank_over_n abs_lambda"
    assert lines[1] == "# signed: 3 -1 -1 -1"
    assert lines[2].split() == ["0.25", "3.0"]
    assert len(lines) == 6


def test_cli_compare_stdout(tmp_path, capsys):
    a = adjacency_file(tmp_path, cycle(3), "a.txt")
    b = adjacency_file(tmp_path, path(3), "b.txt")
    assert main(["compare", str(a), str(b)]) == 0
    out = capsys.readouterr().out
    assert "nodes_both 3" in out
    assert "edges_only_a 1" in out
    assert "# reduced graph a" in out
    assert "# reduced graph b" in out


def test_cli_compare_out_dir(tmp_path):
    a = adjacency_file(tmp_path, gnp(20, 0.2, seed=1), "a.txt")
    b = adjacency_file(tmp_path, gnp(20, 0.25, seed=2), "b.txt")
    out = tmp_path / "cmp"
    assert main(["compare", str(a), str(b), "--out", str(out)]) == 0
    assert (out / "delta.txt").is_file()
    assert (out / "delta.json").is_file()
    assert (out / "reduced_a" / "summary.txt").is_file()
    assert (out / "reduced_b" / "summary.txt").is_file()
    manifest = json.loads((out / "manifest.json").read_text())
    assert "reduced_a/summary.txt" in manifest["files"]


def test_cli_compare_disjoint_graphs_still_emit_delta(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text("1 2\n")
    b.write_text("3 4\n")
    out = tmp_path / "cmp"
    assert main(["compare", str(a), str(b), "--out", str(out)]) == 0
    assert "reduced pair skipped" in capsys.readouterr().err
    assert (out / "delta.txt").is_file()
    assert not (out / "reduced_a").exists()
    delta = json.loads((out / "delta.json").read_text())
    assert delta["nodes_both"] == 0


def test_cli_compare_exclusive_profiles(tmp_path):
    a = adjacency_file(tmp_path, star(5), "a.txt")
    b = tmp_path / "b.txt"
    b.write_text("1 2\n2 3\n")
    out = tmp_path / "cmp"
    assert main(["compare", str(a), str(b), "--out", str(out)]) == 0
    text = (out / "delta.txt").read_text()
    assert "exclusive_a_mean_degree 1" in text
    profile = (out / "exclusive_a_degree_pdf.txt").read_text().splitlines()
    assert profile[0] == "# k probability"
    assert profile[1] == "1 1.0"


def test_cli_errors_exit_2(tmp_path, capsys):
    missing = tmp_path / "nope.txt"
    assert main(["build", str(missing)]) == 2
    assert capsys.readouterr().err.startswith("error:")

    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert main(["summary", str(empty)]) == 2
    assert "error:" in capsys.readouterr().err

    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n")
    assert main(["build", str(bad), "--filter-private", "oops"]) == 2
    assert main(["spectrum", str(bad), "--eigs", "0"]) == 2


def test_cli_worker_count_output_is_byte_identical(tmp_path):
    g = gnp(300, 0.02, seed=13)
    f = adjacency_file(tmp_path, g)
    out1 = tmp_path / "w1"
    out2 = tmp_path / "w2"
    assert main(["summary", str(f), "--out", str(out1), "--workers", "1"]) == 0
    assert main(["summary", str(f), "--out", str(out2), "--workers", "2"]) == 0
    names1 = sorted(p.name for p in out1.iterdir())
    names2 = sorted(p.name for p in out2.iterdir())
    assert names1 == names2
    for name in names1:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name


def test_edge_lines_matches_cli_build(tmp_path, capsys):
    g = gnp(15, 0.3, seed=3)
    f = adjacency_file(tmp_path, g)
    assert main(["build", str(f)]) == 0
    assert capsys.readouterr().out == "\n".join(edge_lines(g)) + "\n"

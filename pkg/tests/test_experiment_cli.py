import csv
import io
import json
import os
import subprocess
import sys

import pydot
import pytest

from rainbow_kit import generators as gen
from rainbow_kit.cli import main
from rainbow_kit.colourers import BoundReport, colour_girth_pipeline
from rainbow_kit.colouring import EdgeColouring
from rainbow_kit.experiment import (ExperimentConfig, all_ok, expand, export_dot, instances,
                                    reports_csv, run_experiment, worker_count)
from rainbow_kit.generators import FamilySpec


def cfg(**kw):
    return ExperimentConfig.from_dict(kw)


def test_cycle_suite():
    reports = run_experiment(cfg(families=[{"family": "cycle", "params": {"n": list(range(4, 10))}}],
                                 algorithms=["two-connected"]))
    assert len(reports) == 6 and all_ok(reports)
    for r in reports:
        assert r.verified and r.colours_used <= (r.n + 1) // 2 + 1


def test_layered_metrics_only():
    reports = run_experiment(cfg(families=[{"family": "layered-tight",
                                            "params": {"k": 3, "d": list(range(1, 7))}}],
                                 algorithms=["metrics"]))
    assert [r.diameter for r in reports] == list(range(1, 7))
    assert all(r.instance == f"layered-tight(d={d},k=3)" for r, d in zip(reports, range(1, 7)))


def test_rc_column():
    reports = run_experiment(cfg(families=[{"family": "complete", "params": {"n": 4}},
                                           {"family": "star", "params": {"leaves": 4}},
                                           {"family": "cycle", "params": {"n": 6}}],
                                 algorithms=["rc-exact"]))
    assert [r.rc for r in reports] == [1, 4, 3]


def test_rc_below_colours_is_flagged():
    reports = run_experiment(cfg(families=[{"family": "cycle", "params": {"n": 6}}],
                                 algorithms=["spanning-tree"], rc_check=True))
    assert reports[0].rc == 3 and reports[0].ok


def test_failures_are_recorded_not_raised():
    reports = run_experiment(cfg(families=[{"family": "cycle", "params": {"n": 5}}],
                                 algorithms=["chordal", "two-connected"]))
    assert not reports[0].ok and reports[1].ok and not all_ok(reports)


def test_config_validation():
    with pytest.raises(ValueError, match="at least one family"):
        cfg(families=[], algorithms=["metrics"])
    with pytest.raises(ValueError, match="at least one algorithm"):
        cfg(families=[{"family": "cycle", "params": {"n": 4}}], algorithms=[])
    with pytest.raises(ValueError, match="unknown algorithm"):
        cfg(families=[{"family": "cycle", "params": {"n": 4}}], algorithms=["fast"])
    with pytest.raises(ValueError, match="positive"):
        cfg(families=[{"family": "cycle", "params": {"n": 4}}], algorithms=["metrics"], cap_edges=0)
    with pytest.raises(ValueError, match="unknown config keys"):
        cfg(families=[{"family": "cycle", "params": {"n": 4}}], algorithms=["metrics"], speed=1)


def test_expand_and_seeds():
    specs = expand(FamilySpec("theta", {"lengths": [2, 3, 4]}))
    assert len(specs) == 1
    specs = expand(FamilySpec("theta", {"lengths": [[2, 3], [2, 4]]}))
    assert len(specs) == 2
    c = cfg(families=[{"family": "random-2-connected", "params": {"n": [6, 7]}}],
            algorithms=["metrics"], seeds=[1, 2])
    assert [name for name, _, _ in instances(c)] == [
        "random-2-connected(n=6)#seed=1", "random-2-connected(n=6)#seed=2",
        "random-2-connected(n=7)#seed=1", "random-2-connected(n=7)#seed=2"]


def strip_runtime(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    for r in rows:
        r.pop("runtime_ms")
    return rows


def test_determinism_and_parallel_order():
    c = cfg(families=[{"family": "random-k-connected", "params": {"n": [10, 14], "kappa": 2}},
                      {"family": "k-tree", "params": {"k": 2, "n": 12}}],
            algorithms=["two-connected", "kappa", "chordal"], seeds=[0, 1, 2])
    a = reports_csv(run_experiment(c, workers=1))
    b = reports_csv(run_experiment(c, workers=1))
    p = reports_csv(run_experiment(c, workers=3))
    assert strip_runtime(a) == strip_runtime(b) == strip_runtime(p)
    assert a.splitlines()[0] == ",".join(BoundReport.CSV_COLUMNS)


def test_worker_count(monkeypatch):
    monkeypatch.delenv("RAINBOW_KIT_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("RAINBOW_KIT_THREADS", "4")
    assert worker_count() == 4
    monkeypatch.setenv("RAINBOW_KIT_THREADS", "lots")
    assert worker_count() == 1


def test_outputs_written(tmp_path):
    c = cfg(families=[{"family": "cycle", "params": {"n": 5}}], algorithms=["two-connected"],
            out_csv=str(tmp_path / "r.csv"), out_json=str(tmp_path / "r.json"))
    run_experiment(c)
    assert (tmp_path / "r.csv").read_text().startswith("algorithm,n,kappa")
    assert json.loads((tmp_path / "r.json").read_text())[0]["colours_used"] == 3


def test_dot_uncoloured_c3():
    text = export_dot(gen.cycle(3))
    (graph,) = pydot.graph_from_dot_data(text)
    assert len(graph.get_nodes()) == 3 and len(graph.get_edges()) == 3


def test_dot_labels_c4():
    text = export_dot(gen.cycle(4), EdgeColouring((0, 1, 0, 1), 2))
    (graph,) = pydot.graph_from_dot_data(text)
    assert [e.get("label").strip('"') for e in graph.get_edges()] == ["0", "1", "0", "1"]


def test_dot_mcgee_round_trip():
    g = gen.named("mcgee")
    text = export_dot(g, colour_girth_pipeline(g), name="McGee")
    (graph,) = pydot.graph_from_dot_data(text)
    assert graph.get_name() == "McGee" and len(graph.get_edges()) == g.m
    with pytest.raises(ValueError, match="colouring has"):
        export_dot(g, EdgeColouring((0,), 1))


def run_cli(args, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_gen_and_metrics(capsys, monkeypatch, tmp_path):
    code, out, _ = run_cli(["gen", "cycle", "n=6"], capsys)
    assert code == 0 and json.loads(out)["n"] == 6
    path = tmp_path / "c6.json"
    path.write_text(out)
    code, out, _ = run_cli(["metrics", str(path)], capsys)
    assert code == 0 and json.loads(out)["diameter"] == 3
    code, out, _ = run_cli(["metrics", "-"], capsys, stdin=path.read_text(), monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["girth"] == 6
    code, out, _ = run_cli(["gen", "theta", "lengths=2,3", "--format", "dot"], capsys)
    assert code == 0 and out.startswith("graph G {")


def test_cli_colour_verify_roundtrip(capsys, tmp_path):
    out_file = tmp_path / "col.json"
    code, _, _ = run_cli(["colour", "cycle:n=7", "--out", str(out_file)], capsys)
    assert code == 0
    data = json.loads(out_file.read_text())
    assert data["report"]["colours_used"] == 4 and data["report"]["verified"]
    code, out, _ = run_cli(["verify", "cycle:n=7", str(out_file)], capsys)
    assert code == 0 and json.loads(out)["complete"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([0] * 7))
    code, out, _ = run_cli(["verify", "cycle:n=7", str(bad), "--brief"], capsys)
    assert code == 1 and not json.loads(out)["complete"]


def test_cli_colour_failure_exit_code(capsys):
    code, _, err = run_cli(["colour", "cycle:n=5", "-a", "chordal"], capsys)
    assert code == 1 and "not chordal" in err
    code, out, _ = run_cli(["colour", "named-cage:name=mcgee", "-a", "girth", "--format", "csv"],
                           capsys)
    assert code == 0 and out.splitlines()[1].startswith("girth,24,3,3,3,7,4,49,1,")


def test_cli_rc_exact_and_dominate(capsys):
    code, out, _ = run_cli(["rc-exact", "star:leaves=4"], capsys)
    assert code == 0 and json.loads(out)["rc"] == 4
    code, out, _ = run_cli(["rc-exact", "complete:n=6", "--cap-edges", "10"], capsys)
    assert code == 2
    code, out, _ = run_cli(["dominate", "hypercube:d=3"], capsys)
    assert code == 0 and len(json.loads(out)["vertices"]) == 4
    code, out, _ = run_cli(["dominate", "named-cage:name=mcgee", "--girth", "3"], capsys)
    assert code == 0 and json.loads(out)["l"] == 6
    code, _, err = run_cli(["dominate", "named-cage:name=petersen", "--girth", "3"], capsys)
    assert code == 2 and "girth 5" in err


def test_cli_experiment(capsys, tmp_path):
    conf = tmp_path / "cfg.json"
    conf.write_text(json.dumps({"families": [{"family": "cycle", "params": {"n": [4, 5, 6]}}],
                                "algorithms": ["two-connected"], "rc_check": True}))
    code, out, _ = run_cli(["experiment", str(conf)], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["rc"] for r in rows] == ["2", "3", "3"]
    code, _, _ = run_cli(["experiment", str(conf), "--out", str(tmp_path / "res")], capsys)
    assert code == 0 and (tmp_path / "res.csv").exists() and (tmp_path / "res.json").exists()
    code, _, err = run_cli(["experiment", str(conf), "-a", "chordal"], capsys)
    assert code == 1 and "FAIL" in err
    code, out, _ = run_cli(["experiment", str(conf), "--format", "json"], capsys)
    assert code == 0 and len(json.loads(out)) == 3


def test_cli_usage_errors(capsys, tmp_path):
    assert run_cli(["metrics", str(tmp_path / "missing.json")], capsys)[0] == 2
    assert run_cli(["experiment", str(tmp_path / "missing.json")], capsys)[0] == 2
    conf = tmp_path / "cfg.json"
    conf.write_text(json.dumps({"families": [], "algorithms": ["metrics"]}))
    assert run_cli(["experiment", str(conf)], capsys)[0] == 2
    assert run_cli(["gen", "cycle", "n"], capsys)[0] == 2
    assert run_cli(["gen", "star", "n=4"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["gen", "wheel"])
    assert exc.value.code == 2


def test_cli_export_dot(capsys, tmp_path):
    col = tmp_path / "c.json"
    col.write_text(json.dumps([0, 1, 0, 1]))
    code, out, _ = run_cli(["export-dot", "cycle:n=4", str(col)], capsys)
    assert code == 0 and 'label="1"' in out
    pydot.graph_from_dot_data(out)


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "rainbow_kit.cli", "rc-exact", "cycle:n=5"],
                         capture_output=True, text=True, env=dict(os.environ))
    assert out.returncode == 0 and json.loads(out.stdout)["rc"] == 3

import json
import subprocess
import sys

import numpy as np
import pytest

from sphsep.cli import main
from sphsep.convexity import SphericalBody
from sphsep.harness import CampaignReport
from sphsep.separation import wedge_membership

from .oracles import separates

S = 1.0 / np.sqrt(2.0)

DISJOINT_S2 = {
    "n": 2,
    "w1": [
        [1.0, 0.0, 0.0],
        [0.9396926207859084, 0.3420201433256687, 0.0],
        [0.9396926207859084, 0.0, 0.3420201433256687],
    ],
    "w2": [
        [-1.0, 0.0, 0.0],
        [-0.9396926207859084, 0.3420201433256687, 0.0],
    ],
}


def write_instance(tmp_path, doc, name="inst.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_disjoint(tmp_path, capsys):
    path = write_instance(tmp_path, {"n": 1, "w1": [[1.0, 0.0]], "w2": [[-1.0, 0.0]]})
    code, out, _ = run_cli(capsys, "check", path)
    assert code == 0
    assert json.loads(out) == {"status": "disjoint"}


def test_check_identical_singletons(tmp_path, capsys):
    g = [0.6, 0.8]
    path = write_instance(tmp_path, {"n": 1, "w1": [g], "w2": [g]})
    code, out, _ = run_cli(capsys, "check", path)
    assert code == 2
    doc = json.loads(out)
    assert doc["status"] == "intersecting"
    assert np.allclose(doc["common_point"], g, atol=1e-9)
    assert list(doc) == ["status", "common_point", "lambda", "mu"]


def test_check_non_hemispherical_is_ambiguous(tmp_path, capsys):
    path = write_instance(
        tmp_path, {"n": 1, "w1": [[1.0, 0.0], [-1.0, 0.0]], "w2": [[0.0, 1.0]]}
    )
    code, out, _ = run_cli(capsys, "check", path)
    assert code == 3
    assert json.loads(out)["status"] == "ambiguous"


@pytest.mark.parametrize(
    "doc",
    [
        {"w1": [[1.0, 0.0]], "w2": [[0.0, 1.0]]},  # n missing
        {"n": "two", "w1": [[1.0, 0.0]], "w2": [[0.0, 1.0]]},
        {"n": 0, "w1": [[1.0]], "w2": [[1.0]]},
        {"n": 1, "w2": [[0.0, 1.0]]},  # w1 missing
        {"n": 1, "w1": [], "w2": [[0.0, 1.0]]},
        {"n": 1, "w1": [[1.0, 0.0, 0.0]], "w2": [[0.0, 1.0]]},  # ragged row
        {"n": 1, "w1": [[1.0, "x"]], "w2": [[0.0, 1.0]]},
        {"n": 1, "w1": [[1e-9, 0.0]], "w2": [[0.0, 1.0]]},  # near-zero row
        {"n": 1, "w1": [[1.0, 0.0]], "w2": [[0.0, 1.0]], "tolerances": {"bogus": 1}},
        {"n": 1, "w1": [[1.0, 0.0]], "w2": [[0.0, 1.0]], "tolerances": {"margin_tol": -1}},
        {"n": 1, "w1": [[1.0, 0.0]], "w2": [[0.0, 1.0]], "tolerances": [1]},
    ],
)
def test_check_malformed_documents(tmp_path, capsys, doc):
    path = write_instance(tmp_path, doc)
    code, out, err = run_cli(capsys, "check", path)
    assert code == 4
    assert out == ""
    assert "error:" in err


def test_check_invalid_json_and_missing_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "check", str(bad))
    assert code == 4 and "JSON" in err
    code, _, err = run_cli(capsys, "check", str(tmp_path / "absent.json"))
    assert code == 4 and "cannot read" in err


def test_non_unit_rows_normalized_with_note(tmp_path, capsys):
    path = write_instance(tmp_path, {"n": 1, "w1": [[2.0, 0.0]], "w2": [[0.0, 1.0]]})
    code, out, err = run_cli(capsys, "check", path)
    assert code == 0
    assert 'normalized "w1"[0]' in err
    # exactly-unit rows stay silent
    path = write_instance(tmp_path, {"n": 1, "w1": [[1.0, 0.0]], "w2": [[0.0, 1.0]]})
    _, _, err = run_cli(capsys, "check", path)
    assert "normalized" not in err


def test_witness_lp_output(tmp_path, capsys):
    path = write_instance(tmp_path, DISJOINT_S2)
    code, out, _ = run_cli(capsys, "witness", path)
    assert code == 0
    doc = json.loads(out)
    assert list(doc) == ["status", "witness", "margin"]
    w = np.array(doc["witness"])
    assert np.isclose(np.linalg.norm(w), 1.0)
    g1 = np.array(DISJOINT_S2["w1"])
    g2 = np.array(DISJOINT_S2["w2"])
    assert np.isclose(doc["margin"], separates(w, g1, g2))
    assert doc["margin"] > 1e-9


def test_witness_proof_path_output(tmp_path, capsys):
    path = write_instance(tmp_path, DISJOINT_S2)
    code, out, _ = run_cli(capsys, "witness", path, "--method", "proof-path")
    assert code == 0
    doc = json.loads(out)
    assert list(doc) == ["status", "witness", "margin", "trace"]
    assert list(doc["trace"]) == ["epsilon0", "offsets", "iterations"]
    offsets = doc["trace"]["offsets"]
    assert len(offsets) == doc["trace"]["iterations"] + 1
    assert all(b < a for a, b in zip(offsets, offsets[1:]))
    assert offsets[-1] < 1e-6


def test_witness_round_trip_reloads_as_wedge_member(tmp_path, capsys):
    path = write_instance(tmp_path, DISJOINT_S2)
    for method in ("lp", "proof-path"):
        _, out, _ = run_cli(capsys, "witness", path, "--method", method)
        w = np.array(json.loads(out)["witness"])
        b1 = SphericalBody(np.array(DISJOINT_S2["w1"]))
        b2 = SphericalBody(np.array(DISJOINT_S2["w2"]))
        assert wedge_membership(b1, b2, w).member


def test_witness_intersecting_both_methods(tmp_path, capsys):
    doc = {"n": 1, "w1": [[S, S]], "w2": [[S, S], [0.0, 1.0]]}
    path = write_instance(tmp_path, doc)
    for method in ("lp", "proof-path"):
        code, out, _ = run_cli(capsys, "witness", path, "--method", method)
        assert code == 2
        assert json.loads(out)["status"] == "intersecting"


def test_witness_ambiguous_band(tmp_path, capsys):
    th = 0.01
    doc = {
        "n": 1,
        "w1": [[float(np.cos(th)), float(np.sin(th))]],
        "w2": [[float(np.cos(th)), float(-np.sin(th))]],
    }
    path = write_instance(tmp_path, doc)
    code, out, _ = run_cli(capsys, "witness", path, "--tol-margin", "0.1")
    assert code == 3
    assert json.loads(out)["status"] == "ambiguous"
    # same instance at default tolerances is decidable
    code, out, _ = run_cli(capsys, "witness", path)
    assert code == 0


def test_witness_proof_path_failure_exit_code(tmp_path, capsys):
    # close caps and a single permitted fattening round: the search cannot
    # shrink epsilon far enough, which is exactly the exit-5 contract
    doc = {
        "n": 1,
        "w1": [[1.0, 0.0]],
        "w2": [[float(np.cos(0.5)), float(np.sin(0.5))]],
        "tolerances": {"max_iter": 1},
    }
    path = write_instance(tmp_path, doc)
    code, out, err = run_cli(capsys, "witness", path, "--method", "proof-path")
    assert code == 5
    assert out == ""
    assert "constructive witness route failed" in err
    # the lp method is untouched by the proof-path iteration cap
    code, _, _ = run_cli(capsys, "witness", path, "--method", "lp")
    assert code == 0


def test_flag_overrides_file_tolerances(tmp_path, capsys):
    doc = dict(DISJOINT_S2)
    doc["tolerances"] = {"offset_tol": 1e-2}
    path = write_instance(tmp_path, doc)
    _, out, _ = run_cli(capsys, "witness", path, "--method", "proof-path")
    assert json.loads(out)["trace"]["offsets"][-1] < 1e-2
    _, out, _ = run_cli(
        capsys, "witness", path, "--method", "proof-path", "--tol-offset", "1e-8"
    )
    assert json.loads(out)["trace"]["offsets"][-1] < 1e-8


def test_fuzz_count_zero(capsys):
    code, out, err = run_cli(capsys, "fuzz", "--count", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["instances"] == 0
    assert "wall time" in err


def test_fuzz_report_bytes_reproducible(capsys):
    args = ("fuzz", "--count", "12", "--dims", "1,2", "--sizes", "1..3", "--seed", "9")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second
    doc = json.loads(first)
    assert doc["config"]["sizes"] == [1, 2, 3]  # range syntax expanded
    assert doc["instances"] == 12


def test_fuzz_disagreement_exit_code(capsys, monkeypatch):
    # disagreements cannot be produced honestly here, so stub the campaign
    # to exercise the exit-code mapping alone
    report = CampaignReport(count=1, dims=[1], sizes=[1], seed=0)
    report.instances = 1
    report.disagreements = 1
    monkeypatch.setattr(
        "sphsep.cli.run_equivalence_campaign", lambda *a, **k: report
    )
    code, out, _ = run_cli(capsys, "fuzz", "--count", "1")
    assert code == 1
    assert json.loads(out)["disagreements"] == 1


@pytest.mark.parametrize(
    "flags",
    [
        ("--dims", "x"),
        ("--dims", ""),
        ("--dims", "0"),
        ("--sizes", "3..1"),
        ("--sizes", "-2"),
    ],
)
def test_fuzz_rejects_bad_lists(capsys, flags):
    code, _, err = run_cli(capsys, "fuzz", "--count", "1", *flags)
    assert code == 4
    assert "error:" in err


def test_plot_scene_structure(tmp_path, capsys):
    path = write_instance(tmp_path, DISJOINT_S2)
    out_path = tmp_path / "scene.json"
    code, _, _ = run_cli(capsys, "plot", path, "-o", str(out_path))
    assert code == 0
    scene = json.loads(out_path.read_text())
    assert list(scene) == ["bodies", "witness", "boundary"]
    gens = sum(len(b["generators"]) for b in scene["bodies"])
    arcs = sum(len(b["arcs"]) for b in scene["bodies"])
    # triangle hull gives 3 arcs, two-point body gives 1
    assert [len(b["arcs"]) for b in scene["bodies"]] == [3, 1]
    assert all(
        len(arc) == 32 for b in scene["bodies"] for arc in b["arcs"]
    )
    # documented scene size: generators + 32 per arc + witness + 128 boundary
    total = gens + 32 * arcs + 1 + len(scene["boundary"])
    assert total == 5 + 32 * 4 + 1 + 128
    w = np.array(scene["witness"])
    boundary = np.array(scene["boundary"])
    assert boundary.shape == (128, 3)
    assert np.max(np.abs(boundary @ w)) < 1e-9
    assert np.allclose(np.linalg.norm(boundary, axis=1), 1.0)


def test_plot_arc_endpoints_are_generators(tmp_path, capsys):
    path = write_instance(tmp_path, DISJOINT_S2)
    out_path = tmp_path / "scene.json"
    run_cli(capsys, "plot", path, "-o", str(out_path))
    scene = json.loads(out_path.read_text())
    for body in scene["bodies"]:
        gens = np.array(body["generators"])
        for arc in body["arcs"]:
            for endpoint in (np.array(arc[0]), np.array(arc[-1])):
                dists = np.linalg.norm(gens - endpoint, axis=1)
                assert dists.min() < 1e-9


def test_plot_singletons(tmp_path, capsys):
    doc = {"n": 2, "w1": [[0.0, 0.0, 1.0]], "w2": [[0.0, 0.0, -1.0]]}
    path = write_instance(tmp_path, doc)
    out_path = tmp_path / "scene.json"
    code, _, _ = run_cli(capsys, "plot", path, "-o", str(out_path))
    assert code == 0
    scene = json.loads(out_path.read_text())
    assert [len(b["generators"]) for b in scene["bodies"]] == [1, 1]
    assert [len(b["arcs"]) for b in scene["bodies"]] == [0, 0]
    assert len(scene["boundary"]) == 128


def test_plot_intersecting_scene_has_no_witness(tmp_path, capsys):
    doc = {"n": 2, "w1": [[0.0, 0.0, 1.0]], "w2": [[0.0, 0.0, 1.0]]}
    path = write_instance(tmp_path, doc)
    out_path = tmp_path / "scene.json"
    code, _, _ = run_cli(capsys, "plot", path, "-o", str(out_path))
    assert code == 0
    scene = json.loads(out_path.read_text())
    assert "witness" not in scene and "boundary" not in scene


def test_plot_rejects_other_dimensions(tmp_path, capsys):
    path = write_instance(tmp_path, {"n": 1, "w1": [[1.0, 0.0]], "w2": [[0.0, 1.0]]})
    code, _, err = run_cli(capsys, "plot", path, "-o", str(tmp_path / "s.json"))
    assert code == 4
    assert "S^2" in err


def test_plot_unwritable_output(tmp_path, capsys):
    path = write_instance(tmp_path, DISJOINT_S2)
    code, _, err = run_cli(capsys, "plot", path, "-o", str(tmp_path / "nodir" / "s.json"))
    assert code == 4
    assert "cannot write" in err


def test_usage_errors_exit_4(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus-command"])
    assert exc.value.code == 4
    with pytest.raises(SystemExit) as exc:
        main(["witness", "x.json", "--method", "newton"])
    assert exc.value.code == 4


def test_module_entry_point(tmp_path):
    path = write_instance(tmp_path, {"n": 1, "w1": [[1.0, 0.0]], "w2": [[-1.0, 0.0]]})
    proc = subprocess.run(
        [sys.executable, "-m", "sphsep", "check", path],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"status": "disjoint"}

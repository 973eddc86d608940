import json
import math

import numpy as np
import pytest

from getme import GeneratorSpec, generate, mesh_quality, read_mesh, write_mesh
from getme.cli import run


def test_spectrum_standard(capsys):
    assert run(["spectrum", "--alpha0", "1", "--alpha1", "1"]) == 0
    out = capsys.readouterr().out
    assert "-0.5" in out
    assert f"{math.sqrt(3.0) / 2.0:.15g}" in out
    assert "convergent" in out


def test_spectrum_divergent(capsys):
    assert run(["spectrum", "--alpha0", "0.1", "--alpha1", "0.5"]) == 0
    assert "divergent" in capsys.readouterr().out


def test_generate_then_smooth_improves(tmp_path, capsys):
    m = tmp_path / "m.mesh"
    s = tmp_path / "s.mesh"
    report = tmp_path / "r.json"
    assert run(["generate", "--kind", "jittered-square-tri",
                "--resolution", "10", "--jitter", "0.4", "--seed", "7",
                "--out", str(m)]) == 0
    assert run(["smooth", "--in", str(m), "--smoother", "getme-adaptive",
                "--out", str(s), "--report", str(report)]) == 0
    data = json.loads(report.read_text())
    assert data["mean"] > mesh_quality(read_mesh(m)).mean
    assert set(data) == {"mean", "min", "histogram", "trace"}


def test_smooth_equilateral_is_identity(tmp_path):
    from getme import Mesh
    mesh = Mesh([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]],
                [[0, 1, 2]], "triangle", boundary_vertices=[0, 1, 2])
    m = tmp_path / "eq.mesh"
    s = tmp_path / "eq_out.mesh"
    write_mesh(mesh, m)
    assert run(["smooth", "--in", str(m), "--smoother", "getme",
                "--out", str(s)]) == 0
    out = read_mesh(s)
    assert np.allclose(out.vertices, mesh.vertices, atol=1e-12)


def test_smooth_exit_3_on_remaining_invalid(tmp_path, capsys):
    m = tmp_path / "flip.mesh"
    s = tmp_path / "flip_out.mesh"
    write_mesh(generate(GeneratorSpec("two-triangle-flip")), m)
    code = run(["smooth", "--in", str(m), "--smoother", "getme",
                "--guard", "none", "--max-iter", "1", "--inner", "1",
                "--out", str(s)])
    assert code == 3
    assert s.exists()  # the mesh is still written
    assert "invalid" in capsys.readouterr().err


def test_quality_subcommand(tmp_path, capsys):
    m = tmp_path / "m.vtk"
    write_mesh(generate(GeneratorSpec("cube-hex", resolution=2)), m)
    report = tmp_path / "q.json"
    assert run(["quality", "--in", str(m), "--report", str(report)]) == 0
    data = json.loads(report.read_text())
    assert data["mean"] == pytest.approx(1.0)
    assert sum(data["histogram"]) == 8


def test_ode_compare_csv(tmp_path):
    out = tmp_path / "c.csv"
    assert run(["ode-compare", "--triangle", "0,0,1,0,0.2,0.8",
                "--steps", "4", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "step,t,r0_disc,r1_disc,r2_disc,R0_cont,R1_cont,R2_cont"
    assert len(lines) == 6


def test_seed_accepts_hex(tmp_path):
    a = tmp_path / "a.mesh"
    b = tmp_path / "b.mesh"
    args = ["generate", "--kind", "cube-tet", "--resolution", "2",
            "--jitter", "0.3", "--out"]
    assert run(args[:-1] + ["--seed", "255", "--out", str(a)]) == 0
    assert run(args[:-1] + ["--seed", "0xff", "--out", str(b)]) == 0
    assert read_mesh(a) == read_mesh(b)


def test_usage_errors_exit_1(capsys):
    assert run(["bogus"]) == 1
    assert run(["smooth", "--in", "x.mesh"]) == 1  # missing required flags
    assert run(["generate", "--kind", "disk-tri", "--seed", "zzz",
                "--out", "x.mesh"]) == 1
    assert run(["ode-compare", "--triangle", "1,2,3", "--steps", "2",
                "--out", "x.csv"]) == 1
    assert run(["generate", "--kind", "disk-tri", "--jitter", "0.9",
                "--out", "x.mesh"]) == 1


def test_io_errors_exit_2(tmp_path, capsys):
    assert run(["quality", "--in", str(tmp_path / "missing.mesh")]) == 2
    bad = tmp_path / "bad.mesh"
    bad.write_text("MeshVersionFormatted 2\nDimension\n2\nVertices\noops\n")
    assert run(["quality", "--in", str(bad)]) == 2
    assert "line" in capsys.readouterr().err


def test_smoother_flags_forwarded(tmp_path):
    m = tmp_path / "m.mesh"
    s1 = tmp_path / "s1.mesh"
    s2 = tmp_path / "s2.mesh"
    run(["generate", "--kind", "jittered-square-tri", "--resolution", "6",
         "--jitter", "0.4", "--seed", "3", "--out", str(m)])
    assert run(["smooth", "--in", str(m), "--smoother", "getme",
                "--alpha0", "0.4", "--alpha1", "0.5", "--out", str(s1)]) == 0
    assert run(["smooth", "--in", str(m), "--smoother", "getme",
                "--out", str(s2)]) == 0
    assert read_mesh(s1) != read_mesh(s2)
    # alpha flags must come in pairs
    assert run(["smooth", "--in", str(m), "--smoother", "getme",
                "--alpha0", "0.4", "--out", str(s1)]) == 1


def test_smart_laplace_smoother(tmp_path):
    m = tmp_path / "m.mesh"
    s = tmp_path / "s.mesh"
    run(["generate", "--kind", "quad-grid-with-hole", "--resolution", "6",
         "--jitter", "0.3", "--seed", "3", "--out", str(m)])
    assert run(["smooth", "--in", str(m), "--smoother", "smart-laplace",
                "--out", str(s)]) == 0
    assert mesh_quality(read_mesh(s)).mean > mesh_quality(read_mesh(m)).mean


def test_determinism(tmp_path):
    paths = [tmp_path / "a.mesh", tmp_path / "b.mesh"]
    for p in paths:
        run(["generate", "--kind", "disk-tri", "--resolution", "4",
             "--jitter", "0.2", "--seed", "11", "--out", str(p)])
    assert paths[0].read_text() == paths[1].read_text()

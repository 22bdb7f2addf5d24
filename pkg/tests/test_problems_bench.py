import csv
import io
import math
import subprocess
import sys

import numpy as np
import pytest

from cauchykit import (ProblemSpec, generate_problem, reconstruct_dense,
                       run_bench, run_invert_bench)
from cauchykit.bench import CSV_HEADER, INVERT_CSV_HEADER, write_csv
from cauchykit.problems import PROBLEM_IDS


def test_spec_defaults_and_validation():
    spec = ProblemSpec("p1", n=64)
    assert spec.a == 1.0 and spec.b == 2.0
    assert ProblemSpec("p2").b == -0.3
    assert ProblemSpec("p4").eps == 1e-12
    with pytest.raises(ValueError):
        ProblemSpec("nope")
    with pytest.raises(ValueError):
        ProblemSpec("p3", a=1.5)
    with pytest.raises(ValueError):
        ProblemSpec("p1", n=0)


def test_p1_hand_entries():
    p = generate_problem(ProblemSpec("p1", n=4))
    C = reconstruct_dense(p.operand)
    assert C[0, 0] == pytest.approx(-3.0)
    # b is C times the all-ones block
    assert np.allclose(p.b[:, 0], C.sum(axis=1))


def test_t1_generator_compatibility():
    for n in (5, 64):
        p = generate_problem(ProblemSpec("t1", n=n))
        assert p.operand.generator_defect() == 0.0
        assert np.all(p.operand.d == 1.0)


def test_t2_closed_form_inverse():
    spec = ProblemSpec("t2", n=32, eps=1e-3)
    p = generate_problem(spec)
    from cauchykit import trummer_reconstruct_dense
    M = trummer_reconstruct_dense(p.operand)
    Minv = p.reference_inverse()
    assert np.linalg.norm(M @ Minv - np.eye(32)) < 1e-10 / spec.eps * 1e-3


def test_p4_determinism():
    a = generate_problem(ProblemSpec("p4", seed=42))
    b = generate_problem(ProblemSpec("p4", seed=42))
    c = generate_problem(ProblemSpec("p4", seed=43))
    assert np.array_equal(a.operand.G, b.operand.G)
    assert not np.array_equal(a.operand.G, c.operand.G)


@pytest.mark.parametrize("pid", PROBLEM_IDS)
def test_generate_all_problems(pid):
    p = generate_problem(ProblemSpec(pid, n=16))
    assert p.b.shape == (16, 1)
    assert np.all(p.x_true == 1.0)


def test_run_bench_record_fields():
    rec = run_bench(ProblemSpec("p1", n=64), "extended", repeats=1)
    assert rec.problem == "p1" and rec.solver == "extended"
    assert rec.fwd_err < 1e-13
    assert rec.residual < 1e-12
    assert rec.seconds > 0
    assert rec.flops > 0 and rec.workspace == 128
    assert rec.error is None


def test_run_bench_determinism_excluding_timings():
    r1 = run_bench(ProblemSpec("p4", n=32, seed=7), "classic", repeats=1)
    r2 = run_bench(ProblemSpec("p4", n=32, seed=7), "classic", repeats=1)
    assert (r1.fwd_err, r1.residual, r1.flops) == (r2.fwd_err, r2.residual,
                                                   r2.flops)


def test_run_bench_toeplitz_and_trummer_paths():
    rec = run_bench(ProblemSpec("p3", n=64, a=0.5), "downdating", repeats=1)
    assert rec.fwd_err < 1e-10
    rec2 = run_bench(ProblemSpec("t1", n=64), "downdating", repeats=1)
    assert rec2.fwd_err < 1e-11
    with pytest.raises(ValueError):
        run_bench(ProblemSpec("t1", n=16), "unknown-solver")


def test_failed_solve_becomes_failed_row():
    # trummer problems reject the classic solver; recorded, not raised
    rec = run_bench(ProblemSpec("t1", n=16), "classic", repeats=1)
    assert rec.error is not None
    assert math.isnan(rec.fwd_err)


def test_run_invert_bench():
    rec = run_invert_bench(ProblemSpec("t1", n=64), repeats=1)
    assert rec.e1 < 1e-13 and rec.e3 < 1e-12
    rec2 = run_invert_bench(ProblemSpec("t2", n=64, eps=1e-3), repeats=1)
    assert rec2.e3 < 1e-9
    with pytest.raises(ValueError):
        run_invert_bench(ProblemSpec("p1"))


def test_csv_writer(tmp_path):
    rec = run_bench(ProblemSpec("p1", n=32), "classic", repeats=1)
    path = tmp_path / "out.csv"
    write_csv(path, [rec], CSV_HEADER)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == list(CSV_HEADER)
    assert rows[1][0] == "p1" and rows[1][2] == "classic"
    assert ";" not in open(path, encoding="utf-8").read()


def test_cli_solve_and_invert(tmp_path):
    out = tmp_path / "solve.csv"
    r = subprocess.run(
        [sys.executable, "-m", "cauchykit.cli", "solve", "--problem", "p1",
         "--n", "64", "--solver", "downdating", "--repeats", "1",
         "--out", str(out)],
        capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    rows = list(csv.reader(open(out, newline="", encoding="utf-8")))
    assert rows[0] == list(CSV_HEADER)
    assert float(rows[1][4]) < 1e-13

    out2 = tmp_path / "inv.csv"
    r2 = subprocess.run(
        [sys.executable, "-m", "cauchykit.cli", "invert", "--problem", "t1",
         "--n", "64", "--repeats", "1", "--out", str(out2)],
        capture_output=True, text=True)
    assert r2.returncode == 0, r2.stderr
    rows2 = list(csv.reader(open(out2, newline="", encoding="utf-8")))
    assert rows2[0] == list(INVERT_CSV_HEADER)


def test_cli_env_prefix_and_error_line(tmp_path):
    out = tmp_path / "env.csv"
    r = subprocess.run(
        [sys.executable, "-m", "cauchykit.cli", "solve", "--problem", "p1",
         "--repeats", "1", "--out", str(out)],
        capture_output=True, text=True,
        env={"SGKO_N": "32", "SGKO_SOLVER": "extended",
             "PATH": "/usr/bin:/bin"})
    assert r.returncode == 0, r.stderr
    rows = list(csv.reader(open(out, newline="", encoding="utf-8")))
    assert rows[1][1] == "32" and rows[1][2] == "extended"

    r2 = subprocess.run(
        [sys.executable, "-m", "cauchykit.cli", "solve", "--repeats", "1"],
        capture_output=True, text=True, env={"PATH": "/usr/bin:/bin"})
    assert r2.returncode != 0
    import json
    err = json.loads(r2.stderr.strip().splitlines()[-1])
    assert "error" in err and "message" in err

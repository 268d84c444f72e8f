import csv
import io
import json

import pytest

from qclique.cli import BUILTIN_PROFILES, load_graph, load_profile, main
from qclique.noise import NoiseProfile


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_builtin_profiles_encode_device_table():
    values = {name: (p.t1_us, p.t2_us) for name, p in BUILTIN_PROFILES.items()}
    assert values == {
        "ibmq_melbourne": (55.0, 59.0),
        "ibmq_poughkeepsie": (64.0, 65.0),
        "ibmq_singapore": (83.0, 89.0),
        "ibmq_paris": (76.0, 67.0),
        "ibmq_cambridge": (81.0, 39.0),
        "ibmq_rochester": (55.0, 59.0),
    }
    for prof in BUILTIN_PROFILES.values():
        assert (prof.u2_ns, prof.u3_ns, prof.cx_ns, prof.readout_ns) == (50.0, 100.0, 300.0, 1000.0)
        assert prof.apply_idle


def test_profile_branch_coverage():
    # the bundled set intentionally exercises both channel implementations
    assert BUILTIN_PROFILES["ibmq_cambridge"].default_implementation == "mixture"
    assert BUILTIN_PROFILES["ibmq_singapore"].default_implementation == "kraus"


def test_load_profile_forms(tmp_path):
    assert load_profile("singapore").name == "ibmq_singapore"
    inline = load_profile("250:125")
    assert (inline.t1_us, inline.t2_us) == (250.0, 125.0)
    path = tmp_path / "prof.json"
    path.write_text(NoiseProfile("file-prof", 70.0, 60.0).to_json())
    assert load_profile(str(path)).name == "file-prof"
    with pytest.raises(Exception):
        load_profile("not-a-profile")


def test_load_graph_from_file(tmp_path):
    path = tmp_path / "g.edges"
    path.write_text("3 2\n0 1\n1 2\n")
    assert load_graph(str(path)).n == 3


def test_solve_w_checking_text(capsys):
    code, out, err = run_cli(capsys, "solve", "--graph", "g4", "--k", "3",
                             "--prep", "w", "--oracle", "checking",
                             "--shots", "256", "--seed", "5")
    assert code == 0
    assert "|0111>" in out and "[0, 1, 2]" in out
    assert "PASS" in out


def test_solve_json_fields(capsys):
    code, out, _ = run_cli(capsys, "solve", "--graph", "g4", "--k", "3",
                           "--prep", "full", "--format", "json",
                           "--shots", "512", "--seed", "9")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    assert data["iterations"] == 3
    assert data["ideal"]["top_outcome"] == "0111"
    assert data["analytic_success_probability"] == pytest.approx(0.9613, abs=1e-3)
    assert data["matches_bruteforce"] is True


def test_solve_no_clique_preflight(capsys):
    code, out, _ = run_cli(capsys, "solve", "--graph", "star4", "--k", "3")
    assert code == 0
    assert "no 3-clique exists" in out


def test_solve_invalid_k_errors(capsys):
    code, _, err = run_cli(capsys, "solve", "--graph", "g4", "--k", "9")
    assert code == 1 and "out of range" in err


def test_solve_with_noise_reports_damping(capsys):
    code, out, _ = run_cli(capsys, "solve", "--graph", "g4", "--k", "3",
                           "--prep", "w", "--noise", "singapore",
                           "--format", "json", "--shots", "300",
                           "--trajectories", "300", "--seed", "17")
    assert code == 0
    data = json.loads(out)
    assert data["noise_profile"]["name"] == "ibmq_singapore"
    assert data["noisy"]["success_probability"] < data["ideal"]["success_probability"]


def test_resources_table_six_rows(capsys):
    code, out, _ = run_cli(capsys, "resources", "--graph", "g4", "--k", "3")
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip()]
    assert len(lines) == 2 + 6 + 1  # header, rule, six configs, legend
    # sorted by lowered size: a W-prep checking row leads the table
    assert "w" in lines[2].split() and "checking" in lines[2].split()


def test_resources_decompose_columns(capsys):
    code, out, _ = run_cli(capsys, "resources", "--graph", "g4", "--k", "3",
                           "--prep", "w", "--oracle", "checking", "--decompose")
    assert code == 0
    header = out.splitlines()[0].split()
    for col in ("NOT", "CNOT", "CCNOT", "U"):
        assert col in header


def test_resources_empty_edge_graph_errors(capsys, tmp_path):
    path = tmp_path / "empty.edges"
    path.write_text("3 0\n")
    code, _, err = run_cli(capsys, "resources", "--graph", str(path), "--k", "2")
    assert code == 1
    assert "edge" in err or "clique" in err


def test_resources_json(capsys):
    code, out, _ = run_cli(capsys, "resources", "--graph", "g4", "--k", "3",
                           "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["reports"]) == 6


def test_sweep_csv_shape_and_consistency(capsys):
    args = ["sweep", "--graph", "g4", "--k", "3", "--prep", "w",
            "--oracle", "checking", "--shots", "200", "--trajectories", "200",
            "--seed", "31", "--profile", "500:500", "--profile", "200:200",
            "--all-devices"]
    code, out, _ = run_cli(capsys, *args)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 8  # six devices + the two synthetic points
    assert set(rows[0]) == {"name", "t1_us", "t2_us", "success_prob", "stderr"}

    # single-point sweep agrees with the solve noisy path at equal settings
    code, solve_out, _ = run_cli(capsys, "solve", "--graph", "g4", "--k", "3",
                                 "--prep", "w", "--noise", "500:500",
                                 "--format", "json", "--shots", "200",
                                 "--trajectories", "200", "--seed", "31")
    assert code == 0
    solve_p = json.loads(solve_out)["noisy"]["success_probability"]
    sweep_p = float([r for r in rows if r["name"] == "t1=500,t2=500"][0]["success_prob"])
    assert sweep_p == pytest.approx(solve_p, abs=1e-12)


def test_sweep_requires_profiles(capsys):
    code, _, err = run_cli(capsys, "sweep", "--graph", "g4", "--k", "3")
    assert code == 1 and "profile" in err


def test_verify_g6(capsys):
    code, out, _ = run_cli(capsys, "verify", "--graph", "g6", "--k", "4")
    assert code == 0
    assert "|011110>" in out and "1 clique(s)" in out


def test_state_dicke_csv(capsys):
    code, out, _ = run_cli(capsys, "state", "--prep", "dicke", "--n", "4", "--k", "3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 16
    hot = {r["bitstring"]: float(r["re"]) for r in rows if abs(float(r["re"])) > 1e-9}
    assert hot == {"0111": pytest.approx(0.5), "1011": pytest.approx(0.5),
                   "1101": pytest.approx(0.5), "1110": pytest.approx(0.5)}
    assert all(abs(float(r["im"])) < 1e-12 for r in rows)


def test_state_dicke_requires_k(capsys):
    code, _, err = run_cli(capsys, "state", "--prep", "dicke", "--n", "4")
    assert code == 1 and "--k" in err


def test_output_file_and_determinism(tmp_path, capsys):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for path in (out1, out2):
        code = main(["solve", "--graph", "g4", "--k", "3", "--prep", "dicke",
                     "--oracle", "incremental", "--format", "json",
                     "--shots", "128", "--seed", "77", "--output", str(path)])
        assert code == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()

import json
import math

import numpy as np
import pytest

from compwave import (
    GolayPair,
    ScatteringMatrix,
    WaveformDesign,
    binomial_design,
    evaluation_grid,
    is_golay_pair,
    output_matrix,
    polarimetric_ambiguities,
)
from compwave.cli import main


def run(*argv) -> int:
    return main([str(a) for a in argv])


def make_design(tmp_path, n=8, interval=(0, 2), **extra):
    argv = ["design", "--out-dir", tmp_path, "--n", n,
            "--interval", interval[0], interval[1]]
    for key, value in extra.items():
        argv.extend([f"--{key.replace('_', '-')}", value])
    assert run(*argv) == 0
    return tmp_path / extra.get("out", "design.json")


class TestDesignCommand:
    def test_writes_design_and_report(self, tmp_path):
        path = make_design(tmp_path, n=12)
        design = WaveformDesign.load(path)
        assert design.n_pulses == 12
        assert design.grid.m == 11
        assert design.residual <= 1e-10
        report = json.loads((tmp_path / "design_report.json").read_text())
        assert report["ok"] is True
        assert report["nullspace_residual"] <= 1e-10

    def test_hcd_writes_optimizer_report(self, tmp_path):
        make_design(tmp_path, n=8, optimizer="hcd", restarts=2, sweeps=3, out="opt.json")
        data = json.loads((tmp_path / "opt_optimizer.json").read_text())
        assert data["restarts"] == 2 and data["sweeps"] == 3
        assert data["snr"] >= 1.0

    def test_bs_optimizer(self, tmp_path):
        path = make_design(tmp_path, n=8, optimizer="bs", out="bs.json")
        assert WaveformDesign.load(path).residual <= 1e-10

    def test_basis_index(self, tmp_path):
        a = make_design(tmp_path, n=12, m=8, out="a.json")
        b = make_design(tmp_path, n=12, m=8, basis_index=1, out="b.json")
        wa, wb = WaveformDesign.load(a).w, WaveformDesign.load(b).w
        assert not np.allclose(np.abs(wa), np.abs(wb))

    @pytest.mark.filterwarnings("ignore::UserWarning")
    def test_overconstrained_is_numerical_failure(self, tmp_path):
        assert run("design", "--out-dir", tmp_path, "--n", 4,
                   "--interval", 0, 2, "--m", 4) == 2

    def test_reversed_interval_is_usage_error(self, tmp_path):
        assert run("design", "--out-dir", tmp_path, "--n", 8,
                   "--interval", 2, 0) == 1

    def test_missing_required_flag(self, tmp_path):
        assert run("design", "--out-dir", tmp_path, "--interval", 0, 2) == 1

    def test_no_command(self):
        assert run() == 1


class TestEvaluateCommand:
    def test_writes_five_files(self, tmp_path):
        path = make_design(tmp_path)
        assert run("evaluate", "--out-dir", tmp_path, "--design", path,
                   "--points", 51) == 0
        for suffix in ("_map.csv", "_map_db.csv", "_map_meta.json", "_profile.csv", "_prsl.csv"):
            assert (tmp_path / f"design{suffix}").exists()
        header = (tmp_path / "design_map.csv").read_text().splitlines()[0]
        assert header.startswith("lag,") and len(header.split(",")) == 52
        db = np.loadtxt(tmp_path / "design_map_db.csv", delimiter=",", skiprows=1)
        assert db[:, 1:].max() <= 0.0
        meta = json.loads((tmp_path / "design_map_meta.json").read_text())
        assert meta["L"] == 64 and meta["N"] == 8
        assert len((tmp_path / "design_prsl.csv").read_text().splitlines()) == 52

    def test_gridless_design_needs_eval_interval(self, tmp_path):
        bd_path = tmp_path / "bd.json"
        binomial_design(8).save(bd_path)
        assert run("evaluate", "--out-dir", tmp_path, "--design", bd_path) == 1
        assert run("evaluate", "--out-dir", tmp_path, "--design", bd_path,
                   "--eval-interval", 0, 3.1, "--points", 11, "--prefix", "bdout") == 0
        assert (tmp_path / "bdout_prsl.csv").exists()

    def test_single_point_grid(self, tmp_path):
        path = make_design(tmp_path)
        assert run("evaluate", "--out-dir", tmp_path, "--design", path,
                   "--eval-interval", 0.7, 2.0, "--points", 1) == 0
        rows = (tmp_path / "design_prsl.csv").read_text().splitlines()
        assert len(rows) == 2 and rows[1].startswith("0.69999999999999996,")

    def test_missing_design_file(self, tmp_path):
        assert run("evaluate", "--out-dir", tmp_path,
                   "--design", tmp_path / "nope.json") == 3

    def test_malformed_design_file(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("this is not json")
        assert run("evaluate", "--out-dir", tmp_path, "--design", bad) == 1

    def test_tampered_design_rejected(self, tmp_path):
        path = make_design(tmp_path)
        data = json.loads(path.read_text())
        data["p"][0] = -data["p"][0]
        path.write_text(json.dumps(data))
        assert run("evaluate", "--out-dir", tmp_path, "--design", path) == 1


class TestConfigFile:
    def test_config_supplies_required_options(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 8, "interval": [0.0, 2.0]}))
        assert run("design", "--out-dir", tmp_path, "--config", cfg) == 0
        assert WaveformDesign.load(tmp_path / "design.json").n_pulses == 8

    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 6, "interval": [0.0, 2.0]}))
        assert run("design", "--out-dir", tmp_path, "--config", cfg, "--n", 8) == 0
        assert WaveformDesign.load(tmp_path / "design.json").n_pulses == 8

    def test_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 8, "interval": [0, 2], "bogus": 1}))
        assert run("design", "--out-dir", tmp_path, "--config", cfg) == 1

    def test_malformed_config_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("{{{")
        assert run("design", "--out-dir", tmp_path, "--config", cfg,
                   "--n", 8, "--interval", 0, 2) == 1


class TestSnrSweepCommand:
    def test_sweep_table(self, tmp_path):
        assert run("snr-sweep", "--out-dir", tmp_path, "--n-list", 8, 12,
                   "--restarts", 2, "--sweeps", 3, "--out", "sweep.csv") == 0
        rows = (tmp_path / "sweep.csv").read_text().splitlines()
        assert rows[0] == "n,method,snr_ratio"
        assert len(rows) == 1 + 2 * 4
        table = {}
        for row in rows[1:]:
            n, method, value = row.split(",")
            assert value != ""
            table[(int(n), method)] = float(value)
        for n in (8, 12):
            assert table[(n, "hcd")] >= table[(n, "bs")] - 1e-9
            assert table[(n, "bs")] >= table[(n, "first-basis")] - 1e-9
            expected_bd = 4.0 ** (n - 1) / math.comb(2 * n - 2, n - 1)
            assert table[(n, "bd")] == pytest.approx(expected_bd, rel=1e-12)

    def test_method_subset(self, tmp_path):
        assert run("snr-sweep", "--out-dir", tmp_path, "--n-list", 8,
                   "--optimizers", "bd", "--out", "bd.csv") == 0
        rows = (tmp_path / "bd.csv").read_text().splitlines()
        assert len(rows) == 2 and rows[1].startswith("8,bd,")

    def test_bad_n_rejected(self, tmp_path):
        assert run("snr-sweep", "--out-dir", tmp_path, "--n-list", 1) == 1


class TestPolarCommand:
    def test_channel_files_and_samples(self, tmp_path, pair64):
        path = make_design(tmp_path)
        assert run("polar", "--out-dir", tmp_path, "--design", path, "--points", 9,
                   "--sample", 0, 0.0, "--sample", 3, 1.0) == 0
        for name in ("vv", "hh", "vh", "hv"):
            for suffix in (".csv", "_db.csv", "_meta.json"):
                assert (tmp_path / f"design_polar_{name}{suffix}").exists()
        samples = json.loads((tmp_path / "design_polar_u_samples.json").read_text())
        assert [s["lag"] for s in samples] == [0, 3]
        design = WaveformDesign.load(path)
        amb = polarimetric_ambiguities(pair64, design.p, design.w, evaluation_grid(0, 2, 9))
        expected = output_matrix(ScatteringMatrix.identity(), amb, 3, 1.0)
        got = np.array([[complex(re, im) for re, im in row] for row in samples[1]["U"]])
        assert np.allclose(got, expected, rtol=1e-12, atol=1e-12)

    def test_bad_scattering_value(self, tmp_path):
        path = make_design(tmp_path)
        assert run("polar", "--out-dir", tmp_path, "--design", path,
                   "--scattering", 1, 0, 0, "bogus") == 1

    def test_non_integer_sample_lag(self, tmp_path):
        path = make_design(tmp_path)
        assert run("polar", "--out-dir", tmp_path, "--design", path,
                   "--sample", 0.5, 0.0) == 1

    def test_off_grid_sample_angle(self, tmp_path):
        path = make_design(tmp_path)
        assert run("polar", "--out-dir", tmp_path, "--design", path,
                   "--points", 9, "--sample", 0, 0.123) == 1


class TestGolayGenCommand:
    def test_generates_valid_pair(self, tmp_path):
        assert run("golay-gen", "--out-dir", tmp_path, "--log2-length", 4,
                   "--out", "pair.json") == 0
        pair = GolayPair.load(tmp_path / "pair.json")
        assert pair.length == 16
        assert is_golay_pair(pair.x, pair.y)

    def test_negative_rejected(self, tmp_path):
        assert run("golay-gen", "--out-dir", tmp_path, "--log2-length", -1) == 1


class TestOutputRouting:
    def test_env_var_supplies_out_dir(self, tmp_path, monkeypatch):
        env_dir = tmp_path / "from_env"
        monkeypatch.setenv("COMPWAVE_OUT_DIR", str(env_dir))
        assert run("golay-gen", "--log2-length", 2) == 0
        assert (env_dir / "golay_pair.json").exists()

    def test_flag_beats_env_var(self, tmp_path, monkeypatch):
        monkeypatch.setenv("COMPWAVE_OUT_DIR", str(tmp_path / "from_env"))
        flag_dir = tmp_path / "from_flag"
        assert run("golay-gen", "--out-dir", flag_dir, "--log2-length", 2) == 0
        assert (flag_dir / "golay_pair.json").exists()
        assert not (tmp_path / "from_env").exists()

    def test_out_dir_collision_is_io_error(self, tmp_path):
        blocker = tmp_path / "blocked"
        blocker.write_text("")
        assert run("golay-gen", "--out-dir", blocker, "--log2-length", 2) == 3

    def test_byte_identical_reruns(self, tmp_path):
        dirs = [tmp_path / "a", tmp_path / "b"]
        for d in dirs:
            path = make_design(d, n=8, optimizer="hcd", restarts=2, sweeps=3)
            assert run("evaluate", "--out-dir", d, "--design", path, "--points", 21) == 0
        names = [sorted(f.name for f in d.iterdir()) for d in dirs]
        assert names[0] == names[1]
        for name in names[0]:
            assert (dirs[0] / name).read_bytes() == (dirs[1] / name).read_bytes()


class TestReproCommand:
    def test_light_pipeline(self, tmp_path):
        assert run("repro", "--out-dir", tmp_path, "--label", "t", "--n", 8,
                   "--points", 21, "--restarts", 2, "--sweeps", 3,
                   "--n-list", 8, 12) == 0
        out = tmp_path / "repro-t"
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["n"] == 8 and manifest["points"] == 21
        for name in manifest["outputs"]:
            assert (out / name).exists()
        assert "interval_design.json" in manifest["outputs"]
        assert "overall_prsl_comparison.csv" in manifest["outputs"]
        sweep = (out / "snr_vs_pulses.csv").read_text().splitlines()
        assert len(sweep) == 1 + 2 * 4
        for tag in ("interval", "overall", "bd"):
            assert (out / f"polar_{tag}_vh_db.csv").exists()
        header = (out / "overall_prsl_comparison.csv").read_text().splitlines()[0]
        assert header == "angle,ns,bd,ptm"

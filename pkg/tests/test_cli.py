"""End-to-end command tests driving main() in-process."""

import math

import numpy as np
import pytest

from n2sr.cli import main
from n2sr.constants import ps_to_s
from n2sr.profiles import synthesize_sech2_trace, write_trace_csv


def read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    cols = {name: [] for name in header}
    for line in lines[1:]:
        for name, field in zip(header, line.split(",")):
            cols[name].append(field)
    return cols


def floats(cols, name):
    return [float(x) for x in cols[name]]


class TestSeedPhase:
    def test_default_run(self, tmp_path, capsys):
        assert main(["seed-phase", "--out", str(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert "theta(tau_r)" in out
        assert (tmp_path / "bloch_trajectory.csv").exists()
        assert (tmp_path / "run-manifest.txt").exists()
        summary = (tmp_path / "seed_summary.txt").read_text()
        theta_over_pi = float(
            next(l for l in summary.splitlines() if l.startswith("theta_tau_r_over_pi")).split("=")[1]
        )
        assert 0.054 <= theta_over_pi <= 0.060

    def test_zero_field_gives_zero_angle(self, tmp_path):
        assert (
            main(
                [
                    "seed-phase",
                    "--set", "seed_intensity_mw_cm2=none",
                    "--set", "seed_e0_v_m=0",
                    "--out", str(tmp_path),
                ]
            )
            == 0
        )
        cols = read_csv(tmp_path / "bloch_trajectory.csv")
        assert all(x == 0.0 for x in floats(cols, "theta_rad"))
        assert all(x == 0.0 for x in floats(cols, "v"))
        w = floats(cols, "w")
        assert all(x == w[0] for x in w)

    def test_manifest_echoes_resolved_config(self, tmp_path):
        main(["seed-phase", "--set", "w0=0.2", "--out", str(tmp_path)])
        manifest = (tmp_path / "run-manifest.txt").read_text()
        assert "[config]" in manifest
        assert "w0 = 0.2" in manifest
        assert "command = seed-phase" in manifest

    def test_blowup_exits_2(self, tmp_path, capsys):
        with np.errstate(over="ignore", invalid="ignore"):
            code = main(
                [
                    "seed-phase",
                    "--set", "seed_intensity_mw_cm2=none",
                    "--set", "seed_e0_v_m=1e30",
                    "--out", str(tmp_path),
                ]
            )
        assert code == 2
        assert "numerical failure" in capsys.readouterr().err


@pytest.fixture(scope="module")
def regimes_dir(tmp_path_factory):
    path = tmp_path_factory.mktemp("regimes")
    assert main(["regimes", "--out", str(path)]) == 0
    return path


class TestRegimes:
    def test_all_panels_written(self, regimes_dir):
        for idx in (1, 2, 3, 4):
            assert (regimes_dir / f"regime{idx}.csv").exists()
        assert (regimes_dir / "profile.csv").exists()

    def test_delayed_regimes_reach_peak(self, regimes_dir):
        for idx in (1, 4):
            p = floats(read_csv(regimes_dir / f"regime{idx}.csv"), "P_over_P0")
            assert max(p) == 1.0

    def test_declining_regimes_stay_below_peak(self, regimes_dir):
        for idx in (2, 3):
            p = floats(read_csv(regimes_dir / f"regime{idx}.csv"), "P_over_P0")
            assert max(p) < 1.0
            assert all(a > b for a, b in zip(p, p[1:]))

    def test_regime3_angle_decreases(self, regimes_dir):
        theta = floats(read_csv(regimes_dir / "regime3.csv"), "theta_rad")
        assert all(a > b for a, b in zip(theta, theta[1:]))

    def test_regime1_angle_increases_through_quarter_turn(self, regimes_dir):
        theta = floats(read_csv(regimes_dir / "regime1.csv"), "theta_rad")
        assert all(a < b for a, b in zip(theta, theta[1:]))
        assert theta[0] < 0.5 * math.pi < theta[-1]

    def test_too_strong_seed_rejected(self, tmp_path):
        code = main(
            [
                "regimes",
                "--set", "seed_intensity_mw_cm2=40000",
                "--out", str(tmp_path),
            ]
        )
        assert code == 1


class TestPressureScan:
    def test_default_grid(self, tmp_path, capsys):
        assert main(["pressure-scan", "--out", str(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert "density slope" in out
        cols = read_csv(tmp_path / "pressure_scan.csv")
        assert floats(cols, "p_mbar") == [6.0, 7.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0]
        tau_w = floats(cols, "tau_W_ps")
        assert all(a > b for a, b in zip(tau_w, tau_w[1:]))

    def test_single_anchor_pressure(self, tmp_path):
        assert main(["pressure-scan", "--pressures", "8", "--out", str(tmp_path)]) == 0
        cols = read_csv(tmp_path / "pressure_scan.csv")
        assert len(cols["p_mbar"]) == 1
        assert floats(cols, "tau_W_ps")[0] == pytest.approx(1.666, rel=1e-6)

    def test_below_threshold_pressure_exits_1(self, tmp_path, capsys):
        assert main(["pressure-scan", "--pressures", "2", "--out", str(tmp_path)]) == 1
        assert "2" in capsys.readouterr().err

    def test_unparseable_pressures_exit_1(self, tmp_path):
        assert main(["pressure-scan", "--pressures", "6,spam", "--out", str(tmp_path)]) == 1

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["pressure-scan", "--out", str(a)]) == 0
        assert main(["pressure-scan", "--out", str(b)]) == 0
        assert (a / "pressure_scan.csv").read_bytes() == (b / "pressure_scan.csv").read_bytes()


class TestFit:
    def make_traces(self, directory):
        files = []
        for name, pressure in (("a.csv", 8.0), ("b.csv", None)):
            tau_w = ps_to_s(1.666)
            trace = synthesize_sech2_trace(
                1.0, ps_to_s(6.0), tau_w, 0.0, ps_to_s(30.0), 1501, pressure=pressure
            )
            path = directory / name
            write_trace_csv(path, trace)
            files.append(str(path))
        return files

    def test_fit_pipeline(self, tmp_path, capsys):
        files = self.make_traces(tmp_path)
        out = tmp_path / "out"
        assert main(["fit", *files, "--out", str(out)]) == 0
        captured = capsys.readouterr()
        assert "no pressure_mbar metadata" in captured.err
        fits = read_csv(out / "fits.csv")
        assert fits["file"] == ["a.csv", "b.csv"]
        assert fits["pressure_mbar"] == ["8.0", ""]
        assert all(flag == "True" for flag in fits["converged"])
        assert floats(fits, "tau_W_ps")[0] == pytest.approx(1.666, rel=1e-4)
        summary = read_csv(out / "pulse_summary.csv")
        assert len(summary["p_mbar"]) == 1  # only the trace with metadata

    def test_malformed_trace_exits_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("time_ps,intensity_arb\n0.0,1.0\nnope,2.0\n")
        assert main(["fit", str(bad), "--out", str(tmp_path / "out")]) == 1
        err = capsys.readouterr().err
        assert "bad.csv" in err and ":3" in err

    def test_empty_trace_exits_1(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        assert main(["fit", str(empty), "--out", str(tmp_path / "out")]) == 1


class TestValidate:
    def test_default_config_passes(self, tmp_path, capsys):
        assert main(["validate", "--out", str(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert "all 11 checks passed" in out
        report = (tmp_path / "validate_report.txt").read_text().splitlines()
        assert len(report) == 11
        assert all(line.startswith("PASS") for line in report)

    def test_corrupted_constant_fails_named_check(self, tmp_path, capsys):
        assert main(["validate", "--corrupt", "mu0", "--out", str(tmp_path)]) == 3
        captured = capsys.readouterr()
        assert "FAIL  constants-product" in captured.out
        assert "constants-product" in captured.err

    def test_unknown_corrupt_name_exits_1(self, tmp_path):
        assert main(["validate", "--corrupt", "bogus", "--out", str(tmp_path)]) == 1


class TestUsageErrors:
    def test_no_command(self, capsys):
        assert main([]) == 1
        assert "error" in capsys.readouterr().err

    def test_unknown_config_key(self, tmp_path, capsys):
        assert main(["seed-phase", "--set", "bogus=1", "--out", str(tmp_path)]) == 1
        assert "unknown config key" in capsys.readouterr().err

    def test_bad_value_names_field(self, tmp_path, capsys):
        assert main(["seed-phase", "--set", "tau_s_ps=abc", "--out", str(tmp_path)]) == 1
        assert "tau_s_ps" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path):
        assert main(["seed-phase", "--config", str(tmp_path / "nope.ini")]) == 1

    def test_config_file_is_used(self, tmp_path):
        ini = tmp_path / "run.ini"
        ini.write_text("w0 = 0.25\nout_dir = " + str(tmp_path / "from-file") + "\n")
        assert main(["seed-phase", "--config", str(ini)]) == 0
        manifest = (tmp_path / "from-file" / "run-manifest.txt").read_text()
        assert "w0 = 0.25" in manifest

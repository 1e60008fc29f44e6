"""Command-line interface: subcommands, exit codes, schemas, determinism."""

import importlib.resources
import json
import subprocess
import sys

import pytest

from zakgabor.cli import main

try:
    import jsonschema

    HAVE_JSONSCHEMA = True
except ImportError:  # pragma: no cover
    HAVE_JSONSCHEMA = False


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture()
def bump_json(tmp_path):
    path = tmp_path / "bump.json"
    path.write_text(json.dumps({"variant": "compact_bump", "support": [0, 1]}))
    return str(path)


class TestAnalyze:
    def test_critical_gaussian(self, capsys):
        code, rep = run_json(
            capsys,
            "analyze", "--window", "gaussian", "--alpha", "1", "--p", "1", "--q", "1",
            "--grid", "32x32", "--no-timing",
        )
        assert code == 0
        assert rep["verdicts"]["complete"] == {
            "value": "yes",
            "tier": "certified",
            "detail": "nonzero Fourier coefficient witness exceeds its error bound",
        }
        assert rep["verdicts"]["frame"]["value"] == "no"
        assert rep["verdicts"]["frame"]["tier"] == "numerical"
        assert rep["certificate"]["status"] == "witness"
        assert rep["rank_scan"]["coarse"]["deficient_fraction"] == 0.0

    def test_hermite_half_density(self, capsys):
        code, rep = run_json(
            capsys,
            "analyze", "--window", "hermite:1", "--alpha", "1", "--p", "1", "--q", "2",
            "--grid", "32x32", "--no-timing",
        )
        assert code == 0
        assert rep["verdicts"]["complete"]["value"] == "yes"
        assert rep["verdicts"]["complete"]["tier"] == "certified"
        assert rep["verdicts"]["frame"]["value"] == "no"  # odd Hermite never frames

    def test_bump_incomplete(self, capsys, bump_json):
        code, rep = run_json(
            capsys,
            "analyze", "--window", bump_json, "--alpha", "2", "--p", "1", "--q", "2",
            "--grid", "32x32", "--no-timing",
        )
        assert code == 0
        assert rep["verdicts"]["complete"]["value"] == "no"
        assert rep["verdicts"]["complete"]["tier"] == "numerical"
        assert rep["certificate"]["status"] == "not_certifiable"

    def test_density_refusal_tier(self, capsys):
        code, rep = run_json(
            capsys,
            "analyze", "--window", "gaussian", "--alpha", "1", "--p", "3", "--q", "2",
            "--grid", "8x8", "--no-timing",
        )
        assert code == 0
        assert rep["verdicts"]["complete"]["value"] == "no"
        # rigorous by rank counting, but the tool never claims "certified" for
        # a negative completeness verdict
        assert rep["verdicts"]["complete"]["tier"] == "numerical"
        assert "rank" in rep["verdicts"]["complete"]["detail"]

    def test_oracle_section(self, capsys):
        code, rep = run_json(
            capsys,
            "analyze", "--window", "gaussian", "--alpha", "1", "--p", "1", "--q", "2",
            "--grid", "8x8", "--oracle-sizes", "2,4", "--no-timing",
        )
        assert code == 0
        assert rep["oracle"]["sizes"] == [2, 4]
        rs = rep["oracle"]["residuals"]
        assert rs[0] > rs[1]

    def test_csv_sidecars(self, capsys, tmp_path):
        csv_dir = tmp_path / "fields"
        code, _ = run_json(
            capsys,
            "analyze", "--window", "gaussian", "--alpha", "1", "--p", "1", "--q", "1",
            "--grid", "8x8", "--no-timing", "--csv-dir", str(csv_dir),
        )
        assert code == 0
        coarse = (csv_dir / "field_coarse.csv").read_text().splitlines()
        fine = (csv_dir / "field_fine.csv").read_text().splitlines()
        assert len(coarse) == 3 + 1 + 8 * 8
        assert len(fine) == 3 + 1 + 16 * 16

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(
            ["analyze", "--window", "gaussian", "--alpha", "1", "--p", "1", "--q", "1",
             "--grid", "8x8", "--no-timing", "--out", str(out)]
        )
        assert code == 0
        assert capsys.readouterr().out == ""
        rep = json.loads(out.read_text())
        assert rep["tool"]["name"] == "zakgabor"


class TestExitCodes:
    def test_missing_window_file(self, capsys):
        code, _ = run(capsys, "analyze", "--window", "no_such_file.json",
                      "--alpha", "1", "--p", "1", "--q", "1")
        assert code == 2

    def test_bad_window_json(self, capsys, tmp_path):
        path = tmp_path / "w.json"
        path.write_text("{not json")
        code, _ = run(capsys, "analyze", "--window", str(path),
                      "--alpha", "1", "--p", "1", "--q", "1")
        assert code == 2

    def test_bad_lattice(self, capsys):
        code, _ = run(capsys, "analyze", "--window", "gaussian",
                      "--alpha", "0", "--p", "1", "--q", "1")
        assert code == 2

    def test_bad_grid(self, capsys):
        code, _ = run(capsys, "analyze", "--window", "gaussian",
                      "--alpha", "1", "--p", "1", "--q", "1", "--grid", "axb")
        assert code == 2

    def test_square_grid_shorthand(self, capsys):
        code, rep = run_json(capsys, "analyze", "--window", "gaussian",
                             "--alpha", "1", "--p", "1", "--q", "1",
                             "--grid", "8", "--no-timing")
        assert code == 0
        assert rep["parameters"]["grid"] == [8, 8]

    def test_bad_preset(self, capsys):
        code, _ = run(capsys, "analyze", "--window", "hermite:x",
                      "--alpha", "1", "--p", "1", "--q", "1")
        assert code == 2

    def test_numerical_failure_partial_report(self, capsys):
        # alpha so small that the Zak truncation cap is exceeded
        code, rep = run_json(
            capsys,
            "analyze", "--window", "gaussian", "--alpha", "1e-5", "--p", "1", "--q", "1",
            "--grid", "4x4", "--no-timing",
        )
        assert code == 3
        assert rep["error"]["kind"] == "truncation"
        assert rep["window"]["variant"] == "gaussian"  # partial report retained

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as ei:
            main(["--version"])
        assert ei.value.code == 0


class TestScan:
    def test_density_sweep(self, capsys):
        code, out = run(
            capsys,
            "scan", "--window", "gaussian", "--alpha", "1", "--lattices", "1:2,1:1,3:2",
            "--grid", "16x16",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "p,q,density,deficient_fraction,A_est,witness_found,status,note"
        rows = [ln.split(",") for ln in lines[1:]]
        assert len(rows) == 3
        by_pq = {(r[0], r[1]): r for r in rows}
        assert by_pq[("1", "2")][5] == "true"
        assert by_pq[("1", "1")][5] == "true"
        assert by_pq[("3", "2")][5] == "false"
        assert by_pq[("3", "2")][6] == "incomplete_by_density"
        assert float(by_pq[("3", "2")][3]) == 1.0  # every point rank-deficient

    def test_bad_lattice_token(self, capsys):
        code, _ = run(capsys, "scan", "--window", "gaussian", "--alpha", "1",
                      "--lattices", "1-2")
        assert code == 2

    def test_row_error_continues(self, capsys, tmp_path):
        # second lattice fails numerically; first row still present, exit 3
        code, out = run(
            capsys,
            "scan", "--window", "gaussian", "--alpha", "1e-5", "--lattices", "1:1",
            "--grid", "4x4",
        )
        assert code == 3
        lines = out.splitlines()
        assert len(lines) == 2
        assert lines[1].split(",")[6] == "error"


class TestTheta:
    def test_single_value(self, capsys):
        code, d = run_json(
            capsys,
            "theta", "--window", "gaussian", "--alpha", "1", "--p", "1", "--q", "1",
            "--cols", "0", "--x", "0", "--N", "0",
        )
        assert code == 0
        assert set(d) == {"columns", "x", "N", "re", "im", "error_bound"}
        assert d["re"] == pytest.approx(1.0, rel=1e-12)
        assert d["im"] == 0.0

    def test_certificate_mode(self, capsys):
        code, d = run_json(
            capsys,
            "theta", "--window", "hermite:2", "--alpha", "1", "--p", "1", "--q", "2",
            "--certificate",
        )
        assert code == 0
        assert d["status"] == "witness"
        assert d["witness"]["error_bound"] < abs(complex(d["witness"]["re"], d["witness"]["im"]))

    def test_needs_point_or_certificate(self, capsys):
        code, _ = run(capsys, "theta", "--window", "gaussian",
                      "--alpha", "1", "--p", "1", "--q", "1")
        assert code == 2

    def test_bad_columns(self, capsys):
        code, _ = run(capsys, "theta", "--window", "gaussian", "--alpha", "1",
                      "--p", "1", "--q", "2", "--cols", "3", "--x", "0", "--N", "0")
        assert code == 2


class TestReconstruct:
    def test_frame_case(self, capsys):
        code, d = run_json(
            capsys,
            "reconstruct", "--window", "gaussian", "--alpha", "1", "--p", "1", "--q", "2",
            "--signal", "window", "--t-span", "6", "--no-timing",
        )
        assert code == 0
        assert d["relative_error"] <= 1e-3
        assert d["unstable"] is False

    def test_band_limited_signal(self, capsys):
        code, d = run_json(
            capsys,
            "reconstruct", "--window", "gaussian", "--alpha", "1", "--p", "1", "--q", "2",
            "--signal", "band_limited", "--t-span", "6", "--no-timing",
        )
        assert code == 0
        assert d["relative_error"] <= 1e-2  # band-limited tails clip at the window edge


class TestOracleCmd:
    def test_csv_output(self, capsys):
        code, out = run(
            capsys,
            "oracle", "--window", "gaussian", "--alpha", "1", "--p", "1", "--q", "2",
            "--sizes", "2,4",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "size,residual"
        assert [ln.split(",")[0] for ln in lines[1:]] == ["2", "4"]
        rs = [float(ln.split(",")[1]) for ln in lines[1:]]
        assert rs[0] > rs[1]

    def test_empty_sizes_rejected(self, capsys):
        code, _ = run(capsys, "oracle", "--window", "gaussian", "--alpha", "1",
                      "--p", "1", "--q", "2", "--sizes", "")
        assert code == 2


@pytest.mark.skipif(not HAVE_JSONSCHEMA, reason="jsonschema not installed")
class TestSchema:
    def _schema(self):
        ref = importlib.resources.files("zakgabor") / "schemas" / "report.schema.json"
        return json.loads(ref.read_text())

    @pytest.mark.parametrize(
        "argv",
        [
            ("analyze", "--window", "gaussian", "--alpha", "1", "--p", "1", "--q", "1",
             "--grid", "16x16", "--no-timing"),
            ("analyze", "--window", "hermite:1", "--alpha", "1", "--p", "1", "--q", "2",
             "--grid", "16x16", "--no-timing", "--oracle-sizes", "2"),
            ("analyze", "--window", "gaussian", "--alpha", "1", "--p", "3", "--q", "2",
             "--grid", "8x8", "--no-timing"),
        ],
        ids=["critical", "hermite", "density"],
    )
    def test_reports_validate(self, capsys, argv):
        code, rep = run_json(capsys, *argv)
        assert code == 0
        jsonschema.validate(rep, self._schema())

    def test_schema_rejects_certified_incomplete(self):
        schema = self._schema()
        bad = {"value": "no", "tier": "certified", "detail": ""}
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(bad, schema["$defs"]["verdict"])


class TestDeterminism:
    def test_byte_identical_reports(self, tmp_path):
        argv = ["analyze", "--window", "gaussian", "--alpha", "1", "--p", "1", "--q", "2",
                "--grid", "16x16", "--no-timing", "--oracle-sizes", "2"]
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_scan_byte_identical(self, tmp_path):
        argv = ["scan", "--window", "hermite:2", "--alpha", "1", "--lattices", "1:2,2:3",
                "--grid", "8x8"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "zakgabor.cli", "--version"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "zakgabor" in proc.stdout

import json
import subprocess
import sys

import pytest

from subharmonics.cli import main


def _read_rows(path):
    header = None
    rows = []
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            continue
        if header is None:
            header = line.split(",")
        else:
            rows.append(dict(zip(header, line.split(","))))
    return header, rows


def test_period_curve_output(tmp_path):
    out = tmp_path / "pc"
    assert main(["period-curve", "--v0-min", "0.2", "--v0-max", "1.8",
                 "--count", "5", "--out", str(out)]) == 0
    header, rows = _read_rows(out / "period_curve.csv")
    assert header == ["v0", "c", "T_c", "T_oracle"]
    assert len(rows) == 5
    assert float(rows[0]["v0"]) == 0.2
    for row in rows:
        assert abs(float(row["T_c"]) - float(row["T_oracle"])) < 1e-7


def test_header_embeds_resolved_config(tmp_path):
    out = tmp_path / "pc"
    main(["period-curve", "--count", "3", "--v0-min", "0.5", "--v0-max", "1.5",
          "--out", str(out)])
    first = (out / "period_curve.csv").read_text().splitlines()[0]
    assert first.startswith("# config: ")
    embedded = json.loads(first[len("# config: "):])
    assert embedded["experiment"]["count"] == 3
    assert embedded["output"]["directory"] == "."  # destination never in the header


def test_reruns_are_byte_identical(tmp_path):
    args = ["melnikov", "--m", "3", "--n", "1", "--v0", "1.6", "--samples", "16"]
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    for name in ("melnikov_profile.csv", "melnikov_zeros.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({
        "experiment": {"v0_min": 0.3, "v0_max": 1.2, "count": 4},
        "output": {"precision": 9},
    }))
    out = tmp_path / "pc"
    assert main(["period-curve", "--config", str(cfg), "--count", "6",
                 "--out", str(out)]) == 0
    _, rows = _read_rows(out / "period_curve.csv")
    assert len(rows) == 6  # the flag wins over the file
    assert float(rows[-1]["v0"]) == 1.2  # the file fills what flags leave


def test_config_errors_exit_2(tmp_path):
    out = str(tmp_path / "x")
    # resonance given both ways
    assert main(["melnikov", "--m", "3", "--n", "1", "--v0", "1.6",
                 "--omega", "2.0", "--out", out]) == 2
    # no level and no period at all
    assert main(["melnikov", "--m", "3", "--n", "1", "--out", out]) == 2
    # malformed forcing string
    assert main(["melnikov", "--m", "3", "--n", "1", "--v0", "1.6",
                 "--forcing", "sin*2", "--out", out]) == 2
    # forced portrait without a forcing period
    assert main(["phase-portrait", "--eps", "0.2", "--out", out]) == 2
    # find-po needs eps > 0
    assert main(["find-po", "--m", "3", "--n", "1", "--v0", "1.6",
                 "--eps", "0", "--out", out]) == 2
    # unreadable config file
    assert main(["period-curve", "--config", str(tmp_path / "nope.json"),
                 "--out", out]) == 2


def test_degenerate_profile_is_marked(tmp_path, capsys):
    out = tmp_path / "mz"
    assert main(["melnikov", "--m", "3", "--n", "2", "--v0", "1.6",
                 "--samples", "16", "--out", str(out)]) == 0
    text = (out / "melnikov_zeros.csv").read_text()
    assert "# identically-zero: true" in text
    assert text.strip().endswith("t0_zero,slope")  # no zero rows
    assert "identically zero" in capsys.readouterr().out


def test_find_po_without_simple_zeros_exits_3(tmp_path):
    code = main(["find-po", "--m", "3", "--n", "2", "--v0", "1.6",
                 "--eps", "0.01", "--melnikov-samples", "16",
                 "--out", str(tmp_path / "fp")])
    assert code == 3


def test_find_po_reference_records(tmp_path):
    out = tmp_path / "fp"
    assert main(["find-po", "--m", "3", "--n", "1", "--v0", "1.6",
                 "--eps", "0.01", "--seed-zero-index", "0",
                 "--melnikov-samples", "32", "--closure-samples", "40",
                 "--out", str(out)]) == 0
    _, records = _read_rows(out / "records.csv")
    assert len(records) == 1
    rec = records[0]
    assert rec["stability"] == "saddle"
    assert float(rec["residual"]) < 1e-8
    assert int(rec["m"]) == 3 and int(rec["n"]) == 1
    _, cycle = _read_rows(out / "cycle.csv")
    assert len(cycle) == 3
    _, iterates = _read_rows(out / "newton_iterates.csv")
    assert len(iterates) >= 3
    assert float(iterates[0]["p2"]) == 1.6
    _, closure = _read_rows(out / "closure.csv")
    assert len(closure) == 40
    _, status = _read_rows(out / "status.csv")
    assert status[0]["outcome"] == "converged"


def test_find_po_poincare_solver(tmp_path):
    out = tmp_path / "fpp"
    assert main(["find-po", "--m", "3", "--n", "1", "--v0", "1.6",
                 "--eps", "0.01", "--seed-zero-index", "0", "--solver", "poincare",
                 "--melnikov-samples", "32", "--closure-samples", "20",
                 "--out", str(out)]) == 0
    _, records = _read_rows(out / "records.csv")
    assert records[0]["stability"] == "saddle"
    assert abs(float(records[0]["u"])) < 1e-12  # section point sits on u = 0


def test_find_po_deduplicates_cyclic_zeros(tmp_path):
    # all six zeros collapse onto two genuine orbits (saddle + elliptic)
    out = tmp_path / "fpd"
    assert main(["find-po", "--m", "3", "--n", "1", "--v0", "1.6",
                 "--eps", "0.01", "--melnikov-samples", "32",
                 "--closure-samples", "20", "--out", str(out)]) == 0
    _, records = _read_rows(out / "records.csv")
    assert len(records) == 2
    assert {r["stability"] for r in records} == {"saddle", "elliptic"}
    _, status = _read_rows(out / "status.csv")
    assert len(status) == 6


def test_strobo_scan_with_continuation_flags(tmp_path):
    out = tmp_path / "ss"
    assert main(["strobo-scan", "--m", "3", "--n", "1", "--v0", "1.6",
                 "--eps", "0.2", "--t0", "1.0", "--iterations", "5",
                 "--out", str(out)]) == 0
    header, rows = _read_rows(out / "strobo_scan.csv")
    assert header == ["seed_id", "iter", "u", "v"]
    assert len(rows) == 9 * 6  # default seed line, iterates plus the seed
    _, status = _read_rows(out / "status.csv")
    assert all(s["status"] == "ok" for s in status)


def test_json_output_format(tmp_path):
    out = tmp_path / "pj"
    assert main(["period-curve", "--count", "3", "--v0-min", "0.5",
                 "--v0-max", "1.5", "--format", "json", "--out", str(out)]) == 0
    payload = json.loads((out / "period_curve.json").read_text())
    assert payload["columns"] == ["v0", "c", "T_c", "T_oracle"]
    assert len(payload["rows"]) == 3
    assert payload["config"]["experiment"]["count"] == 3


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "subharmonics", "period-curve", "--count", "2",
         "--v0-min", "0.5", "--v0-max", "1.0", "--out", str(tmp_path / "m")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert (tmp_path / "m" / "period_curve.csv").exists()

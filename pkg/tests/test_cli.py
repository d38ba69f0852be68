"""Tests for the command-line front end and its report contracts."""

from __future__ import annotations

import hashlib
import json
import subprocess
import sys

import pytest

from jetcert import cli
from jetcert.conics import PRESET_TRIPLES
from jetcert.linsys import assemble, sms_checksum


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert err == ""
    return code, json.loads(out)


def test_verify_certified_exit_zero(capsys):
    code, payload = run_json(
        capsys, "verify", "--conics", "fermat", "--m", "4", "--t", "3"
    )
    assert code == 0
    assert payload["result"]["verdict"] == "vanishing-certified"
    assert payload["result"]["nullity"] == 0
    assert payload["counts"]["n_vars"] == 295
    assert payload["params"]["jacobian_monomial"] is True
    assert payload["params"]["charts"] == [0, 2]


def test_verify_negative_control_exit_one(capsys):
    code, payload = run_json(capsys, "verify", "--m", "3", "--t", "0")
    assert code == 1
    assert payload["result"]["verdict"] == "nontrivial-nullspace"
    assert payload["result"]["nullity"] >= 1


def test_verify_vacuous_exit_three(capsys):
    code, payload = run_json(capsys, "verify", "--m", "1", "--t", "4")
    assert code == 3
    assert payload["result"]["verdict"] == "vacuous"
    assert payload["counts"]["n_vars"] == 0


def test_verify_twist_three_weight_one_has_constant_stratum(capsys):
    # 3m - t = 0 keeps a (two-dimensional) constant stratum: not vacuous.
    code, payload = run_json(capsys, "verify", "--m", "1", "--t", "3")
    assert code == 0
    assert payload["counts"]["n_vars"] == 2
    assert payload["result"]["verdict"] == "vanishing-certified"


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "--m", "3", "--t", "3", "--charts", "z0"),
        ("verify", "--m", "3", "--t", "3", "--prime", "6"),
        ("verify", "--t", "3"),
        ("verify", "--m", "3"),
        ("verify", "--m", "0", "--t", "1"),
        ("verify", "--m", "3", "--t", "-1"),
        ("verify", "--m", "3", "--t", "3", "--charts", "z0,z4"),
        ("verify", "--m", "3", "--t", "3", "--charts", "z0,z0"),
        ("verify", "--m", "3", "--t", "3", "--conics", "/nonexistent.json"),
        ("thresholds", "--degrees", "1,1,1"),
        ("thresholds", "--degrees", "3,2"),
        ("enumerate", "--c", "9/5"),
    ],
)
def test_config_errors_exit_two(capsys, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_report_is_deterministic_except_timings(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        code, _ = run_json(
            capsys,
            "verify", "--m", "3", "--t", "3", "--report", str(path),
        )
        assert code == 0
    payloads = [json.loads(path.read_text()) for path in paths]
    for payload in payloads:
        del payload["timings"]
    assert payloads[0] == payloads[1]


def test_parallel_report_matches_serial(capsys, tmp_path):
    outputs = []
    for flag in ([], ["--parallel"]):
        path = tmp_path / f"report{len(outputs)}.json"
        code, _ = run_json(
            capsys, "verify", "--m", "3", "--t", "3", "--report", str(path), *flag
        )
        assert code == 0
        payload = json.loads(path.read_text())
        del payload["timings"]
        del payload["params"]["parallel"]
        outputs.append(payload)
    assert outputs[0] == outputs[1]


def test_report_checksum_matches_sms_export(capsys, tmp_path):
    report = tmp_path / "report.json"
    matrix = tmp_path / "matrix.sms"
    code, _ = run_json(
        capsys,
        "verify", "--m", "3", "--t", "3",
        "--report", str(report), "--export-matrix", str(matrix),
    )
    assert code == 0
    payload = json.loads(report.read_text())
    digest = hashlib.sha256(matrix.read_bytes()).hexdigest()
    assert payload["checksum"] == digest
    system = assemble(PRESET_TRIPLES["fermat"], 3, 3, 5)
    assert payload["checksum"] == sms_checksum(system)


def test_report_structure(capsys, tmp_path):
    path = tmp_path / "report.json"
    run_json(capsys, "verify", "--m", "3", "--t", "3", "--report", str(path))
    payload = json.loads(path.read_text())
    assert set(payload) == {
        "version", "params", "counts", "result", "checksum", "timings",
    }
    assert set(payload["counts"]) == {"n_vars", "n_rows_raw", "n_rows_dedup"}
    assert set(payload["result"]) == {"rank", "nullity", "verdict"}
    assert {"assemble_s", "eliminate_s", "max_rss_mb"} <= set(payload["timings"])
    # Sorted keys in the serialized file.
    assert path.read_text() == json.dumps(payload, sort_keys=True, indent=2) + "\n"


def test_conic_file_ingestion(capsys, tmp_path):
    path = tmp_path / "conics.json"
    # Rational strings and decimal floats are both read exactly.
    path.write_text(
        json.dumps(
            [
                ["1/2", "1/4", "1/4", 0, 0, 0],
                [0.25, "1/2", 0.25, 0, 0, 0],
                ["0.25", "0.25", "0.5", 0, 0, 0],
            ]
        )
    )
    triple = cli.load_conics(str(path))
    # Cleared to primitive integer vectors: these are the Fermat-type conics.
    assert triple.first.coefficients == (2, 1, 1, 0, 0, 0)
    assert triple.second.coefficients == (1, 2, 1, 0, 0, 0)
    assert triple.third.coefficients == (1, 1, 2, 0, 0, 0)
    code, payload = run_json(
        capsys, "verify", "--conics", str(path), "--m", "3", "--t", "3"
    )
    assert code == 0
    assert payload["result"]["verdict"] == "vanishing-certified"


@pytest.mark.parametrize(
    "content",
    [
        "[[1,2,3,0,0,0],[1,1,2,0,0,0]]",  # two rows
        "[[1,2,3,0,0],[1,1,2,0,0,0],[2,1,1,0,0,0]]",  # short row
        '[[1,"x",3,0,0,0],[1,1,2,0,0,0],[2,1,1,0,0,0]]',  # bad entry
        '{"first": [1,2,3,0,0,0]}',  # not a list of rows
        "not json",
    ],
)
def test_conic_file_rejects_malformed(tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    with pytest.raises(cli.ConfigError):
        cli.load_conics(str(path))


def test_config_file_merging(capsys, tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"m": 3, "t": 3, "conics": "fermat", "prime": 5}))
    code, payload = run_json(capsys, "verify", "--config", str(config))
    assert code == 0
    assert payload["params"]["m"] == 3
    # Explicit flags take precedence over the config file.
    code, payload = run_json(
        capsys, "verify", "--config", str(config), "--m", "4"
    )
    assert code == 0
    assert payload["params"]["m"] == 4
    assert payload["params"]["t"] == 3


def test_parse_charts_variants():
    assert cli.parse_charts("z0,z2") == (0, 2)
    assert cli.parse_charts("0,2") == (0, 2)
    assert cli.parse_charts(" Z1 , z0 ") == (1, 0)
    with pytest.raises(cli.ConfigError):
        cli.parse_charts("z3")
    with pytest.raises(cli.ConfigError):
        cli.parse_charts("z0,z0")


def test_thresholds_command_sorts_degrees(capsys):
    code, payload = run_json(capsys, "thresholds", "--degrees", "2,3,2")
    assert code == 0
    assert payload["one_jet"]["degrees"] == [3, 2, 2]
    assert payload["one_jet"]["delta1"]["radicand"] == 33
    assert "tau" not in payload
    code, payload = run_json(
        capsys, "thresholds", "--degrees", "3,2,2", "--m", "5", "--t", "4"
    )
    assert code == 0
    assert payload["tau"]["m"] == 5 and payload["tau"]["t"] == 4


def test_enumerate_command(capsys):
    code, payload = run_json(capsys, "enumerate", "--c", "19")
    assert code == 0
    assert payload["pairs"] == [[3, 3], [4, 4], [5, 5], [6, 6], [7, 7]]
    assert payload["slope"] == "1940/2109"


def test_tower_command(capsys):
    code, payload = run_json(capsys, "tower")
    assert code == 0
    assert payload["quartic_values"]["u1^0*u2^4"] == "36"
    assert payload["self_intersection_identity"]["all_match"] is True
    assert payload["split_independence_general_pairings"] is True


def test_export_matrix_single_chart_allowed(capsys, tmp_path):
    path = tmp_path / "one-chart.sms"
    code, payload = run_json(
        capsys,
        "export-matrix", "--m", "3", "--t", "3", "--charts", "z0",
        "--output", str(path),
    )
    assert code == 0
    header = path.read_text().splitlines()[0]
    assert header.endswith("113 M")
    assert payload["n_vars"] == 113


def test_missing_required_argument_is_argparse_error(capsys):
    with pytest.raises(SystemExit):
        cli.main(["enumerate"])  # --c is required


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "jetcert.cli", "enumerate", "--c", "5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["pairs"][0] == [3, 3]

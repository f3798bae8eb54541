#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import json

import numpy as np
import pytest

from boundlur.commands import (
    SWEEP_HEADER,
    compute_sweep_row,
    run_sweep,
    sweep_grid,
)
from boundlur.core.registry import registry
from boundlur.core.utils import format_float
from boundlur.run import FLAG_KEYS, main
from boundlur.states.bound_state import (
    CSV_PREAMBLE,
    StateParams,
    make_bound_state,
    make_state,
)

CFG_VERIFY = "configs/test/verify_quick.yaml"
CFG_SWEEP = "configs/test/sweep_test.yaml"


def read_csv_matrix(text):
    rows = [
        [float(value) for value in line.split(",")]
        for line in text.splitlines()
        if line and not line.startswith("#")
    ]
    values = np.asarray(rows)
    assert values.shape == (9, 18)
    return values[:, 0::2] + 1j * values[:, 1::2]


def read_json_matrix(text):
    pairs = np.asarray(json.loads(text)["rho"])
    return pairs[..., 0] + 1j * pairs[..., 1]


def parse_report(text):
    values = {}
    for line in text.splitlines():
        key, sep, value = line.partition("=")
        if sep and " " not in key:
            values[key] = value
    return values


def sweep_rows(text):
    lines = text.splitlines()
    assert lines[0] == SWEEP_HEADER
    return [[float(v) for v in line.split(",")] for line in lines[1:]]


def test_registered_commands():
    for name in FLAG_KEYS:
        assert callable(registry.get_command(name))
    assert registry.get_command("transmogrify") is None


def test_verify_command(capsys):
    assert main(["--config", CFG_VERIFY, "verify"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[-1].startswith("summary 10/10 passed")


def test_verify_tolerance_flag(capsys):
    code = main(
        [
            "--config",
            CFG_VERIFY,
            "verify",
            "--tolerance",
            "1e-30",
            "VERIFY.CHECKS",
            "['violation_identity']",
        ]
    )
    assert code == 1
    assert " FAIL " in capsys.readouterr().out


def test_sweep_to_stdout(capsys):
    assert main(["--config", CFG_SWEEP, "sweep"]) == 0
    out = capsys.readouterr().out
    rows = sweep_rows(out)
    assert len(rows) == 11
    assert out.splitlines()[1].startswith(format_float(0.0) + ",")
    for row in rows:
        a, c_lur, c_closed, k_pairing, k_svd = row[:5]
        assert c_lur == pytest.approx(c_closed, abs=1e-10)
        assert k_pairing == pytest.approx(4.0 / 3.0, abs=1e-10)
        assert k_svd == pytest.approx(4.0 / 3.0, abs=1e-10)
        assert row[5] == pytest.approx(8.0 * (1.0 - c_closed), abs=1e-10)
        assert row[8] >= -1e-12
    c_half = rows[5]
    assert c_half[0] == 0.5
    assert c_half[1] == pytest.approx(0.0015, abs=1e-12)
    assert c_half[9] == pytest.approx(0.00445995, abs=1e-8)


def test_sweep_is_deterministic(capsys):
    outputs = []
    for workers in ("1", "1", "3"):
        assert (
            main(["--config", CFG_SWEEP, "sweep", "--workers", workers]) == 0
        )
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] == outputs[2]


def test_sweep_to_file(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main(
        ["sweep", "--steps", "5", "--a-min", "0.2", "--out", str(out)]
    )
    assert code == 0
    text = out.read_text()
    assert text.endswith("\n")
    rows = sweep_rows(text)
    assert [row[0] for row in rows] == list(np.linspace(0.2, 1.0, 5))


def test_noisy_sweep(capsys):
    assert main(["--config", CFG_SWEEP, "sweep", "--p-noise", "0.01"]) == 0
    rows = sweep_rows(capsys.readouterr().out)
    for row in rows:
        assert row[1] <= 0.0
        assert row[3] == pytest.approx(0.99 * 4.0 / 3.0, abs=1e-10)


@pytest.mark.parametrize(
    "flags",
    [
        ["--a-min", "0.8", "--a-max", "0.2"],
        ["--a-min", "-0.1"],
        ["--a-max", "1.5"],
        ["--steps", "1"],
        ["--p-noise", "1.0"],
    ],
)
def test_sweep_rejects_invalid_arguments(flags):
    assert main(["--config", CFG_SWEEP, "sweep"] + flags) == 2


def test_sweep_unwritable_path(tmp_path):
    out = tmp_path / "missing" / "sweep.csv"
    assert main(["--config", CFG_SWEEP, "sweep", "--out", str(out)]) == 2


def test_optimize_command(capsys):
    assert main(["optimize"]) == 0
    values = parse_report(capsys.readouterr().out)
    assert list(values) == [
        "a_star",
        "c_lur",
        "c_lur_numeric",
        "noise_threshold",
    ]
    assert float(values["a_star"]) == pytest.approx(0.3077, abs=5e-4)
    assert float(values["a_star"]) == pytest.approx(4.0 / 13.0, abs=1e-6)
    assert float(values["c_lur"]) == pytest.approx(2.0 / 1125.0, rel=1e-9)
    assert float(values["c_lur_numeric"]) == pytest.approx(
        float(values["c_lur"]), abs=1e-12
    )
    assert float(values["noise_threshold"]) == pytest.approx(
        0.0052772, abs=1e-7
    )


def test_optimize_rejects_bad_tolerance():
    assert main(["optimize", "--tol", "0"]) == 2


def test_state_csv(capsys):
    assert main(["state", "--a", "0.5"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == CSV_PREAMBLE
    assert np.array_equal(read_csv_matrix(out), make_bound_state(0.5).rho)


def test_state_json(tmp_path):
    out = tmp_path / "state.json"
    code = main(
        [
            "state",
            "--a",
            "0.3",
            "--p-noise",
            "0.1",
            "--format",
            "json",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    text = out.read_text()
    payload = json.loads(text)
    assert payload["a"] == 0.3
    assert payload["p_noise"] == 0.1
    expected = make_state(StateParams(a=0.3, p_noise=0.1)).rho
    assert np.array_equal(read_json_matrix(text), expected)


@pytest.mark.parametrize(
    "flags", [["--a", "1.5"], ["--a", "-0.5"], ["--p-noise", "1.0"]]
)
def test_state_rejects_invalid_arguments(flags):
    assert main(["state"] + flags) == 2


def test_state_rejects_unknown_format():
    with pytest.raises(SystemExit) as excinfo:
        main(["state", "--format", "xml"])
    assert excinfo.value.code == 2


@pytest.mark.parametrize("a", ["0.3077", "0.5"])
def test_noise_flip(capsys, a):
    assert main(["noise", "--a", a]) == 0
    out = capsys.readouterr().out
    values = parse_report(out)
    threshold = float(values["noise_threshold"])
    assert float(values["noise_threshold_numeric"]) == pytest.approx(
        threshold, abs=1e-6
    )
    assert "c_lur_below" in out
    assert "c_lur_above" in out
    assert out.splitlines()[-1] == "flip confirmed"


def test_noise_without_violation(capsys):
    assert main(["noise", "--a", "0"]) == 0
    out = capsys.readouterr().out
    assert float(parse_report(out)["noise_threshold"]) == 0.0
    assert out.splitlines()[-1] == "no violation: the LUR holds without noise"


def test_noise_below_resolution(capsys):
    assert main(["noise", "--a", "1e-9"]) == 0
    out = capsys.readouterr().out
    threshold = float(parse_report(out)["noise_threshold"])
    assert threshold == pytest.approx(1.125e-18, rel=1e-6)
    assert "flip confirmed" not in out
    assert out.splitlines()[-1] == "violation below numerical resolution"


def test_noise_rejects_parameter_out_of_range():
    assert main(["noise", "--a", "1.5"]) == 2


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as excinfo:
        main(["transmogrify"])
    assert excinfo.value.code == 2


def test_invalid_config_options():
    assert main(["sweep", "SWEEP.NOT_A_KEY", "1"]) == 2
    assert main(["--config", "configs/test/missing.yaml", "sweep"]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["noise", "--a", "0.3077", "NOISE.BRACKET", "[0.0, 0.001]"],
        [
            "verify",
            "VERIFY.CHECKS",
            "['noise_threshold']",
            "VERIFY.NOISE_POINTS",
            "[1.5]",
        ],
        ["--config", CFG_SWEEP, "sweep", "OUTPUT.SIGNIFICANT_DIGITS", "0"],
        ["optimize", "OUTPUT.SIGNIFICANT_DIGITS", "0"],
    ],
)
def test_invalid_config_values(argv):
    assert main(argv) == 2


def test_log_file(tmp_path, capsys):
    log_file = tmp_path / "run.log"
    code = main(["--log-file", str(log_file), "--config", CFG_SWEEP, "sweep"])
    assert code == 0
    assert "wrote 11 rows" in log_file.read_text()
    assert capsys.readouterr().out.startswith(SWEEP_HEADER)


def test_sweep_helpers():
    np.testing.assert_array_equal(
        sweep_grid(0.0, 1.0, 3), np.array([0.0, 0.5, 1.0])
    )
    with pytest.raises(ValueError):
        sweep_grid(0.5, 0.5, 3)

    row = compute_sweep_row(0.5)
    assert row.violations() == []
    assert row.values()[0] == 0.5
    rows = run_sweep([0.25, 0.5, 0.75], num_workers=2)
    assert [r.a for r in rows] == [0.25, 0.5, 0.75]
    assert all(not r.violations() for r in rows)

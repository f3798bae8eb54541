#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Subcommands of the ``boundlur`` command line.

Every command takes the merged config and returns an exit code: 0 on
success, 1 when a verification fails and 2 on argument or I/O errors.
Results go to stdout or files, diagnostics to the logger.
"""

import functools
import sys
from multiprocessing.pool import ThreadPool
from typing import IO, List, Optional, Sequence

import attr
import numpy as np
import tqdm

from boundlur.config import Config
from boundlur.core.logging import logger
from boundlur.core.numerics import golden_section_max
from boundlur.core.registry import registry
from boundlur.core.utils import format_float, format_row
from boundlur.lur.relations import (
    K_TOTAL_SEPARABLE,
    c_lur_closed_form,
    c_lur_noisy_closed_form,
    evaluate_violation,
    noise_threshold,
    optimal_k_total,
    verify_noise_flip,
)
from boundlur.ops.qutrit import GZ_SIGN_OPTIMAL, GeneratorBasis
from boundlur.states.bound_state import (
    EXPORT_FORMATS,
    StateParams,
    export_state,
    make_state,
)
from boundlur.verification.checks import make_suite, summarize

EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

SWEEP_HEADER = (
    "a,c_lur,c_lur_closed,k_total_pairing,k_total_svd,lur_sum,mismatch7,"
    "mismatch8,min_pt_eigenvalue,noise_threshold"
)
ROW_TOLERANCE = 1e-10
STDOUT_PATH = "-"


@attr.s(auto_attribs=True, frozen=True, kw_only=True)
class SweepRow:
    r"""One grid point of the violation curve.

    ``c_lur_closed`` and the expected total correlation include the noise
    weight of the sweep: ``(1-p)^2 C_LUR(a) - p/3`` and ``(1-p) 4/3``.
    """

    a: float
    c_lur: float
    c_lur_closed: float
    k_total_pairing: float
    k_total_svd: float
    lur_sum: float
    mismatch7: float
    mismatch8: float
    min_pt_eigenvalue: float
    noise_threshold: float
    p_noise: float = 0.0

    def values(self) -> List[float]:
        return [
            self.a,
            self.c_lur,
            self.c_lur_closed,
            self.k_total_pairing,
            self.k_total_svd,
            self.lur_sum,
            self.mismatch7,
            self.mismatch8,
            self.min_pt_eigenvalue,
            self.noise_threshold,
        ]

    def violations(self, tol: float = ROW_TOLERANCE) -> List[str]:
        expected_k = (1.0 - self.p_noise) * K_TOTAL_SEPARABLE
        broken = []
        if abs(self.c_lur - self.c_lur_closed) > tol:
            broken.append("c_lur")
        if abs(self.k_total_pairing - expected_k) > tol:
            broken.append("k_total_pairing")
        if abs(self.k_total_svd - expected_k) > tol:
            broken.append("k_total_svd")
        return broken


def compute_sweep_row(
    a: float, p_noise: float = 0.0, gz_sign: float = GZ_SIGN_OPTIMAL
) -> SweepRow:
    report = evaluate_violation(a, p_noise=p_noise, gz_sign=gz_sign)
    state = make_state(StateParams(a=a, p_noise=p_noise))
    return SweepRow(
        a=report.a,
        c_lur=report.c_lur,
        c_lur_closed=c_lur_noisy_closed_form(a, p_noise),
        k_total_pairing=report.k_total,
        k_total_svd=optimal_k_total(state),
        lur_sum=report.lur_sum,
        mismatch7=report.mismatch7,
        mismatch8=report.mismatch8,
        min_pt_eigenvalue=report.min_pt_eigenvalue,
        noise_threshold=report.noise_threshold,
        p_noise=report.p_noise,
    )


def sweep_grid(a_min: float, a_max: float, steps: int) -> np.ndarray:
    if not 0.0 <= a_min < a_max <= 1.0:
        raise ValueError(
            "sweep range must satisfy 0 <= a_min < a_max <= 1, got "
            "[{}, {}]".format(a_min, a_max)
        )
    if steps < 2:
        raise ValueError("steps must be at least 2, got {}".format(steps))
    return np.linspace(a_min, a_max, steps)


def run_sweep(
    grid: Sequence[float],
    p_noise: float = 0.0,
    gz_sign: float = GZ_SIGN_OPTIMAL,
    num_workers: int = 1,
    show_progress: bool = False,
) -> List[SweepRow]:
    r"""Evaluate every grid point; rows come back in grid order whatever the
    number of workers.
    """
    compute = functools.partial(
        compute_sweep_row, p_noise=p_noise, gz_sign=gz_sign
    )
    rows = []
    with tqdm.tqdm(total=len(grid), disable=not show_progress) as pbar:
        if num_workers <= 1:
            for a in grid:
                rows.append(compute(float(a)))
                pbar.update()
        else:
            with ThreadPool(num_workers) as pool:
                for row in pool.imap(compute, [float(a) for a in grid]):
                    rows.append(row)
                    pbar.update()
    return rows


def format_sweep(rows: Sequence[SweepRow], digits: int) -> str:
    lines = [SWEEP_HEADER]
    lines.extend(format_row(row.values(), digits) for row in rows)
    return "\n".join(lines) + "\n"


def _emit(text: str, path: str, stream: Optional[IO[str]] = None) -> None:
    if not path or path == STDOUT_PATH:
        (stream or sys.stdout).write(text)
        return
    with open(path, "w", encoding="utf8", newline="\n") as f:
        f.write(text)


@registry.register_command(name="verify")
def cmd_verify(
    config: Config,
    basis: Optional[GeneratorBasis] = None,
    stream: Optional[IO[str]] = None,
) -> int:
    r"""Run the checks listed in ``VERIFY.CHECKS``, one report line each.

    :param basis: generator basis handed to the generator algebra check in
        place of the canonical one.
    """
    stream = stream or sys.stdout
    results = make_suite(config).run_all(basis=basis)
    for result in results:
        stream.write(result.format_line() + "\n")
    summary = summarize(results)
    passed = summary["num_checks"] - len(summary["failed"])
    stream.write(
        "summary {}/{} passed worst_residual={:.3e}\n".format(
            passed, summary["num_checks"], summary["worst_residual"]
        )
    )
    if summary["failed"]:
        logger.error(
            "failed checks: {}".format(", ".join(summary["failed"]))
        )
        return EXIT_FAILURE
    return EXIT_SUCCESS


@registry.register_command(name="sweep")
def cmd_sweep(config: Config, stream: Optional[IO[str]] = None) -> int:
    r"""Write the violation curve as CSV, one :ref:`SweepRow` per point."""
    sweep = config.SWEEP
    try:
        grid = sweep_grid(sweep.A_MIN, sweep.A_MAX, sweep.STEPS)
        if not 0.0 <= sweep.P_NOISE < 1.0:
            raise ValueError(
                "p_noise must lie in [0, 1), got {}".format(sweep.P_NOISE)
            )
    except ValueError as e:
        logger.error(str(e))
        return EXIT_USAGE

    rows = run_sweep(
        grid,
        p_noise=sweep.P_NOISE,
        gz_sign=config.FRAME.GZ_SIGN,
        num_workers=sweep.NUM_WORKERS,
        show_progress=config.SHOW_PROGRESS,
    )
    try:
        _emit(
            format_sweep(rows, config.OUTPUT.SIGNIFICANT_DIGITS),
            sweep.OUT,
            stream,
        )
    except OSError as e:
        logger.error("cannot write sweep to {}: {}".format(sweep.OUT, e))
        return EXIT_USAGE
    logger.info("wrote {} rows to {}".format(len(rows), sweep.OUT))

    broken = [(row.a, row.violations()) for row in rows if row.violations()]
    for a, names in broken:
        logger.error("row a={!r} breaks {}".format(a, ", ".join(names)))
    return EXIT_FAILURE if broken else EXIT_SUCCESS


@registry.register_command(name="optimize")
def cmd_optimize(config: Config, stream: Optional[IO[str]] = None) -> int:
    r"""Locate the maximum of the closed-form violation over ``a``."""
    stream = stream or sys.stdout
    digits = config.OUTPUT.SIGNIFICANT_DIGITS
    try:
        a_star, c_star = golden_section_max(
            c_lur_closed_form, 0.0, 1.0, config.OPTIMIZE.TOL
        )
    except ValueError as e:
        logger.error(str(e))
        return EXIT_USAGE

    report = evaluate_violation(a_star, gz_sign=config.FRAME.GZ_SIGN)
    for key, value in (
        ("a_star", a_star),
        ("c_lur", c_star),
        ("c_lur_numeric", report.c_lur),
        ("noise_threshold", noise_threshold(a_star)),
    ):
        stream.write("{}={}\n".format(key, format_float(value, digits)))
    return EXIT_SUCCESS


@registry.register_command(name="state")
def cmd_state(config: Config, stream: Optional[IO[str]] = None) -> int:
    r"""Export ``rho(a; p_noise)`` in the declared basis order."""
    cfg = config.STATE
    try:
        params = StateParams(a=cfg.A, p_noise=cfg.P_NOISE)
        if cfg.FORMAT not in EXPORT_FORMATS:
            raise ValueError(
                "format must be one of {}, got {!r}".format(
                    EXPORT_FORMATS, cfg.FORMAT
                )
            )
    except ValueError as e:
        logger.error(str(e))
        return EXIT_USAGE

    text = export_state(
        make_state(params),
        fmt=cfg.FORMAT,
        digits=config.OUTPUT.SIGNIFICANT_DIGITS,
        metadata={"a": params.a, "p_noise": params.p_noise},
    )
    try:
        _emit(text, cfg.OUT, stream)
    except OSError as e:
        logger.error("cannot write state to {}: {}".format(cfg.OUT, e))
        return EXIT_USAGE
    return EXIT_SUCCESS


@registry.register_command(name="noise")
def cmd_noise(config: Config, stream: Optional[IO[str]] = None) -> int:
    r"""Noise threshold of ``rho_a`` and the two-point flip check around
    it.
    """
    stream = stream or sys.stdout
    noise = config.NOISE
    digits = config.OUTPUT.SIGNIFICANT_DIGITS
    if not 0.0 <= noise.A <= 1.0:
        logger.error("a must lie in [0, 1], got {}".format(noise.A))
        return EXIT_USAGE

    report = verify_noise_flip(
        noise.A,
        delta=noise.DELTA,
        gz_sign=config.FRAME.GZ_SIGN,
        xtol=noise.XTOL,
        bracket=tuple(noise.BRACKET),
        agreement=noise.NUMERIC_AGREEMENT,
        resolution=noise.RESOLUTION,
    )
    stream.write("a={}\n".format(format_float(report.a, digits)))
    stream.write("c_lur={}\n".format(format_float(report.c_lur, digits)))
    stream.write(
        "noise_threshold={}\n".format(format_float(report.threshold, digits))
    )
    if not report.violated:
        stream.write("no violation: the LUR holds without noise\n")
        return EXIT_SUCCESS
    if not report.resolved:
        stream.write("violation below numerical resolution\n")
        logger.warning(
            "c_lur={!r} at a={!r} is within rounding of 0, the flip is not "
            "checked".format(report.c_lur, report.a)
        )
        return EXIT_SUCCESS

    stream.write(
        "noise_threshold_numeric={}\n".format(
            format_float(report.threshold_numeric, digits)
        )
    )
    for key, p, value in (
        ("below", report.p_below, report.c_below),
        ("above", report.p_above, report.c_above),
    ):
        stream.write(
            "c_lur_{}={} at p_noise={}\n".format(
                key, format_float(value, digits), format_float(p, digits)
            )
        )
    if report.flipped:
        stream.write("flip confirmed\n")
        return EXIT_SUCCESS
    stream.write("flip not confirmed\n")
    logger.error(
        "violation does not flip across p_noise={!r} (numeric {!r})".format(
            report.threshold, report.threshold_numeric
        )
    )
    return EXIT_FAILURE

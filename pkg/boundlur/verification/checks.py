#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Verification checks bundled by ``boundlur verify``.

Each check is registered under a name and selected through
``VERIFY.CHECKS``. A check returns a :ref:`CheckResult` holding the worst
residual it saw; the residual is compared against ``VERIFY.TOLERANCE``
unless the check documents another criterion.
"""

from collections import OrderedDict
from typing import Any, Dict, Iterable, List, Optional

import attr
import numpy as np
import tqdm
from scipy.stats import ortho_group

from boundlur.config import Config
from boundlur.core.logging import logger
from boundlur.core.registry import registry
from boundlur.lur.relations import (
    K_TOTAL_SEPARABLE,
    LUR_BOUND,
    MAXIMALLY_MIXED_LUR,
    c_lur,
    c_lur_closed_form,
    correlation_sum,
    lur_sum,
    make_aligned_pairing,
    make_canonical_pairing,
    mismatch,
    mismatch_closed_form,
    optimal_k_total,
    purity_uncertainty_sum,
    verify_noise_flip,
)
from boundlur.lur.witnesses import ppt_check
from boundlur.ops.qutrit import (
    GeneratorBasis,
    algebra_residuals,
    make_asymmetric_frame,
    make_canonical_basis,
    rotate_basis,
)
from boundlur.states.bound_state import (
    make_bound_state,
    maximally_entangled_state,
    purity,
    random_density_matrix,
    random_pure_state,
    sample_separable,
)

BLOCH_LENGTH_SQUARED = 4.0 / 3.0
PURE_UNCERTAINTY = 4.0
MIXED_UNCERTAINTY = 16.0 / 3.0
E_MAX_PT_EIGENVALUE = -1.0 / 3.0


@attr.s(auto_attribs=True, frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst_residual: float
    detail: str = ""

    def format_line(self) -> str:
        line = "{:<22} {} worst_residual={:.3e}".format(
            self.name, "PASS" if self.passed else "FAIL", self.worst_residual
        )
        if self.detail:
            line += " " + self.detail
        return line


class Check:
    r"""Represents one family of invariants checked by ``verify``.

    :data uuid: name under which the check reports.

    The user of this class needs to implement :ref:`run()` and
    :ref:`_get_uuid()`.
    """

    uuid: str

    def __init__(self, config: Config, *args: Any, **kwargs: Any) -> None:
        self._config = config
        self.uuid = self._get_uuid(*args, **kwargs)

    def _get_uuid(self, *args: Any, **kwargs: Any) -> str:
        raise NotImplementedError

    def run(self, **kwargs: Any) -> CheckResult:
        raise NotImplementedError

    @property
    def tolerance(self) -> float:
        return self._config.VERIFY.TOLERANCE

    def _result(
        self, worst: float, passed: Optional[bool] = None, detail: str = ""
    ) -> CheckResult:
        if passed is None:
            passed = worst <= self.tolerance
        return CheckResult(
            name=self.uuid,
            passed=bool(passed),
            worst_residual=float(worst),
            detail=detail,
        )

    def _a_grid(self, steps: Optional[int] = None) -> np.ndarray:
        steps = self._config.VERIFY.A_GRID_STEPS if steps is None else steps
        return np.linspace(0.0, 1.0, steps)

    def _rng(self) -> np.random.Generator:
        return np.random.default_rng(self._config.SEED)


class CheckSuite:
    r"""Ordered set of :ref:`Check`\ s, each identified by its uuid."""

    checks: Dict[str, Check]

    def __init__(self, checks: Iterable[Check]) -> None:
        self.checks = OrderedDict()
        for check in checks:
            assert (
                check.uuid not in self.checks
            ), "'{}' is duplicated check uuid".format(check.uuid)
            self.checks[check.uuid] = check

    def run_all(self, **kwargs: Any) -> List[CheckResult]:
        results = []
        for uuid, check in self.checks.items():
            logger.info("running check {}".format(uuid))
            results.append(check.run(**kwargs))
        return results


def make_suite(config: Config) -> CheckSuite:
    checks = []
    for name in config.VERIFY.CHECKS:
        check_type = registry.get_check(name)
        assert check_type is not None, "invalid check name {}".format(name)
        checks.append(check_type(config))
    return CheckSuite(checks)


@registry.register_check(name="generator_algebra")
class GeneratorAlgebraCheck(Check):
    r"""Traceless, trace-orthonormal generators whose squares sum to
    ``16/3 I``, for the basis under test and random rotations of it.
    """

    def _get_uuid(self, *args: Any, **kwargs: Any) -> str:
        return "generator_algebra"

    def run(
        self, basis: Optional[GeneratorBasis] = None, **kwargs: Any
    ) -> CheckResult:
        if basis is None:
            basis = make_canonical_basis()
        worst = algebra_residuals(basis).worst()
        num_rotations = self._config.VERIFY.NUM_ROTATIONS
        if num_rotations > 0:
            rotations = ortho_group.rvs(
                dim=8, size=num_rotations, random_state=self._rng()
            ).reshape(-1, 8, 8)
            for rot in rotations:
                rotated = rotate_basis(basis, rot)
                worst = max(worst, algebra_residuals(rotated).worst())
        return self._result(worst)


@registry.register_check(name="purity_identity")
class PurityIdentityCheck(Check):
    r"""``Tr(rho^2) = 1/3 + |b|^2 / 2`` and ``|b|^2 <= 4/3`` with equality
    for pure states.
    """

    def _get_uuid(self, *args: Any, **kwargs: Any) -> str:
        return "purity_identity"

    def run(self, **kwargs: Any) -> CheckResult:
        basis = make_canonical_basis()
        rng = self._rng()
        worst = 0.0
        bounded = True

        def identity_residual(rho):
            b = basis.bloch_vector(rho)
            return abs(purity(rho) - (1.0 / 3.0 + 0.5 * np.dot(b, b)))

        for _ in range(self._config.VERIFY.NUM_RANDOM_STATES):
            rho = random_density_matrix(rng, rank=int(rng.integers(1, 4)))
            b = basis.bloch_vector(rho)
            bounded &= np.dot(b, b) <= BLOCH_LENGTH_SQUARED + 1e-12
            worst = max(worst, identity_residual(rho))

            psi = random_pure_state(rng)
            b = basis.bloch_vector(np.outer(psi, psi.conj()))
            worst = max(worst, abs(np.dot(b, b) - BLOCH_LENGTH_SQUARED))

        for a in self._a_grid():
            state = make_bound_state(a)
            for side in (1, 2):
                worst = max(worst, identity_residual(state.reduced(side)))
        return self._result(worst, passed=bounded and worst <= self.tolerance)


@registry.register_check(name="uncertainty_sum")
class UncertaintySumCheck(Check):
    r"""Single qutrit uncertainty sum in ``[4, 16/3]``, equal to
    ``6 - 2 Tr(rho^2)``, saturated by pure states.
    """

    def _get_uuid(self, *args: Any, **kwargs: Any) -> str:
        return "uncertainty_sum"

    def run(self, **kwargs: Any) -> CheckResult:
        basis = make_canonical_basis()
        rng = self._rng()
        worst = 0.0
        bounded = True
        for _ in range(self._config.VERIFY.NUM_RANDOM_STATES):
            rho = random_density_matrix(rng, rank=int(rng.integers(1, 4)))
            total = purity_uncertainty_sum(rho, basis)
            bounded &= (
                PURE_UNCERTAINTY - self.tolerance
                <= total
                <= MIXED_UNCERTAINTY + self.tolerance
            )
            worst = max(worst, abs(total - (6.0 - 2.0 * purity(rho))))

            psi = random_pure_state(rng)
            pure = purity_uncertainty_sum(np.outer(psi, psi.conj()), basis)
            worst = max(worst, abs(pure - PURE_UNCERTAINTY))

        mixed = purity_uncertainty_sum(np.eye(3) / 3.0, basis)
        worst = max(worst, abs(mixed - MIXED_UNCERTAINTY))
        return self._result(worst, passed=bounded and worst <= self.tolerance)


@registry.register_check(name="asymmetric_frame")
class AsymmetricFrameCheck(Check):
    r"""Orthogonal frame mixing and a valid side 1 generator set on the
    a-grid.
    """

    def _get_uuid(self, *args: Any, **kwargs: Any) -> str:
        return "asymmetric_frame"

    def run(self, **kwargs: Any) -> CheckResult:
        gz_sign = self._config.FRAME.GZ_SIGN
        worst = 0.0
        for a in self._a_grid():
            frame = make_asymmetric_frame(a, gz_sign)
            mixing = frame.mixing
            worst = max(
                worst, float(np.max(np.abs(mixing @ mixing.T - np.eye(3))))
            )
            ops = (frame.z, frame.fxy, frame.fz)
            for i, x in enumerate(ops):
                for j, y in enumerate(ops):
                    target = 2.0 if i == j else 0.0
                    worst = max(worst, abs(np.trace(x @ y) - target))
            side1 = make_aligned_pairing(a, gz_sign).side1
            worst = max(worst, algebra_residuals(side1).worst())
        return self._result(worst)


@registry.register_check(name="correlation_total")
class CorrelationTotalCheck(Check):
    r"""The aligned pairing and the nuclear norm oracle both give 4/3."""

    def _get_uuid(self, *args: Any, **kwargs: Any) -> str:
        return "correlation_total"

    def run(self, **kwargs: Any) -> CheckResult:
        gz_sign = self._config.FRAME.GZ_SIGN
        worst = 0.0
        for a in self._a_grid():
            state = make_bound_state(a)
            pairing = make_aligned_pairing(a, gz_sign)
            worst = max(
                worst,
                abs(correlation_sum(state, pairing) - K_TOTAL_SEPARABLE),
                abs(optimal_k_total(state) - K_TOTAL_SEPARABLE),
            )
        return self._result(worst)


@registry.register_check(name="mismatch_closed_form")
class MismatchClosedFormCheck(Check):
    r"""Direct local mismatches against their closed forms.

    Magnitudes decide pass or fail; sign disagreements are a convention
    matter, reported in the detail field and logged as a warning.
    """

    def _get_uuid(self, *args: Any, **kwargs: Any) -> str:
        return "mismatch_closed_form"

    def run(self, **kwargs: Any) -> CheckResult:
        gz_sign = self._config.FRAME.GZ_SIGN
        worst = 0.0
        sign_flips = 0
        for a in self._a_grid():
            direct = mismatch(
                make_bound_state(a), make_aligned_pairing(a, gz_sign)
            )
            expected = np.array(mismatch_closed_form(a))
            worst = max(
                worst,
                float(np.max(np.abs(direct[:6]))),
                float(np.max(np.abs(np.abs(direct[6:]) - np.abs(expected)))),
            )
            if 0.0 < a < 1.0 and np.any(
                np.sign(direct[6:]) != np.sign(expected)
            ):
                sign_flips += 1
        if sign_flips:
            logger.warning(
                "mismatch signs differ from the closed form at {} grid "
                "points: convention flip".format(sign_flips)
            )
        return self._result(worst, detail="sign_flips={}".format(sign_flips))


@registry.register_check(name="violation_identity")
class ViolationIdentityCheck(Check):
    r"""``lur_sum = 32/3 - 2 K_total - |m|^2``, ``c_lur`` against its closed
    form, and a strict violation on the interior of the a-grid.
    """

    def _get_uuid(self, *args: Any, **kwargs: Any) -> str:
        return "violation_identity"

    def run(self, **kwargs: Any) -> CheckResult:
        gz_sign = self._config.FRAME.GZ_SIGN
        worst = 0.0
        violated = True
        for a in self._a_grid():
            state = make_bound_state(a)
            pairing = make_aligned_pairing(a, gz_sign)
            total = lur_sum(state, pairing)
            m = mismatch(state, pairing)
            predicted = (
                MAXIMALLY_MIXED_LUR
                - 2.0 * correlation_sum(state, pairing)
                - np.dot(m, m)
            )
            closed = c_lur_closed_form(a)
            worst = max(
                worst,
                abs(total - predicted),
                abs(c_lur(state, pairing) - closed),
                abs(total - (LUR_BOUND - LUR_BOUND * closed)),
            )
            if 0.0 < a < 1.0:
                violated &= total < LUR_BOUND
        return self._result(worst, passed=violated and worst <= self.tolerance)


@registry.register_check(name="separable_bound")
class SeparableBoundCheck(Check):
    r"""Seeded separable states never push the uncertainty sum below 8, and
    they are all PPT.

    The worst residual is the larger of the identity residual and the
    largest shortfall below 8; only shortfalls beyond
    ``VERIFY.SEPARABLE_FLOOR`` fail the check.
    """

    def _get_uuid(self, *args: Any, **kwargs: Any) -> str:
        return "separable_bound"

    def run(self, **kwargs: Any) -> CheckResult:
        config = self._config
        pairings = (
            make_aligned_pairing(
                config.VERIFY.SEPARABLE_A, config.FRAME.GZ_SIGN
            ),
            make_canonical_pairing(),
        )
        identity_worst = 0.0
        shortfall = 0.0
        lowest = np.inf
        all_ppt = True
        num_samples = config.VERIFY.NUM_SEPARABLE
        with tqdm.tqdm(
            total=num_samples, disable=not config.SHOW_PROGRESS
        ) as pbar:
            for i in range(num_samples):
                components = 1 + i % config.VERIFY.MAX_COMPONENTS
                state = sample_separable(config.SEED + i, components)
                pairing = pairings[i % len(pairings)]
                total = lur_sum(state, pairing)
                m = mismatch(state, pairing)
                predicted = (
                    MAXIMALLY_MIXED_LUR
                    - 2.0 * correlation_sum(state, pairing)
                    - np.dot(m, m)
                )
                identity_worst = max(identity_worst, abs(total - predicted))
                shortfall = max(shortfall, LUR_BOUND - total)
                lowest = min(lowest, total)
                all_ppt &= ppt_check(state).is_ppt
                pbar.update()

        passed = (
            shortfall <= config.VERIFY.SEPARABLE_FLOOR
            and identity_worst <= self.tolerance
            and all_ppt
        )
        return self._result(
            max(identity_worst, shortfall, 0.0),
            passed=passed,
            detail="min_lur_sum={:.6f}".format(lowest),
        )


@registry.register_check(name="ppt_grid")
class PptGridCheck(Check):
    r"""The bound family stays PPT on a fine grid, both partial transposes
    agree, and the maximally entangled projector fails with ``-1/3``.
    """

    def _get_uuid(self, *args: Any, **kwargs: Any) -> str:
        return "ppt_grid"

    def run(self, **kwargs: Any) -> CheckResult:
        worst = 0.0
        all_ppt = True
        for a in self._a_grid(self._config.VERIFY.PPT_GRID_STEPS):
            state = make_bound_state(a)
            report = ppt_check(state)
            other = ppt_check(state, side=1)
            all_ppt &= report.is_ppt
            worst = max(
                worst,
                -report.min_eigenvalue,
                abs(report.min_eigenvalue - other.min_eigenvalue),
            )

        control = ppt_check(maximally_entangled_state())
        worst = max(worst, abs(control.min_eigenvalue - E_MAX_PT_EIGENVALUE))
        passed = all_ppt and not control.is_ppt and worst <= self.tolerance
        return self._result(worst, passed=passed)


@registry.register_check(name="noise_threshold")
class NoiseThresholdCheck(Check):
    r"""The violation changes sign across the noise threshold, and the
    closed-form threshold matches the one found on full numerics.
    """

    def _get_uuid(self, *args: Any, **kwargs: Any) -> str:
        return "noise_threshold"

    def run(self, **kwargs: Any) -> CheckResult:
        noise = self._config.NOISE
        worst = 0.0
        flipped = True
        for a in self._config.VERIFY.NOISE_POINTS:
            report = verify_noise_flip(
                a,
                delta=noise.DELTA,
                gz_sign=self._config.FRAME.GZ_SIGN,
                xtol=noise.XTOL,
                bracket=tuple(noise.BRACKET),
                agreement=noise.NUMERIC_AGREEMENT,
                resolution=noise.RESOLUTION,
            )
            flipped &= report.flipped
            worst = max(
                worst, abs(report.threshold - report.threshold_numeric)
            )
        return self._result(worst, passed=flipped)


def summarize(results: List[CheckResult]) -> Dict[str, Any]:
    failed = [result.name for result in results if not result.passed]
    return {
        "num_checks": len(results),
        "failed": failed,
        "worst_residual": max(
            (result.worst_residual for result in results), default=0.0
        ),
    }


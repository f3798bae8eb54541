#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Correlations, local uncertainty sums and the violation measure.

For a pairing of generators ``(A_i, B_i)`` the local uncertainty sum is
``sum_i Var(A_i (x) I - I (x) B_i)``. Separable two-qutrit states keep it at
or above 8; expanding the variances gives

``lur_sum = 32/3 - 2 K_total - sum_i (<A_i> - <B_i>)^2``

with ``K_total = sum_i <A_i (x) B_i>``. The relative violation is
``c_lur = 1 - lur_sum / 8``.
"""

import math
from typing import Sequence, Tuple

import attr
import numpy as np
import scipy.optimize

from boundlur.core.logging import logger
from boundlur.core.numerics import (
    HERMITIAN_TOL,
    IMAGINARY_TOL,
    PSD_FLOOR,
    QUTRIT_DIM,
    ContractError,
    as_matrix,
    eig_hermitian,
    expectation,
    hermiticity_residual,
    kron,
    nuclear_norm,
    orthogonal_alignment,
)
from boundlur.lur.witnesses import ppt_check
from boundlur.ops.qutrit import (
    GZ_SIGN_OPTIMAL,
    NUM_GENERATORS,
    GeneratorBasis,
    make_canonical_basis,
    make_frame_basis,
    rotate_basis,
)
from boundlur.states.bound_state import (
    BipartiteState,
    make_bound_state,
    mix_with_white_noise,
)

# side 1 signs of the aligned pairing: -l_y, -Q_xy and -Q_yz
SIDE_ONE_SIGNS = (1.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 1.0)
K_TOTAL_SEPARABLE = 4.0 / 3.0
LUR_BOUND = 8.0
MAXIMALLY_MIXED_LUR = 32.0 / 3.0
NOISE_BRACKET = (0.0, 0.5)
NOISE_XTOL = 1e-12
NOISE_RTOL = 1e-12
NOISE_MAXITER = 1100
NOISE_AGREEMENT = 1e-6
NOISE_DELTA = 1e-4
# violations at or below this size are indistinguishable from rounding
NOISE_RESOLUTION = 1e-12

_IDENTITY = np.eye(QUTRIT_DIM, dtype=np.complex128)


@attr.s(auto_attribs=True, frozen=True, eq=False)
class OperatorPairing:
    r"""Eight aligned operator pairs ``(side 1, side 2)``; each side is a
    generator basis on its own.
    """

    side1: GeneratorBasis
    side2: GeneratorBasis

    @property
    def pairs(self) -> Tuple[Tuple[np.ndarray, np.ndarray], ...]:
        return tuple(zip(self.side1.lambdas, self.side2.lambdas))

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(
            "{}|{}".format(l1, l2)
            for l1, l2 in zip(self.side1.labels, self.side2.labels)
        )

    def side(self, k: int) -> GeneratorBasis:
        if k == 1:
            return self.side1
        if k == 2:
            return self.side2
        raise ValueError("side must be 1 or 2, got {}".format(k))

    def __len__(self) -> int:
        return NUM_GENERATORS


@attr.s(auto_attribs=True, frozen=True)
class ViolationReport:
    a: float
    p_noise: float
    k_total: float
    lur_sum: float
    mismatch7: float
    mismatch8: float
    c_lur: float
    min_pt_eigenvalue: float
    noise_threshold: float


@attr.s(auto_attribs=True, frozen=True)
class NoiseFlipReport:
    r"""Two-point check of the violation around the noise threshold.

    :data threshold: closed-form threshold.
    :data threshold_numeric: threshold re-derived from full numerics, 0 when
        the noiseless violation is below :ref:`resolution`.
    :data c_below: ``c_lur`` at ``threshold - min(delta, threshold / 2)``.
    :data c_above: ``c_lur`` at ``threshold + delta``.
    """

    a: float
    c_lur: float
    threshold: float
    threshold_numeric: float
    p_below: float
    p_above: float
    c_below: float
    c_above: float
    agreement: float = NOISE_AGREEMENT
    resolution: float = NOISE_RESOLUTION

    @property
    def violated(self) -> bool:
        return self.threshold > 0.0

    @property
    def resolved(self) -> bool:
        return self.c_lur > self.resolution

    @property
    def agrees(self) -> bool:
        return abs(self.threshold - self.threshold_numeric) <= self.agreement

    @property
    def flipped(self) -> bool:
        return (
            self.resolved
            and self.c_below > self.resolution
            and self.c_above < -self.resolution
            and self.agrees
        )


def _check_parameter(a: float) -> float:
    if not 0.0 <= a <= 1.0:
        raise ValueError("a must lie in [0, 1], got {}".format(a))
    return float(a)


def make_aligned_pairing(
    a: float, gz_sign: float = GZ_SIGN_OPTIMAL
) -> OperatorPairing:
    r"""Aligned pairing for ``rho_a``.

    Side 1: ``(l_x, -l_y, -Q_xy, -Q_yz, Q_zx, Z, F_xy, F_z)`` with the
    a-dependent frame; side 2: the canonical basis.
    """
    a = _check_parameter(a)
    side1 = rotate_basis(make_frame_basis(a, gz_sign), np.diag(SIDE_ONE_SIGNS))
    return OperatorPairing(side1=side1, side2=make_canonical_basis())


def make_canonical_pairing(
    signs: Sequence[float] = SIDE_ONE_SIGNS,
) -> OperatorPairing:
    r"""Canonical basis on both sides, side 1 multiplied by :p:`signs`."""
    canonical = make_canonical_basis()
    return OperatorPairing(
        side1=rotate_basis(canonical, np.diag(signs)), side2=canonical
    )


def correlation_matrix(
    state: BipartiteState,
    basis1: GeneratorBasis,
    basis2: GeneratorBasis,
    tol: float = IMAGINARY_TOL,
) -> np.ndarray:
    r"""Real 8×8 matrix ``C[i, j] = Tr(rho (lambda_i(1) (x) lambda_j(2)))``.

    :raises ContractError: if an entry has an imaginary residue above
        :p:`tol`.
    """
    blocks = np.asarray(state.rho).reshape((QUTRIT_DIM,) * 4)
    values = np.einsum(
        "abcd,ica,jdb->ij", blocks, basis1.as_array(), basis2.as_array()
    )
    residue = float(np.max(np.abs(values.imag)))
    if residue > tol:
        raise ContractError(
            "correlation matrix has imaginary residue {:.3e}".format(residue)
        )
    return values.real


def correlation_sum(
    state: BipartiteState,
    pairing: OperatorPairing,
    tol: float = IMAGINARY_TOL,
) -> float:
    r"""Total correlation ``K_total = sum_i <A_i (x) B_i>``."""
    return float(
        sum(
            expectation(state.rho, kron(op1, op2), tol)
            for op1, op2 in pairing.pairs
        )
    )


def optimal_k_total(state: BipartiteState) -> float:
    r"""Maximum of ``K_total`` over orthogonal remixes of the side 1 basis:
    the nuclear norm of the canonical correlation matrix.
    """
    canonical = make_canonical_basis()
    return nuclear_norm(correlation_matrix(state, canonical, canonical))


def optimal_alignment(
    state: BipartiteState,
) -> Tuple[OperatorPairing, float]:
    r"""A side 1 remix of the canonical basis attaining :ref:`optimal_k_total`.

    Rotating side 1 by ``O`` turns ``K_total`` into ``trace(O C)``; the
    maximizer is the orthogonal Procrustes solution of ``C``. It is unique
    only when ``C`` has no vanishing or repeated singular values.
    """
    canonical = make_canonical_basis()
    rotation, value = orthogonal_alignment(
        correlation_matrix(state, canonical, canonical)
    )
    pairing = OperatorPairing(
        side1=rotate_basis(canonical, rotation), side2=canonical
    )
    return pairing, value


def lur_sum(state: BipartiteState, pairing: OperatorPairing) -> float:
    r"""``sum_i Var(A_i (x) I - I (x) B_i)`` from direct expectation values."""
    total = 0.0
    for op1, op2 in pairing.pairs:
        delta = kron(op1, _IDENTITY) - kron(_IDENTITY, op2)
        mean = expectation(state.rho, delta)
        total += expectation(state.rho, delta @ delta) - mean * mean
    return total


def mismatch(state: BipartiteState, pairing: OperatorPairing) -> np.ndarray:
    r"""Local mismatches ``<A_i>_1 - <B_i>_2``, from the reduced states."""
    return pairing.side1.bloch_vector(
        state.reduced(1)
    ) - pairing.side2.bloch_vector(state.reduced(2))


def c_lur(state: BipartiteState, pairing: OperatorPairing) -> float:
    r"""Relative violation ``1 - lur_sum / 8``; positive iff violated."""
    return 1.0 - lur_sum(state, pairing) / LUR_BOUND


def c_lur_closed_form(a: float) -> float:
    r"""``3 a^2 (1 - a) / (4 (2 + a) (1 + 8a)^2)``."""
    a = _check_parameter(a)
    return 3.0 * a * a * (1.0 - a) / (4.0 * (2.0 + a) * (1.0 + 8.0 * a) ** 2)


def mismatch_closed_form(a: float) -> Tuple[float, float]:
    r"""The two non-vanishing mismatches of ``rho_a`` under the aligned
    pairing, for the optimal frame orientation.
    """
    a = _check_parameter(a)
    scale = (2.0 + a) * (1.0 + 8.0 * a)
    mismatch7 = -3.0 * a * math.sqrt(1.0 - a * a) / scale
    mismatch8 = math.sqrt(3.0) * a * (1.0 - a) / scale
    return mismatch7, mismatch8


def c_lur_noisy_closed_form(a: float, p_noise: float) -> float:
    r"""Violation of ``p I/9 + (1-p) rho_a``: ``(1-p)^2 C_LUR(a) - p/3``.

    White noise contributes 32/3 to the uncertainty sum and scales both the
    correlations and the mismatches of ``rho_a`` by ``(1-p)``.
    """
    if not 0.0 <= p_noise < 1.0:
        raise ValueError(
            "p_noise must lie in [0, 1), got {}".format(p_noise)
        )
    return (1.0 - p_noise) ** 2 * c_lur_closed_form(a) - p_noise / 3.0


def noise_threshold(
    a: float,
    xtol: float = NOISE_XTOL,
    bracket: Tuple[float, float] = NOISE_BRACKET,
) -> float:
    r"""Largest noise weight that keeps the violation: the root of
    ``p / (3 (1-p)^2) = C_LUR(a)`` in :p:`bracket`, by bisection.

    The left-hand side increases monotonically on ``[0, 0.5]``, so the root
    is unique. Returns 0 when there is no violation. :p:`xtol` is tightened
    to ``NOISE_RTOL`` relative to the root, which near ``a = 0`` and
    ``a = 1`` lies far below ``1e-12``.
    """
    target = c_lur_closed_form(a)
    if target <= 0.0:
        return 0.0

    def excess(p):
        return p / (3.0 * (1.0 - p) ** 2) - target

    scale = noise_threshold_exact(a)
    xtol = max(min(xtol, NOISE_RTOL * scale), np.finfo(np.float64).tiny)
    return float(
        scipy.optimize.bisect(
            excess, *bracket, xtol=xtol, maxiter=NOISE_MAXITER
        )
    )


def noise_threshold_exact(a: float) -> float:
    r"""Smaller root of ``k p^2 - (2k+1) p + k = 0`` with ``k = 3 C_LUR``.

    The roots multiply to one, so the smaller one is written as
    ``2k / ((2k+1) + sqrt(4k+1))`` to avoid cancellation.
    """
    k = 3.0 * c_lur_closed_form(a)
    if k <= 0.0:
        return 0.0
    return 2.0 * k / ((2.0 * k + 1.0) + math.sqrt(4.0 * k + 1.0))


def noise_threshold_numeric(
    a: float,
    gz_sign: float = GZ_SIGN_OPTIMAL,
    xtol: float = NOISE_XTOL,
    bracket: Tuple[float, float] = NOISE_BRACKET,
) -> float:
    r"""Noise threshold located on full numerics: the zero of
    ``c_lur(mix_with_white_noise(rho_a, p))`` under the aligned pairing.
    """
    if c_lur_closed_form(a) <= 0.0:
        return 0.0
    state = make_bound_state(a)
    pairing = make_aligned_pairing(a, gz_sign)

    def violation(p):
        return c_lur(mix_with_white_noise(state, p), pairing)

    return float(scipy.optimize.bisect(violation, *bracket, xtol=xtol))


def verify_noise_flip(
    a: float,
    delta: float = NOISE_DELTA,
    gz_sign: float = GZ_SIGN_OPTIMAL,
    xtol: float = NOISE_XTOL,
    bracket: Tuple[float, float] = NOISE_BRACKET,
    agreement: float = NOISE_AGREEMENT,
    resolution: float = NOISE_RESOLUTION,
) -> NoiseFlipReport:
    r"""Evaluate ``c_lur`` on the noisy state just below and just above the
    closed-form threshold, and re-derive the threshold numerically.

    The numeric threshold is only searched for when the noiseless violation
    exceeds :p:`resolution`; below it the sign of ``c_lur`` is rounding.
    """
    threshold = noise_threshold(a, xtol=xtol, bracket=bracket)
    state = make_bound_state(a)
    pairing = make_aligned_pairing(a, gz_sign)
    value = c_lur(state, pairing)
    numeric = 0.0
    if value > resolution:
        numeric = noise_threshold_numeric(
            a, gz_sign=gz_sign, xtol=xtol, bracket=bracket
        )
    # stays positive when the threshold is smaller than delta
    p_below = threshold - min(delta, 0.5 * threshold)
    p_above = threshold + delta
    return NoiseFlipReport(
        a=float(a),
        c_lur=value,
        threshold=threshold,
        threshold_numeric=numeric,
        p_below=p_below,
        p_above=p_above,
        c_below=c_lur(mix_with_white_noise(state, p_below), pairing),
        c_above=c_lur(mix_with_white_noise(state, p_above), pairing),
        agreement=agreement,
        resolution=resolution,
    )


def purity_uncertainty_sum(
    rho_local: np.ndarray,
    basis: GeneratorBasis,
    tol: float = HERMITIAN_TOL,
) -> float:
    r"""Single qutrit uncertainty sum ``sum_i Var(lambda_i)``.

    Equals ``16/3 - |b|^2 = 6 - 2 Tr(rho^2)``; it is at least 4 and pure
    states reach 4.

    :raises ContractError: if :p:`rho_local` is not a 3×3 density matrix.
    """
    try:
        rho = as_matrix(rho_local, QUTRIT_DIM)
    except ValueError as e:
        raise ContractError(str(e))
    if hermiticity_residual(rho) > tol:
        raise ContractError("local state is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise ContractError("local state does not have unit trace")
    if eig_hermitian(rho, tol=tol).min() < -PSD_FLOOR:
        raise ContractError("local state is not positive semidefinite")

    total = 0.0
    for op in basis:
        mean = expectation(rho, op)
        total += expectation(rho, op @ op) - mean * mean
    return total


def mismatch_sign_convention(
    a: float, gz_sign: float = GZ_SIGN_OPTIMAL
) -> bool:
    r"""Compare the signs of the direct mismatches with the closed forms.

    A disagreement is only a convention flip, so it is logged as a warning
    and returned as :py:`False`.
    """
    direct = mismatch(make_bound_state(a), make_aligned_pairing(a, gz_sign))
    expected = mismatch_closed_form(a)
    agree = all(
        np.sign(got) == np.sign(want)
        for got, want in zip(direct[6:], expected)
    )
    if not agree:
        logger.warning(
            "mismatch signs at a={!r} are ({:+.3e}, {:+.3e}), closed form "
            "gives ({:+.3e}, {:+.3e}): convention flip".format(
                a, direct[6], direct[7], expected[0], expected[1]
            )
        )
    return agree


def evaluate_violation(
    a: float, p_noise: float = 0.0, gz_sign: float = GZ_SIGN_OPTIMAL
) -> ViolationReport:
    r"""All scalar diagnostics of ``rho(a; p_noise)`` under the aligned
    pairing.
    """
    state = mix_with_white_noise(make_bound_state(a), p_noise)
    pairing = make_aligned_pairing(a, gz_sign)
    mismatches = mismatch(state, pairing)
    return ViolationReport(
        a=float(a),
        p_noise=float(p_noise),
        k_total=correlation_sum(state, pairing),
        lur_sum=lur_sum(state, pairing),
        mismatch7=float(mismatches[6]),
        mismatch8=float(mismatches[7]),
        c_lur=c_lur(state, pairing),
        min_pt_eigenvalue=ppt_check(state).min_eigenvalue,
        noise_threshold=noise_threshold(a),
    )

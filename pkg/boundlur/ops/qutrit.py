#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Spin-1 operators, the eight-generator qutrit basis and the asymmetric
frame.

Conventions
-----------
The single qutrit basis is ordered ``(|+1>, |0>, |-1>)`` at indices
``(0, 1, 2)`` so that ``l_z = diag(1, 0, -1)``. ``l_x`` and ``l_y`` follow
the Condon-Shortley phase choice (``l_y`` carries ``+i/sqrt(2)`` below the
diagonal).

The asymmetric frame remixes ``(l_z, S_xy, G_z)`` with an orthogonal 3×3
matrix. Inside that remix ``G_z`` enters with the orientation ``gz_sign``.
With the ordering above only ``gz_sign = -1`` reaches the maximal total
correlation of 4/3 for the bound state family, and it reproduces the signs
of both non-vanishing local mismatches; ``gz_sign = +1`` is the opposite
orientation, kept selectable through ``FRAME.GZ_SIGN``. If sign
conventions ever disagree, this is the single lever to flip.
"""

import math
from typing import Iterator, Optional, Sequence, Tuple

import attr
import numpy as np

from boundlur.core.numerics import ContractError, frozen, is_orthogonal

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

BASIS_LABELS = ("+1", "0", "-1")
CANONICAL_LABELS = (
    "l_x",
    "l_y",
    "Q_xy",
    "Q_yz",
    "Q_zx",
    "l_z",
    "S_xy",
    "G_z",
)
FRAME_LABELS = ("l_x", "l_y", "Q_xy", "Q_yz", "Q_zx", "Z", "F_xy", "F_z")
NUM_GENERATORS = 8
GENERATOR_NORM = 2.0
SQUARE_SUM = 16.0 / 3.0

GZ_SIGN_OPTIMAL = -1.0
GZ_SIGN_LITERAL = 1.0

ROTATION_TOL = 1e-10


@attr.s(auto_attribs=True, frozen=True, eq=False)
class SpinOperators:
    lx: np.ndarray
    ly: np.ndarray
    lz: np.ndarray


@attr.s(auto_attribs=True, frozen=True, eq=False)
class Quadratics:
    qxy: np.ndarray
    qyz: np.ndarray
    qzx: np.ndarray
    sxy: np.ndarray
    gz: np.ndarray


@attr.s(auto_attribs=True, frozen=True, eq=False)
class GeneratorBasis:
    r"""Ordered set of eight traceless Hermitian 3×3 operators.

    :data lambdas: the operators, in order.
    :data labels: one name per operator.
    """

    lambdas: Tuple[np.ndarray, ...] = attr.ib(converter=tuple)
    labels: Tuple[str, ...] = attr.ib(converter=tuple)

    @lambdas.validator
    def _check_lambdas(self, attribute, value):
        if len(value) != NUM_GENERATORS:
            raise ValueError(
                "a generator basis holds {} operators, got {}".format(
                    NUM_GENERATORS, len(value)
                )
            )
        for op in value:
            if np.shape(op) != (3, 3):
                raise ValueError("generators must be 3x3 matrices")

    @labels.validator
    def _check_labels(self, attribute, value):
        if len(value) != NUM_GENERATORS:
            raise ValueError("expected one label per generator")

    def __len__(self) -> int:
        return NUM_GENERATORS

    def __getitem__(self, index: int) -> np.ndarray:
        return self.lambdas[index]

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.lambdas)

    def as_array(self) -> np.ndarray:
        r"""Stack of shape (8, 3, 3)."""
        return np.stack(self.lambdas)

    def gram(self) -> np.ndarray:
        r"""Real 8×8 matrix of ``Tr(lambda_i lambda_j)``."""
        stack = self.as_array()
        return np.einsum("iab,jba->ij", stack, stack).real

    def square_sum(self) -> np.ndarray:
        stack = self.as_array()
        return np.einsum("iab,ibc->ac", stack, stack)

    def bloch_vector(self, rho: np.ndarray) -> np.ndarray:
        r"""Expectation values ``Tr(rho lambda_i)`` of a 3×3 state."""
        values = np.einsum("ab,iba->i", np.asarray(rho), self.as_array())
        if np.max(np.abs(values.imag)) > 1e-12:
            raise ContractError("Bloch vector has an imaginary residue")
        return values.real


@attr.s(auto_attribs=True, frozen=True, eq=False)
class AlgebraResiduals:
    r"""Worst deviations from the generator relations."""

    trace: float
    gram: float
    square_sum: float
    hermitian: float

    def worst(self) -> float:
        return max(self.trace, self.gram, self.square_sum, self.hermitian)


@attr.s(auto_attribs=True, frozen=True, eq=False)
class AsymmetricFrame:
    r"""The a-dependent side 1 replacement of ``(l_z, S_xy, G_z)``.

    :data mixing: rows give ``Z``, ``F_xy`` and ``F_z`` in the basis
        ``(l_z, S_xy, G_z)``.
    """

    a: float
    z: np.ndarray
    fxy: np.ndarray
    fz: np.ndarray
    mixing: np.ndarray
    gz_sign: float = GZ_SIGN_OPTIMAL


def make_spin_operators() -> SpinOperators:
    lx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.complex128)
    ly = np.array(
        [[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=np.complex128
    )
    lz = np.diag([1.0, 0.0, -1.0]).astype(np.complex128)
    return SpinOperators(
        lx=frozen(lx / SQRT2), ly=frozen(ly / SQRT2), lz=frozen(lz)
    )


def make_quadratics(s: Optional[SpinOperators] = None) -> Quadratics:
    r"""Quadratic functions of the spin components.

    ``Q_ij = l_i l_j + l_j l_i``, ``S_xy = l_x^2 - l_y^2`` and
    ``G_z = sqrt(3) (l_z^2 - 2/3)``.
    """
    if s is None:
        s = make_spin_operators()

    def anticommutator(x, y):
        return x @ y + y @ x

    identity = np.eye(3, dtype=np.complex128)
    return Quadratics(
        qxy=frozen(anticommutator(s.lx, s.ly)),
        qyz=frozen(anticommutator(s.ly, s.lz)),
        qzx=frozen(anticommutator(s.lz, s.lx)),
        sxy=frozen(s.lx @ s.lx - s.ly @ s.ly),
        gz=frozen(SQRT3 * (s.lz @ s.lz - (2.0 / 3.0) * identity)),
    )


def make_canonical_basis() -> GeneratorBasis:
    r"""The basis ``(l_x, l_y, Q_xy, Q_yz, Q_zx, l_z, S_xy, G_z)``.

    The five operators that only correlate with their own partner come
    first; ``l_z``, ``S_xy`` and ``G_z`` close the list.
    """
    s = make_spin_operators()
    q = make_quadratics(s)
    return GeneratorBasis(
        lambdas=(s.lx, s.ly, q.qxy, q.qyz, q.qzx, s.lz, q.sxy, q.gz),
        labels=CANONICAL_LABELS,
    )


def algebra_residuals(basis: GeneratorBasis) -> AlgebraResiduals:
    stack = basis.as_array()
    traces = np.einsum("iaa->i", stack)
    hermitian = max(
        float(np.max(np.abs(op - op.conj().T))) for op in basis.lambdas
    )
    return AlgebraResiduals(
        trace=float(np.max(np.abs(traces))),
        gram=float(
            np.max(np.abs(basis.gram() - GENERATOR_NORM * np.eye(8)))
        ),
        square_sum=float(
            np.max(np.abs(basis.square_sum() - SQUARE_SUM * np.eye(3)))
        ),
        hermitian=hermitian,
    )


def frame_mixing(a: float, gz_sign: float = GZ_SIGN_OPTIMAL) -> np.ndarray:
    r"""Orthogonal rows of ``(Z, F_xy, F_z)`` over ``(l_z, S_xy, G_z)``."""
    if not 0.0 <= a <= 1.0:
        raise ValueError("a must lie in [0, 1], got {}".format(a))
    if gz_sign not in (GZ_SIGN_OPTIMAL, GZ_SIGN_LITERAL):
        raise ValueError("gz_sign must be +1 or -1, got {}".format(gz_sign))

    c = (1.0 + 2.0 * a) / (2.0 + a)
    r = math.sqrt(3.0 * (1.0 - a * a)) / (2.0 + a)
    g = gz_sign
    # (sqrt(3)/2) l_z - g/2 G_z, the partner of Z inside the remix
    p = np.array([SQRT3 / 2.0, 0.0, -g / 2.0])
    sxy = np.array([0.0, 1.0, 0.0])
    return np.stack(
        [
            np.array([0.5, 0.0, g * SQRT3 / 2.0]),
            c * sxy + r * p,
            c * p - r * sxy,
        ]
    )


def make_asymmetric_frame(
    a: float, gz_sign: float = GZ_SIGN_OPTIMAL
) -> AsymmetricFrame:
    r"""Frame ``(Z, F_xy, F_z)`` for the state parameter :p:`a`.

    With ``c = (1+2a)/(2+a)``, ``r = sqrt(3(1-a^2))/(2+a)`` and
    ``P = (sqrt(3)/2) l_z - (g/2) G_z``:
    ``Z = l_z/2 + g (sqrt(3)/2) G_z``, ``F_xy = c S_xy + r P`` and
    ``F_z = c P - r S_xy``.

    :param gz_sign: orientation ``g`` of ``G_z``, see the module docstring.
    :raises ValueError: if :p:`a` is outside ``[0, 1]``.
    """
    mixing = frame_mixing(a, gz_sign)
    s = make_spin_operators()
    q = make_quadratics(s)
    stack = np.stack([s.lz, q.sxy, q.gz])
    z, fxy, fz = np.einsum("ij,jab->iab", mixing, stack)
    return AsymmetricFrame(
        a=float(a),
        z=frozen(z),
        fxy=frozen(fxy),
        fz=frozen(fz),
        mixing=frozen(mixing),
        gz_sign=float(gz_sign),
    )


def make_frame_basis(
    a: float, gz_sign: float = GZ_SIGN_OPTIMAL
) -> GeneratorBasis:
    r"""Canonical basis with ``(l_z, S_xy, G_z)`` replaced by the frame."""
    frame = make_asymmetric_frame(a, gz_sign)
    canonical = make_canonical_basis()
    return GeneratorBasis(
        lambdas=canonical.lambdas[:5] + (frame.z, frame.fxy, frame.fz),
        labels=FRAME_LABELS,
    )


def _rotated_labels(
    labels: Sequence[str], rot: np.ndarray
) -> Tuple[str, ...]:
    rotated = []
    for i, row in enumerate(rot):
        support = np.flatnonzero(np.abs(row) > ROTATION_TOL)
        if len(support) == 1 and abs(abs(row[support[0]]) - 1.0) <= 1e-12:
            sign = "-" if row[support[0]] < 0 else ""
            rotated.append(sign + labels[support[0]])
        else:
            rotated.append("rot{}".format(i + 1))
    return tuple(rotated)


def rotate_basis(
    basis: GeneratorBasis, rot: np.ndarray, tol: float = ROTATION_TOL
) -> GeneratorBasis:
    r"""``lambda'_i = sum_j rot[i, j] lambda_j`` for an orthogonal :p:`rot`.

    Signed permutations keep readable labels (``-l_y``); any other rotation
    labels its operators ``rot1`` ... ``rot8``.

    :raises ValueError: if :p:`rot` is not a real orthogonal 8×8 matrix.
    """
    rot = np.asarray(rot)
    if rot.shape != (NUM_GENERATORS, NUM_GENERATORS):
        raise ValueError("rotation must be 8x8, got {}".format(rot.shape))
    if not is_orthogonal(rot, tol):
        raise ValueError("rotation is not orthogonal within {}".format(tol))
    rot = rot.astype(np.float64)
    lambdas = np.einsum("ij,jab->iab", rot, basis.as_array())
    return GeneratorBasis(
        lambdas=tuple(frozen(op) for op in lambdas),
        labels=_rotated_labels(basis.labels, rot),
    )

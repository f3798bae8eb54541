#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Dense linear algebra and scalar optimization primitives.

Every matrix handled by the toolkit is a small dense complex128 array of
dimension 3 (one qutrit), 8 (correlation matrices) or 9 (two qutrits). A
9-dimensional matrix is read as 3×3 blocks of 3×3 sub-blocks, side 1 being
the major (block) index, so that ``m.reshape(3, 3, 3, 3)[i1, i2, j1, j2]``
is the entry ``<i1 i2| m |j1 j2>``.

All functions are pure. Returned arrays are fresh and may be shared between
threads.
"""

import math
from typing import Callable, Optional, Tuple

import attr
import numpy as np
import scipy.linalg

HERMITIAN_TOL = 1e-12
PSD_FLOOR = 1e-12
RECONSTRUCTION_TOL = 1e-10
IMAGINARY_TOL = 1e-12

QUTRIT_DIM = 3
PAIR_DIM = QUTRIT_DIM * QUTRIT_DIM

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQUARE = (3.0 - math.sqrt(5.0)) / 2.0


class DimensionError(ValueError):
    r"""A matrix does not have the dimension an operation requires."""


class ContractError(ValueError):
    r"""An input violates a numerical contract (Hermiticity, real-valued
    expectation, valid density matrix).
    """


@attr.s(auto_attribs=True, frozen=True, eq=False)
class HermitianSpectrum:
    r"""Eigen decomposition of a Hermitian matrix.

    :data eigenvalues: real eigenvalues sorted ascending.
    :data eigenvectors: columns matching :ref:`eigenvalues`, only present
        when requested.
    """

    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def min(self) -> float:
        return float(self.eigenvalues[0])


def as_matrix(m, dim: Optional[int] = None) -> np.ndarray:
    r"""Square complex128 copy of :p:`m`, optionally of fixed dimension."""
    arr = np.array(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(
            "expected a square matrix, got shape {}".format(arr.shape)
        )
    if dim is not None and arr.shape[0] != dim:
        raise DimensionError(
            "expected dimension {}, got {}".format(dim, arr.shape[0])
        )
    return arr


def frozen(m: np.ndarray) -> np.ndarray:
    arr = np.array(m)
    arr.setflags(write=False)
    return arr


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    r"""Kronecker product; block ``(i, j)`` of the result is ``a[i, j] b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def _blocks(m: np.ndarray) -> np.ndarray:
    return as_matrix(m, PAIR_DIM).reshape(
        QUTRIT_DIM, QUTRIT_DIM, QUTRIT_DIM, QUTRIT_DIM
    )


def partial_transpose_b(m: np.ndarray) -> np.ndarray:
    r"""Transpose every 3×3 sub-block, i.e. transpose the side 2 factor.

    :raises DimensionError: if :p:`m` is not 9×9.
    """
    return _blocks(m).transpose(0, 3, 2, 1).reshape(PAIR_DIM, PAIR_DIM)


def partial_transpose_a(m: np.ndarray) -> np.ndarray:
    r"""Transpose the block structure, i.e. transpose the side 1 factor."""
    return _blocks(m).transpose(2, 1, 0, 3).reshape(PAIR_DIM, PAIR_DIM)


def partial_trace(m: np.ndarray, side: int) -> np.ndarray:
    r"""Reduce a 9×9 matrix to the 3×3 matrix of the kept :p:`side`.

    :param side: 1 keeps the first qutrit, 2 keeps the second.
    :raises DimensionError: if :p:`m` is not 9×9.
    """
    blocks = _blocks(m)
    if side == 1:
        return np.einsum("ijkj->ik", blocks)
    if side == 2:
        return np.einsum("ijil->jl", blocks)
    raise ValueError("side must be 1 or 2, got {}".format(side))


def hermiticity_residual(m: np.ndarray) -> float:
    arr = as_matrix(m)
    return float(np.max(np.abs(arr - arr.conj().T)))


def eig_hermitian(
    m: np.ndarray, tol: float = HERMITIAN_TOL, vectors: bool = False
) -> HermitianSpectrum:
    r"""Spectrum of a Hermitian matrix, eigenvalues ascending.

    LAPACK ``heevr`` through :py:`scipy.linalg.eigh` is deterministic for a
    given build, which keeps CSV output byte-stable.

    :param tol: max-norm bound on ``m - m^H``.
    :param vectors: also return eigenvectors; the reconstruction residual is
        then checked against ``1e-10``.
    :raises ContractError: if :p:`m` is not Hermitian within :p:`tol`.
    """
    arr = as_matrix(m)
    residual = hermiticity_residual(arr)
    if residual > tol:
        raise ContractError(
            "matrix is not Hermitian: max |m - m^H| = {:.3e}".format(residual)
        )
    arr = 0.5 * (arr + arr.conj().T)
    if not vectors:
        return HermitianSpectrum(
            eigenvalues=scipy.linalg.eigh(arr, eigvals_only=True)
        )

    eigenvalues, eigenvectors = scipy.linalg.eigh(arr)
    reconstruction = (eigenvectors * eigenvalues) @ eigenvectors.conj().T
    assert (
        np.max(np.abs(reconstruction - arr)) <= RECONSTRUCTION_TOL
    ), "eigen decomposition failed to reconstruct its input"
    return HermitianSpectrum(
        eigenvalues=eigenvalues, eigenvectors=eigenvectors
    )


def min_eigenvalue(m: np.ndarray, tol: float = HERMITIAN_TOL) -> float:
    return eig_hermitian(m, tol=tol).min()


def expectation(
    rho: np.ndarray, op: np.ndarray, tol: float = IMAGINARY_TOL
) -> float:
    r"""Real expectation value ``Tr(rho op)``.

    :raises ContractError: if the imaginary residue exceeds :p:`tol`.
    """
    value = np.trace(np.asarray(rho) @ np.asarray(op))
    if abs(value.imag) > tol:
        raise ContractError(
            "expectation value has imaginary residue {:.3e}".format(
                value.imag
            )
        )
    return float(value.real)


def singular_values(m: np.ndarray, tol: float = IMAGINARY_TOL) -> np.ndarray:
    r"""Singular values of a real matrix, sorted descending."""
    arr = np.asarray(m)
    if np.iscomplexobj(arr):
        if np.max(np.abs(arr.imag), initial=0.0) > tol:
            raise ContractError("singular_values expects a real matrix")
        arr = arr.real
    if arr.ndim != 2:
        raise DimensionError(
            "expected a matrix, got shape {}".format(arr.shape)
        )
    return scipy.linalg.svdvals(arr.astype(np.float64))


def nuclear_norm(m: np.ndarray) -> float:
    return float(np.sum(singular_values(m)))


def orthogonal_alignment(m: np.ndarray) -> Tuple[np.ndarray, float]:
    r"""Orthogonal ``O`` maximizing ``trace(O @ m)``, reflections included.

    With ``m = U S V^T`` the maximizer is ``V U^T`` and the maximum is the
    nuclear norm of :p:`m`.

    :return: the maximizer and the attained maximum.
    """
    arr = np.asarray(m, dtype=np.float64)
    u, s, vt = scipy.linalg.svd(arr)
    rotation = vt.T @ u.T
    return rotation, float(np.sum(s))


def is_orthogonal(rot: np.ndarray, tol: float) -> bool:
    arr = np.asarray(rot)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        return False
    if np.iscomplexobj(arr):
        return False
    identity = np.eye(arr.shape[0])
    return bool(np.max(np.abs(arr @ arr.T - identity)) <= tol)


def golden_section_max(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-8
) -> Tuple[float, float]:
    r"""Maximize a unimodal :p:`f` on ``[lo, hi]`` by golden section search.

    The bracket shrinks by ``1/phi`` per evaluation until it is narrower
    than :p:`tol`; the midpoint of the final bracket is returned.

    :return: ``(argmax, f(argmax))``.
    :raises ValueError: if ``lo >= hi`` or ``tol <= 0``.
    """
    if not lo < hi:
        raise ValueError(
            "golden_section_max needs lo < hi, got [{}, {}]".format(lo, hi)
        )
    if tol <= 0:
        raise ValueError("tol must be positive, got {}".format(tol))

    a, b = float(lo), float(hi)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)

    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)
    for _ in range(n):
        h *= INV_PHI
        if yc > yd:
            b = d
            d = c
            yd = yc
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            d = a + INV_PHI * h
            yd = f(d)

    x = 0.5 * (a + b)
    return x, f(x)

#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Two-qutrit states: the bound entangled family, its white-noise mixtures,
separable fixtures and the flat-file export format.

The product basis ``|m1; m2>`` sits at index ``3*idx(m1) + idx(m2)`` with
``idx(+1) = 0``, ``idx(0) = 1`` and ``idx(-1) = 2``.
"""

import json
import math
from typing import Any, Dict, Optional, Tuple

import attr
import numpy as np
from scipy.stats import unitary_group

from boundlur.core.numerics import (
    HERMITIAN_TOL,
    PAIR_DIM,
    PSD_FLOOR,
    QUTRIT_DIM,
    ContractError,
    as_matrix,
    eig_hermitian,
    frozen,
    hermiticity_residual,
    kron,
    partial_trace,
)
from boundlur.core.utils import (
    SIGNIFICANT_DIGITS,
    PreciseFloatJSONEncoder,
    format_row,
    noise_weight_validator,
    unit_interval_validator,
)
from boundlur.ops.qutrit import BASIS_LABELS, GeneratorBasis

MAGNETIC_INDEX = {1: 0, 0: 1, -1: 2}
BASIS_ORDER = tuple(
    "|{};{}>".format(m1, m2) for m1 in BASIS_LABELS for m2 in BASIS_LABELS
)
INDEX_CONVENTION = (
    "basis: |+1>,|0>,|-1> per side; index = 3*idx(m1)+idx(m2)"
)
CSV_PREAMBLE = "# " + INDEX_CONVENTION
MAX_SEPARABLE_COMPONENTS = 9
EXPORT_FORMATS = ("csv", "json")


def product_index(m1: int, m2: int) -> int:
    r"""Index of ``|m1; m2>`` in the two-qutrit basis."""
    try:
        return QUTRIT_DIM * MAGNETIC_INDEX[m1] + MAGNETIC_INDEX[m2]
    except KeyError:
        raise ValueError(
            "magnetic quantum numbers must be +1, 0 or -1, got "
            "({}, {})".format(m1, m2)
        )


def _state_matrix(rho) -> np.ndarray:
    return frozen(as_matrix(rho, PAIR_DIM))


@attr.s(auto_attribs=True, frozen=True, eq=False)
class BipartiteState:
    r"""Validated 9×9 density matrix of two qutrits.

    :data rho: the density matrix, read-only.
    :data basis_order: labels of the product basis, side 1 major.
    :data label: free-form description used in reports.
    """

    rho: np.ndarray = attr.ib(converter=_state_matrix)
    basis_order: Tuple[str, ...] = BASIS_ORDER
    label: str = ""

    def __attrs_post_init__(self):
        self.validate()

    def validate(self, tol: float = HERMITIAN_TOL) -> None:
        r"""Check Hermiticity, unit trace and positivity.

        :raises ContractError: on the first violated property.
        """
        residual = hermiticity_residual(self.rho)
        if residual > tol:
            raise ContractError(
                "density matrix is not Hermitian ({:.3e})".format(residual)
            )
        trace = np.trace(self.rho).real
        if abs(trace - 1.0) > tol:
            raise ContractError(
                "density matrix has trace {!r}, expected 1".format(trace)
            )
        lowest = eig_hermitian(self.rho, tol=tol).min()
        if lowest < -PSD_FLOOR:
            raise ContractError(
                "density matrix has eigenvalue {:.3e} < 0".format(lowest)
            )

    def reduced(self, side: int) -> np.ndarray:
        return partial_trace(self.rho, side)

    def purity(self) -> float:
        return purity(self.rho)


@attr.s(auto_attribs=True, frozen=True, kw_only=True)
class StateParams:
    r"""Parameters of ``rho(a; p_noise)``.

    :data a: family parameter in ``[0, 1]``.
    :data p_noise: white-noise weight in ``[0, 1)``.
    """

    a: float = attr.ib(converter=float, validator=unit_interval_validator)
    p_noise: float = attr.ib(
        default=0.0, converter=float, validator=noise_weight_validator
    )


def _ket(*amplitudes: Tuple[Tuple[int, int], float]) -> np.ndarray:
    psi = np.zeros(PAIR_DIM, dtype=np.complex128)
    for (m1, m2), amplitude in amplitudes:
        psi[product_index(m1, m2)] += amplitude
    return psi


def _projector(psi: np.ndarray) -> np.ndarray:
    return np.outer(psi, psi.conj())


def maximally_entangled_vector() -> np.ndarray:
    amplitude = 1.0 / math.sqrt(3.0)
    return _ket(
        ((-1, -1), amplitude), ((0, 0), amplitude), ((1, 1), amplitude)
    )


def maximally_entangled_state() -> BipartiteState:
    r"""Projector on ``(|-1;-1> + |0;0> + |+1;+1>)/sqrt(3)``."""
    return BipartiteState(
        rho=_projector(maximally_entangled_vector()), label="E_max"
    )


def make_bound_state(a: float) -> BipartiteState:
    r"""The bound entangled state ``rho_a`` written in the ``l_z`` basis.

    ``rho_a = [a P_5 + 3a |E><E| + |Pi><Pi|] / (1 + 8a)`` where ``P_5`` sums
    the projectors on ``|-1;0>``, ``|-1;+1>``, ``|0;-1>``, ``|0;+1>`` and
    ``|+1;0>``, ``|E>`` is the maximally entangled vector and
    ``|Pi> = sqrt((1+a)/2) |+1;-1> + sqrt((1-a)/2) |+1;+1>``.

    :raises ValueError: if :p:`a` is outside ``[0, 1]``.
    """
    params = StateParams(a=a)
    a = params.a
    norm = 1.0 + 8.0 * a

    rho = np.zeros((PAIR_DIM, PAIR_DIM), dtype=np.complex128)
    for m1, m2 in ((-1, 0), (-1, 1), (0, -1), (0, 1), (1, 0)):
        rho += a * _projector(_ket(((m1, m2), 1.0)))
    rho += 3.0 * a * _projector(maximally_entangled_vector())
    pi = _ket(
        ((1, -1), math.sqrt((1.0 + a) / 2.0)),
        ((1, 1), math.sqrt((1.0 - a) / 2.0)),
    )
    rho += _projector(pi)
    return BipartiteState(rho=rho / norm, label="rho_a(a={!r})".format(a))


def mix_with_white_noise(
    state: BipartiteState, p_noise: float
) -> BipartiteState:
    r"""``p_noise I/9 + (1 - p_noise) rho``.

    :raises ValueError: if :p:`p_noise` is outside ``[0, 1)``.
    """
    if not 0.0 <= p_noise < 1.0:
        raise ValueError(
            "p_noise must lie in [0, 1), got {}".format(p_noise)
        )
    if p_noise == 0.0:
        return state
    rho = p_noise * np.eye(PAIR_DIM) / PAIR_DIM + (1.0 - p_noise) * state.rho
    label = "{}+noise({!r})".format(state.label, p_noise)
    return BipartiteState(rho=rho, basis_order=state.basis_order, label=label)


def make_state(params: StateParams) -> BipartiteState:
    return mix_with_white_noise(make_bound_state(params.a), params.p_noise)


def product_state(rho1: np.ndarray, rho2: np.ndarray) -> BipartiteState:
    return BipartiteState(rho=kron(rho1, rho2), label="product")


def random_pure_state(rng: np.random.Generator) -> np.ndarray:
    r"""Haar-random qutrit vector, the first column of a Haar unitary."""
    return unitary_group.rvs(QUTRIT_DIM, random_state=rng)[:, 0]


def random_density_matrix(
    rng: np.random.Generator, rank: Optional[int] = None
) -> np.ndarray:
    r"""Random 3×3 density matrix ``G G^H / Tr(G G^H)`` from a complex
    Gaussian ``3 × rank`` matrix ``G``.
    """
    rank = QUTRIT_DIM if rank is None else rank
    if not 1 <= rank <= QUTRIT_DIM:
        raise ValueError("rank must lie in [1, 3], got {}".format(rank))
    g = rng.standard_normal((QUTRIT_DIM, rank)) + 1j * rng.standard_normal(
        (QUTRIT_DIM, rank)
    )
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def sample_separable(seed: int, components: int) -> BipartiteState:
    r"""Seeded separable state ``sum_k p_k |a_k><a_k| (x) |b_k><b_k|``.

    Weights are flat on the simplex (Dirichlet with unit concentration) and
    every local factor is a Haar-random pure state. The generator is local
    to the call, so distinct seeds can be sampled concurrently.

    :raises ValueError: if :p:`components` is outside ``[1, 9]``.
    """
    if not 1 <= components <= MAX_SEPARABLE_COMPONENTS:
        raise ValueError(
            "components must lie in [1, {}], got {}".format(
                MAX_SEPARABLE_COMPONENTS, components
            )
        )
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(components))
    rho = np.zeros((PAIR_DIM, PAIR_DIM), dtype=np.complex128)
    for weight in weights:
        psi1 = random_pure_state(rng)
        psi2 = random_pure_state(rng)
        rho += weight * kron(_projector(psi1), _projector(psi2))
    # Dirichlet weights sum to one only up to rounding
    rho /= np.trace(rho).real
    return BipartiteState(
        rho=rho, label="separable(seed={}, k={})".format(seed, components)
    )


def purity(rho: np.ndarray) -> float:
    r"""``Tr(rho^2)``."""
    rho = np.asarray(rho)
    return float(np.einsum("ab,ba->", rho, rho).real)


def local_bloch(
    state: BipartiteState, side: int, basis: GeneratorBasis
) -> np.ndarray:
    r"""Generalized Bloch vector ``Tr(rho_side lambda_i)`` of one side."""
    return basis.bloch_vector(state.reduced(side))


def export_state(
    state: BipartiteState,
    fmt: str = "csv",
    digits: int = SIGNIFICANT_DIGITS,
    metadata: Optional[Dict[str, Any]] = None,
) -> str:
    r"""Serialize the density matrix.

    ``csv``: the index convention preamble, then nine rows of nine
    ``re,im`` pairs. ``json``: an object holding the index convention, the
    basis labels, :p:`metadata` and the matrix as ``[re, im]`` pairs.
    """
    if fmt not in EXPORT_FORMATS:
        raise ValueError(
            "format must be one of {}, got {!r}".format(EXPORT_FORMATS, fmt)
        )
    rho = np.asarray(state.rho)
    if fmt == "csv":
        lines = [CSV_PREAMBLE]
        for row in rho:
            pairs = np.stack([row.real, row.imag], axis=-1).ravel()
            lines.append(format_row(pairs, digits))
        return "\n".join(lines) + "\n"

    payload = {"basis": INDEX_CONVENTION, "basis_order": list(BASIS_ORDER)}
    payload.update(metadata or {})
    payload["rho"] = rho
    return (
        json.dumps(payload, cls=PreciseFloatJSONEncoder, digits=digits) + "\n"
    )


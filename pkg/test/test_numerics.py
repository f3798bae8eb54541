#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import numpy as np
import pytest
from scipy.stats import ortho_group

from boundlur.core.numerics import (
    ContractError,
    DimensionError,
    eig_hermitian,
    expectation,
    golden_section_max,
    kron,
    nuclear_norm,
    orthogonal_alignment,
    partial_trace,
    partial_transpose_a,
    partial_transpose_b,
    singular_values,
)
from boundlur.lur.relations import c_lur_closed_form
from boundlur.ops.qutrit import make_spin_operators
from boundlur.states.bound_state import maximally_entangled_state


def random_complex(rng, dim):
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal(
        (dim, dim)
    )


def random_hermitian(rng, dim):
    g = random_complex(rng, dim)
    return g + g.conj().T


def test_kron_identity_and_diagonal():
    assert np.array_equal(kron(np.eye(3), np.eye(3)), np.eye(9))
    assert np.array_equal(
        kron(np.diag([1, 0, -1]), np.eye(3)),
        np.diag([1, 1, 1, 0, 0, 0, -1, -1, -1]),
    )


def test_kron_matches_elementwise_product():
    lx = make_spin_operators().lx
    product = kron(lx, lx)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    assert product[3 * i + k, 3 * j + l] == lx[i, j] * lx[k, l]


def test_kron_associative_and_bilinear():
    rng = np.random.default_rng(0)
    a, b, c = (random_complex(rng, 3) for _ in range(3))
    np.testing.assert_allclose(
        kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-12
    )
    np.testing.assert_allclose(
        kron(2.0 * a + b, c), 2.0 * kron(a, c) + kron(b, c), atol=1e-12
    )


def test_partial_transpose_identity_and_involution():
    assert np.array_equal(partial_transpose_b(np.eye(9)), np.eye(9))
    rng = np.random.default_rng(1)
    m = random_complex(rng, 9)
    assert np.array_equal(partial_transpose_b(partial_transpose_b(m)), m)
    assert np.array_equal(partial_transpose_a(partial_transpose_a(m)), m)


def test_partial_transpose_transposes_side_two():
    rng = np.random.default_rng(2)
    a, b = random_complex(rng, 3), random_complex(rng, 3)
    product = kron(a, b)
    np.testing.assert_array_equal(partial_transpose_b(product), kron(a, b.T))
    np.testing.assert_array_equal(partial_transpose_a(product), kron(a.T, b))


def test_partial_transpose_of_maximally_entangled_state():
    rho = maximally_entangled_state().rho
    spectrum = eig_hermitian(partial_transpose_b(rho))
    assert spectrum.min() == pytest.approx(-1.0 / 3.0, abs=1e-12)


@pytest.mark.parametrize("bad_dim", [3, 8])
def test_dimension_errors(bad_dim):
    m = np.eye(bad_dim)
    with pytest.raises(DimensionError):
        partial_transpose_b(m)
    with pytest.raises(DimensionError):
        partial_trace(m, 1)


def test_partial_trace_of_product_state():
    rng = np.random.default_rng(3)
    rho1 = random_hermitian(rng, 3)
    rho2 = random_hermitian(rng, 3)
    rho2 = rho2 / np.trace(rho2)
    np.testing.assert_allclose(
        partial_trace(kron(rho1, rho2), 1), rho1, atol=1e-12
    )
    rho1 = rho1 / np.trace(rho1)
    np.testing.assert_allclose(
        partial_trace(kron(rho1, rho2), 2), rho2, atol=1e-12
    )


def test_partial_trace_of_maximally_entangled_state():
    rho = maximally_entangled_state().rho
    for side in (1, 2):
        np.testing.assert_allclose(
            partial_trace(rho, side), np.eye(3) / 3.0, atol=1e-15
        )


def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(4)
    for _ in range(20):
        m = random_hermitian(rng, 9)
        for side in (1, 2):
            assert np.trace(partial_trace(m, side)) == pytest.approx(
                np.trace(m), abs=1e-12
            )


def test_eig_hermitian_examples():
    spectrum = eig_hermitian(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(spectrum.eigenvalues, [1.0, 2.0, 3.0])
    assert len(spectrum) == 3
    lx = make_spin_operators().lx
    np.testing.assert_allclose(
        eig_hermitian(lx).eigenvalues, [-1.0, 0.0, 1.0], atol=1e-14
    )


def test_eig_hermitian_trace_identities():
    rng = np.random.default_rng(5)
    for _ in range(20):
        m = random_hermitian(rng, 9)
        eigenvalues = eig_hermitian(m).eigenvalues
        assert np.all(np.diff(eigenvalues) >= 0)
        assert eigenvalues.sum() == pytest.approx(np.trace(m).real, abs=1e-10)
        assert np.sum(eigenvalues ** 2) == pytest.approx(
            np.trace(m @ m).real, abs=1e-10
        )


def test_eig_hermitian_with_vectors():
    rng = np.random.default_rng(6)
    m = random_hermitian(rng, 9)
    spectrum = eig_hermitian(m, vectors=True)
    v = spectrum.eigenvectors
    np.testing.assert_allclose(
        (v * spectrum.eigenvalues) @ v.conj().T, m, atol=1e-10
    )


def test_eig_hermitian_rejects_non_hermitian():
    m = np.eye(3, dtype=np.complex128)
    m[0, 1] = 1e-6
    with pytest.raises(ContractError):
        eig_hermitian(m)


def test_expectation_rejects_imaginary_residue():
    op = np.array([[0, 1], [0, 0]], dtype=np.complex128)
    rho = np.array([[0, 0], [1j, 0]])
    with pytest.raises(ContractError):
        expectation(rho, op)


def test_singular_values_examples():
    np.testing.assert_allclose(singular_values(np.eye(8)), np.ones(8))
    d = np.array([0.5, -3.0, 2.0, 0.0, -1.0, 4.0, -0.25, 1.5])
    np.testing.assert_allclose(
        singular_values(np.diag(d)), np.sort(np.abs(d))[::-1]
    )


def test_nuclear_norm_orthogonal_invariance():
    rng = np.random.default_rng(7)
    for seed in range(10):
        m = rng.standard_normal((8, 8))
        left = ortho_group.rvs(8, random_state=seed)
        right = ortho_group.rvs(8, random_state=100 + seed)
        assert nuclear_norm(left @ m @ right) == pytest.approx(
            nuclear_norm(m), abs=1e-10
        )


def test_nuclear_norm_is_maximal_trace_over_orthogonal_group():
    rng = np.random.default_rng(8)
    rotations = ortho_group.rvs(3, size=20000, random_state=9)
    for _ in range(5):
        m = rng.standard_normal((3, 3))
        norm = nuclear_norm(m)
        rotation, value = orthogonal_alignment(m)
        assert value == pytest.approx(norm, abs=1e-12)
        assert np.trace(rotation @ m) == pytest.approx(norm, abs=1e-12)
        np.testing.assert_allclose(
            rotation @ rotation.T, np.eye(3), atol=1e-12
        )

        sampled = np.einsum("nij,ji->n", rotations, m)
        assert sampled.max() <= norm + 1e-12
        assert sampled.max() >= 0.9 * norm


def test_golden_section_on_quadratic():
    tol = 1e-8
    argmax, value = golden_section_max(lambda x: -((x - 0.5) ** 2), 0, 1, tol)
    assert abs(argmax - 0.5) <= tol
    assert value == pytest.approx(0.0, abs=1e-15)


def test_golden_section_on_violation_curve():
    argmax, value = golden_section_max(c_lur_closed_form, 0.0, 1.0, 1e-8)
    assert argmax == pytest.approx(0.3077, abs=5e-4)
    assert argmax == pytest.approx(4.0 / 13.0, abs=1e-5)
    assert value == pytest.approx(0.00178, abs=1e-5)
    assert value == pytest.approx(2.0 / 1125.0, rel=1e-9)


@pytest.mark.parametrize("lo, hi, tol", [(1.0, 0.0, 1e-8), (0.5, 0.5, 1e-8)])
def test_golden_section_rejects_empty_bracket(lo, hi, tol):
    with pytest.raises(ValueError):
        golden_section_max(lambda x: x, lo, hi, tol)


def test_golden_section_rejects_non_positive_tol():
    with pytest.raises(ValueError):
        golden_section_max(lambda x: x, 0.0, 1.0, 0.0)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qclspec.errors import (
    DimensionMismatch,
    DimensionOverflow,
    NonHermitianInput,
)
from qclspec.numkernel import (
    apply,
    basis_state,
    expectation,
    hermitian_eigendecompose,
    kron,
    unitary_exp,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def random_hermitian(dim, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return a + a.conj().T


class TestEigendecompose:
    def test_pauli_z(self):
        eig = hermitian_eigendecompose(Z)
        assert np.allclose(eig.eigenvalues, [-1, 1])

    def test_pauli_x(self):
        eig = hermitian_eigendecompose(X)
        assert np.allclose(eig.eigenvalues, [-1, 1])

    def test_reconstruction_16x16(self):
        a = random_hermitian(16, seed=42)
        eig = hermitian_eigendecompose(a)
        v = eig.eigenvectors
        recon = (v * eig.eigenvalues) @ v.conj().T
        assert np.max(np.abs(recon - a)) < 1e-9
        assert np.max(np.abs(v.conj().T @ v - np.eye(16))) < 1e-10

    def test_eigenvalues_ascending(self):
        eig = hermitian_eigendecompose(random_hermitian(8, seed=3))
        assert np.all(np.diff(eig.eigenvalues) >= 0)

    def test_non_hermitian_rejected(self):
        with pytest.raises(NonHermitianInput):
            hermitian_eigendecompose(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_eigenvalue_sum_equals_trace(self):
        a = random_hermitian(12, seed=7)
        eig = hermitian_eigendecompose(a)
        assert abs(eig.eigenvalues.sum() - np.trace(a).real) < 1e-9

    def test_deterministic(self):
        a = random_hermitian(10, seed=11)
        e1 = hermitian_eigendecompose(a)
        e2 = hermitian_eigendecompose(a.copy())
        assert e1.eigenvalues.tobytes() == e2.eigenvalues.tobytes()
        assert e1.eigenvectors.tobytes() == e2.eigenvectors.tobytes()


def matrix_exp_series(a, s, terms=30):
    """Truncated power-series oracle with scaling-and-squaring."""
    m = -1j * s * a
    squarings = max(0, int(np.ceil(np.log2(max(np.abs(m).sum(axis=1).max(), 1e-30)))) + 1)
    m = m / 2 ** squarings
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ m / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


class TestUnitaryExp:
    def test_zero_time_is_identity(self):
        eig = hermitian_eigendecompose(random_hermitian(6, seed=0))
        assert np.allclose(unitary_exp(eig, 0.0), np.eye(6))

    def test_diagonal_phase(self):
        eig = hermitian_eigendecompose(Z)
        u = unitary_exp(eig, np.pi / 2)
        expected = np.diag([np.exp(-1j * np.pi / 2), np.exp(1j * np.pi / 2)])
        assert np.allclose(u, expected)

    def test_matches_series_oracle(self):
        a = random_hermitian(8, seed=5)
        u = unitary_exp(hermitian_eigendecompose(a), 0.37)
        assert np.max(np.abs(u - matrix_exp_series(a, 0.37))) < 1e-8

    @given(st.integers(0, 50), st.floats(-3, 3, allow_nan=False))
    @settings(max_examples=25, deadline=None)
    def test_inverse_identity(self, seed, s):
        eig = hermitian_eigendecompose(random_hermitian(4, seed))
        prod = unitary_exp(eig, s) @ unitary_exp(eig, -s)
        assert np.max(np.abs(prod - np.eye(4))) < 1e-9

    def test_result_unitary(self):
        eig = hermitian_eigendecompose(random_hermitian(8, seed=9))
        u = unitary_exp(eig, 1.7)
        assert np.max(np.abs(u.conj().T @ u - np.eye(8))) < 1e-9


class TestKron:
    def test_identity(self):
        assert np.allclose(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_z_tensor_identity(self):
        assert np.allclose(np.diag(kron(Z, np.eye(2))), [1, 1, -1, -1])

    def test_entrywise_definition(self):
        out = kron(X, Z)
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        assert out[i * 2 + k, j * 2 + l] == X[i, j] * Z[k, l]

    def test_dimension_cap(self):
        big = np.eye(2 ** 7)
        with pytest.raises(DimensionOverflow):
            kron(big, big)


class TestApplyAndExpectation:
    def test_identity_apply(self):
        psi = basis_state(4, 2)
        assert np.allclose(apply(np.eye(4), psi), psi)

    def test_x_flips(self):
        assert np.allclose(apply(X, basis_state(2, 0)), basis_state(2, 1))

    def test_hadamard_on_two_qubits(self):
        u = kron(HADAMARD, np.eye(2))
        psi = apply(u, basis_state(4, 0))
        expected = np.zeros(4, dtype=complex)
        expected[0] = expected[2] = 1 / np.sqrt(2)
        assert np.allclose(psi, expected)

    def test_apply_dim_mismatch(self):
        with pytest.raises(DimensionMismatch):
            apply(np.eye(4), basis_state(2))

    def test_z_on_zero(self):
        assert expectation(basis_state(2, 0), Z) == pytest.approx(1.0)

    def test_z_on_plus(self):
        plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
        assert expectation(plus, Z) == pytest.approx(0.0, abs=1e-12)

    def test_direct_sum_oracle(self):
        rng = np.random.default_rng(17)
        psi = rng.normal(size=6) + 1j * rng.normal(size=6)
        psi /= np.linalg.norm(psi)
        a = random_hermitian(6, seed=23)
        direct = sum(
            (psi[i].conjugate() * a[i, j] * psi[j]).real
            for i in range(6)
            for j in range(6)
        )
        assert abs(expectation(psi, a) - direct) < 1e-12

    def test_expectation_requires_hermitian(self):
        with pytest.raises(NonHermitianInput):
            expectation(basis_state(2), np.array([[0, 1], [0, 0]], dtype=complex))

    @given(st.integers(0, 50), st.floats(-5, 5, allow_nan=False))
    @settings(max_examples=25, deadline=None)
    def test_norm_preserved(self, seed, s):
        eig = hermitian_eigendecompose(random_hermitian(8, seed))
        u = unitary_exp(eig, s)
        rng = np.random.default_rng(seed + 1)
        psi = rng.normal(size=8) + 1j * rng.normal(size=8)
        psi /= np.linalg.norm(psi)
        assert abs(np.linalg.norm(apply(u, psi)) - 1) < 1e-10

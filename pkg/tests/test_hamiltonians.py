import numpy as np
import pytest

from qclspec.errors import SiteOutOfRange
from qclspec.hamiltonians import (
    AnsatzHamiltonianSpec,
    EncodingSpec,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    Prng,
    build_exponential,
    build_ising_ansatz,
    build_nonintegrable,
    build_uniform,
    embed_pauli,
)


class TestPrng:
    def test_same_seed_same_stream(self):
        a, b = Prng(12345), Prng(12345)
        assert [a.next_u64() for _ in range(20)] == [b.next_u64() for _ in range(20)]

    def test_uniform_bounds(self):
        rng = Prng(7)
        draws = [rng.uniform(-2.0, 3.0) for _ in range(1000)]
        assert all(-2.0 <= d < 3.0 for d in draws)

    def test_different_seeds_differ(self):
        assert Prng(1).next_u64() != Prng(2).next_u64()


class TestEmbedPauli:
    def test_single_site_z(self):
        assert np.allclose(embed_pauli("Z", 1, 1), np.diag([1, -1]))

    def test_second_site_y(self):
        assert np.allclose(embed_pauli("Y", 2, 2), np.kron(np.eye(2), PAULI_Y))

    def test_involution(self):
        x1 = embed_pauli("X", 1, 2)
        assert np.allclose(x1 @ x1, np.eye(4))

    def test_site_out_of_range(self):
        with pytest.raises(SiteOutOfRange):
            embed_pauli("X", 3, 2)

    def test_hermitian(self):
        for axis in "XYZ":
            h = embed_pauli(axis, 2, 3)
            assert np.max(np.abs(h - h.conj().T)) == 0


class TestUniform:
    def test_n1_eigenvalues(self):
        assert np.allclose(np.linalg.eigvalsh(build_uniform(1)), [-1, 1])

    def test_n2_eigenvalues_and_count(self):
        e = np.linalg.eigvalsh(build_uniform(2))
        assert np.allclose(e, [-2, 0, 0, 2], atol=1e-12)

    @pytest.mark.parametrize("n,expected_g", [(2, 3), (4, 5)])
    def test_distinct_count_n_plus_1(self, n, expected_g):
        e = np.sort(np.linalg.eigvalsh(build_uniform(n)))
        g = 1 + int(np.count_nonzero(np.diff(e) > 1e-9))
        assert g == expected_g

    def test_commutes_with_global_y(self):
        h = build_uniform(3)
        total_y = sum(embed_pauli("Y", i, 3) for i in range(1, 4))
        assert np.max(np.abs(h @ total_y - total_y @ h)) == 0


class TestExponential:
    def test_n1_eigenvalues(self):
        assert np.allclose(np.linalg.eigvalsh(build_exponential(1)), [-3, 3])

    def test_n3_sign_enumeration(self):
        # independent oracle: every eigenvalue is a sign combination of 3, 9, 27
        expected = sorted(
            s1 * 3 + s2 * 9 + s3 * 27
            for s1 in (-1, 1)
            for s2 in (-1, 1)
            for s3 in (-1, 1)
        )
        e = np.linalg.eigvalsh(build_exponential(3))
        assert np.allclose(e, expected, atol=1e-10)
        assert len(np.unique(np.round(e, 6))) == 8


class TestNonIntegrable:
    def test_n1_closed_form(self):
        spec = EncodingSpec("nonintegrable", 1, seed=3)
        h = build_nonintegrable(spec)
        rng = Prng(3)
        bx, by, bz = (rng.uniform(-1, 1) for _ in range(3))
        r = np.sqrt(bx ** 2 + by ** 2 + bz ** 2)
        assert np.allclose(np.linalg.eigvalsh(h), [-r, r])

    def test_dual_construction_n2(self):
        spec = EncodingSpec("nonintegrable", 2, seed=11)
        h = build_nonintegrable(spec)
        assert np.max(np.abs(h - h.conj().T)) < 1e-12

        # second code path: same documented draw order, explicit np.kron
        rng = Prng(11)
        bx = [rng.uniform(-1, 1) for _ in range(2)]
        by = [rng.uniform(-1, 1) for _ in range(2)]
        bz = [rng.uniform(-1, 1) for _ in range(2)]
        j12 = rng.uniform(-3, 3)
        i2 = np.eye(2)
        ref = (
            bx[0] * np.kron(PAULI_X, i2)
            + bx[1] * np.kron(i2, PAULI_X)
            + by[0] * np.kron(PAULI_Y, i2)
            + by[1] * np.kron(i2, PAULI_Y)
            + bz[0] * np.kron(PAULI_Z, i2)
            + bz[1] * np.kron(i2, PAULI_Z)
            + j12
            * (
                np.kron(PAULI_X, PAULI_X)
                + np.kron(PAULI_Y, PAULI_Y)
                + 0.73 * np.kron(PAULI_Z, PAULI_Z)
            )
        )
        assert np.allclose(np.linalg.eigvalsh(h), np.linalg.eigvalsh(ref), atol=1e-12)

    @pytest.mark.parametrize("seed", [0, 1, 2, 5, 9])
    def test_n3_nondegenerate(self, seed):
        h = build_nonintegrable(EncodingSpec("nonintegrable", 3, seed=seed))
        e = np.sort(np.linalg.eigvalsh(h))
        assert np.min(np.diff(e)) > 1e-9

    def test_seed_determinism(self):
        spec = EncodingSpec("nonintegrable", 3, seed=77)
        assert build_nonintegrable(spec).tobytes() == build_nonintegrable(spec).tobytes()

    def test_kind_check(self):
        with pytest.raises(ValueError):
            build_nonintegrable(EncodingSpec("uniform", 2))


class TestIsingAnsatz:
    def test_n1_transverse_field_only(self):
        spec = AnsatzHamiltonianSpec(n_qubits=1, seed=4)
        h = build_ising_ansatz(spec)
        a1 = Prng(4).uniform(-1, 1)
        assert np.allclose(np.linalg.eigvalsh(h), [-abs(a1), abs(a1)])

    def test_zz_term_diagonal(self):
        # the coupling term alone is diagonal with the (+, -, -, +) pattern
        zz = np.kron(PAULI_Z, PAULI_Z)
        assert np.allclose(np.diag(zz), [1, -1, -1, 1])

    def test_dual_construction_n3(self):
        spec = AnsatzHamiltonianSpec(n_qubits=3, seed=21)
        h = build_ising_ansatz(spec)
        rng = Prng(21)
        a = [rng.uniform(-1, 1) for _ in range(3)]
        j = {(i, k): rng.uniform(-1, 1) for i, k in [(1, 2), (1, 3), (2, 3)]}
        i2 = np.eye(2)

        def op(mats):
            out = np.array([[1.0]])
            for m in mats:
                out = np.kron(out, m)
            return out

        ref = (
            a[0] * op([PAULI_X, i2, i2])
            + a[1] * op([i2, PAULI_X, i2])
            + a[2] * op([i2, i2, PAULI_X])
            + j[(1, 2)] * op([PAULI_Z, PAULI_Z, i2])
            + j[(1, 3)] * op([PAULI_Z, i2, PAULI_Z])
            + j[(2, 3)] * op([i2, PAULI_Z, PAULI_Z])
        )
        assert np.max(np.abs(h - ref)) < 1e-12

    def test_hermitian(self):
        h = build_ising_ansatz(AnsatzHamiltonianSpec(n_qubits=4, seed=0))
        assert np.max(np.abs(h - h.conj().T)) < 1e-12


class TestSpecValidation:
    def test_bad_range_rejected(self):
        with pytest.raises(ValueError):
            EncodingSpec("uniform", 2, field_range=(1.0, -1.0))

    def test_qubit_cap(self):
        with pytest.raises(ValueError):
            EncodingSpec("uniform", 13)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            EncodingSpec("magic", 2)

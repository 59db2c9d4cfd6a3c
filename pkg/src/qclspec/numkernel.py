"""Dense complex linear algebra substrate.

Everything operates on plain ``numpy`` complex arrays.  Matrices here are
small (at most 2^12 dimensional), so dense exact algebra is used throughout;
there is no sparse or iterative path.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    DimensionOverflow,
    NonHermitianInput,
)

HERMITIAN_TOL = 1e-10
KRON_DIM_CAP = 2 ** 12


def as_operator(a):
    """Coerce to a finite square complex matrix."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError("matrix contains NaN/Inf entries")
    return a


def hermiticity_defect(a):
    """max-norm of A - A^dagger."""
    return float(np.max(np.abs(a - a.conj().T)))


def check_hermitian(a, tol=HERMITIAN_TOL):
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NonHermitianInput(f"Hermiticity defect {defect:.3e} exceeds {tol:.1e}")


@dataclass(frozen=True)
class HermitianEigenSystem:
    """Spectral decomposition A = V diag(w) V^dagger.

    ``eigenvalues`` is real and sorted ascending; the columns of
    ``eigenvectors`` form an orthonormal basis.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self):
        return len(self.eigenvalues)


def hermitian_eigendecompose(a, tol=HERMITIAN_TOL):
    """Eigendecompose a Hermitian matrix.

    Raises NonHermitianInput if the input fails the Hermiticity check, and
    ConvergenceFailure if the underlying solver (LAPACK Householder
    tridiagonalization + implicit QL/QR via ``numpy.linalg.eigh``) does not
    converge.  Deterministic for identical input bytes.
    """
    a = as_operator(a)
    check_hermitian(a, tol)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return HermitianEigenSystem(eigenvalues=w, eigenvectors=v.astype(complex))


def unitary_exp(eig, s):
    """e^{-i s H} from the spectral decomposition of H."""
    phases = np.exp(-1j * s * eig.eigenvalues)
    v = eig.eigenvectors
    return (v * phases) @ v.conj().T


def kron(a, b, dim_cap=KRON_DIM_CAP):
    """Kronecker product with a dense-dimension guard."""
    a = as_operator(a)
    b = as_operator(b)
    if a.shape[0] * b.shape[0] > dim_cap:
        raise DimensionOverflow(
            f"kron would produce dim {a.shape[0] * b.shape[0]} > cap {dim_cap}"
        )
    return np.kron(a, b)


def apply(u, psi):
    """Apply an operator to a state vector."""
    u = np.asarray(u, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    if u.ndim != 2 or psi.ndim != 1 or u.shape[1] != psi.shape[0]:
        raise DimensionMismatch(
            f"operator shape {u.shape} incompatible with state of length {len(psi)}"
        )
    return u @ psi


def expectation(psi, a, tol=HERMITIAN_TOL):
    """<psi|A|psi> for Hermitian A; returns the real part.

    The raw inner product must be real to within 1e-10; the imaginary
    residue is discarded.
    """
    a = as_operator(a)
    psi = np.asarray(psi, dtype=complex)
    if a.shape[0] != psi.shape[0]:
        raise DimensionMismatch(
            f"operator dim {a.shape[0]} != state dim {psi.shape[0]}"
        )
    check_hermitian(a, tol)
    raw = np.vdot(psi, a @ psi)
    return float(raw.real)


def basis_state(dim, index=0):
    """Computational basis vector |index> of the given dimension."""
    psi = np.zeros(dim, dtype=complex)
    psi[index] = 1.0
    return psi

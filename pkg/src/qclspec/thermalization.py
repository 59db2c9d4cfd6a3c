"""Quench dynamics and thermalization diagnostics.

For a Hermitian generator H, an initial state, and a Hermitian observable A,
this module evaluates <A(t)>, the diagonal-ensemble long-time average, the
analytic temporal fluctuation under the non-resonance assumption, the
off-diagonal bound, a brute-force resonance check, and the microcanonical
window average.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyWarning, DimensionMismatch, EmptyWindow, InsufficientHorizon
from .numkernel import as_operator, check_hermitian, hermitian_eigendecompose
from .spectral import DEGENERACY_TOL, cluster_sorted, frequency_set


class QuenchSetup:
    """Hamiltonian + initial state + observable, with the eigenbasis data
    (energies, overlap amplitudes c_i, matrix elements A_ij) precomputed."""

    def __init__(self, hamiltonian, initial_state, observable):
        hamiltonian = as_operator(hamiltonian)
        observable = as_operator(observable)
        psi = np.asarray(initial_state, dtype=complex)
        if psi.ndim != 1 or psi.shape[0] != hamiltonian.shape[0]:
            raise DimensionMismatch("initial state dimension does not match H")
        if observable.shape != hamiltonian.shape:
            raise DimensionMismatch("observable dimension does not match H")
        check_hermitian(observable)

        self.hamiltonian = hamiltonian
        self.initial_state = psi
        self.observable = observable

        eig = hermitian_eigendecompose(hamiltonian)
        v = eig.eigenvectors
        self.energies = eig.eigenvalues
        self.amplitudes = v.conj().T @ psi  # c_i = <E_i|psi(0)>
        self.matrix_elements = v.conj().T @ observable @ v  # A_ij

    @property
    def dim(self):
        return len(self.energies)


@dataclass(frozen=True)
class EthWindow:
    """One-sided microcanonical window [energy - half_width, energy]."""

    energy: float
    half_width: float

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")


def expectation_trace(setup, times):
    """<A(t)> = sum_ij c_i^* c_j e^{-i (E_j - E_i) t} A_ij on a time grid.

    Evaluated via the eigenbasis (identical to direct unitary evolution)."""
    times = np.asarray(times, dtype=float)
    d = setup.amplitudes[:, None] * np.exp(
        -1j * np.outer(setup.energies, times)
    )
    return np.real(np.sum(d.conj() * (setup.matrix_elements @ d), axis=0))


def long_time_average_analytic(setup, degeneracy_tol=DEGENERACY_TOL):
    """Diagonal-ensemble average sum_i |c_i|^2 A_ii.

    Valid under non-degeneracy; a DegeneracyWarning is attached (and the
    value still returned) when the spectrum has near-degenerate levels.
    """
    spacings = np.diff(np.sort(setup.energies))
    if spacings.size and spacings.min() < degeneracy_tol:
        warnings.warn(
            "spectrum is (near-)degenerate; diagonal-ensemble value may not "
            "equal the long-time average",
            DegeneracyWarning,
        )
    weights = np.abs(setup.amplitudes) ** 2
    return float(weights @ np.real(np.diag(setup.matrix_elements)))


def temporal_fluctuation_analytic(setup):
    """sigma_t^2 = sum_{i != j} |c_i|^2 |c_j|^2 |A_ij|^2 (non-resonant case)."""
    p = np.abs(setup.amplitudes) ** 2
    a2 = np.abs(setup.matrix_elements) ** 2
    total = p @ a2 @ p
    diagonal = np.sum(p * p * np.diag(a2))
    return float(max(total - diagonal, 0.0))


def offdiagonal_bound(setup):
    """[max_{i != j} |A_ij|]^2, the upper bound on sigma_t^2."""
    a = np.abs(setup.matrix_elements).copy()
    np.fill_diagonal(a, 0.0)
    return float(a.max() ** 2)


def minimum_frequency_gap(eigenvalues, tol=DEGENERACY_TOL):
    """Smallest gap between consecutive distinct eigenvalue differences."""
    omegas, _ = frequency_set(eigenvalues, tol)
    gaps = np.diff(omegas)
    return float(gaps.min()) if gaps.size else np.inf


def temporal_fluctuation_empirical(setup, total_time, samples=4096):
    """Sample variance of <A(t)> over uniformly spaced times in [0, T).

    Requires T >= 100 * 2*pi / delta_min where delta_min is the smallest
    nonzero frequency gap, so the slowest beat is well averaged.
    """
    delta_min = minimum_frequency_gap(setup.energies)
    if np.isfinite(delta_min) and total_time < 100 * 2 * np.pi / delta_min:
        raise InsufficientHorizon(
            f"horizon {total_time:.3g} < 100 beat periods "
            f"({100 * 2 * np.pi / delta_min:.3g})"
        )
    times = np.linspace(0.0, total_time, samples, endpoint=False)
    trace = expectation_trace(setup, times)
    return float(np.var(trace))


def resonance_count(eigenvalues, tol=DEGENERACY_TOL):
    """Violations of: E_a - E_b = E_c - E_d implies (a, b) = (c, d).

    Counts coincident pairs among the nonzero ordered differences (a != b,
    c != d), each unordered pair of index-pairs counted once.  Zero means
    the spectrum is non-resonant at the given tolerance.
    """
    e = np.asarray(eigenvalues, dtype=float)
    n = len(e)
    diffs = (e[:, None] - e[None, :])[~np.eye(n, dtype=bool)]
    _, counts = cluster_sorted(np.sort(diffs), tol)
    return int(np.sum(counts * (counts - 1) // 2))


def microcanonical_expectation(setup, window):
    """Unweighted mean of A_ii over eigenstates in [E - dE, E]."""
    lo, hi = window.energy - window.half_width, window.energy
    mask = (setup.energies >= lo) & (setup.energies <= hi)
    if not np.any(mask):
        raise EmptyWindow(f"no eigenstate in [{lo:.6g}, {hi:.6g}]")
    return float(np.mean(np.real(np.diag(setup.matrix_elements))[mask]))

"""Expressivity and spectrum diagnostics.

Counts distinct eigenvalues (G) and distinct eigenvalue differences (K),
runs the DFT-based peak count that mirrors the exact frequency content of a
model, and computes the level-spacing ratio statistic used to distinguish
Poisson-like from Wigner-Dyson-like spectra.

Conventions: K counts the zero frequency; the companion K_nonzero excludes
it.  All clustering tolerances are absolute.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrum, ResolutionInsufficient
from .hamiltonians import embed_pauli
from .numkernel import basis_state, hermitian_eigendecompose

DEGENERACY_TOL = 1e-9
PEAK_REL_THRESHOLD = 1e-6

# Kaiser window: beta 22 puts per-tone sidelobes near 2e-10 relative, so even
# a few hundred tones stacking leakage stay far below the 1e-6 peak
# threshold; the main lobe spans ~7 bins on each side.
KAISER_BETA = 22.0
_MAINLOBE_HALFWIDTH_BINS = 8
# Distinct tones are kept >= this many bins apart when the window length is
# derived automatically.
_SEPARATION_BINS = 32


@dataclass(frozen=True)
class FrequencySpectrum:
    """Distinct frequencies with their Fourier coefficients.

    The model is sum_omega coeff(omega) * exp(-i omega x); omegas are
    strictly increasing and the set is symmetric about zero with conjugate
    coefficients.
    """

    omegas: np.ndarray
    coeffs: np.ndarray
    tol: float

    def reconstruct(self, xs):
        """Evaluate the series on a grid; returns the real part."""
        xs = np.asarray(xs, dtype=float)
        phases = np.exp(-1j * np.outer(self.omegas, xs))
        return np.real(self.coeffs @ phases)


@dataclass(frozen=True)
class SpectrumStats:
    G: int
    K: int
    K_nonzero: int
    mean_spacing_ratio: float  # NaN when undefined (degenerate spectrum)


def distinct_count(values, tol=DEGENERACY_TOL):
    """Number of clusters in a sorted vector, split where gaps exceed tol."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return 0
    return int(1 + np.count_nonzero(np.diff(values) > tol))


def cluster_sorted(values, tol=DEGENERACY_TOL):
    """Split a sorted vector into clusters; returns (means, counts)."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return np.array([]), np.array([], dtype=int)
    edges = np.flatnonzero(np.diff(values) > tol) + 1
    groups = np.split(values, edges)
    means = np.array([g.mean() for g in groups])
    counts = np.array([len(g) for g in groups])
    return means, counts


def frequency_set(eigenvalues, tol=DEGENERACY_TOL):
    """Distinct eigenvalue differences Omega and their count K.

    Omega always contains 0 and is exactly symmetric about it.
    """
    e = np.asarray(eigenvalues, dtype=float)
    diffs = np.sort((e[:, None] - e[None, :]).ravel())
    means, _ = cluster_sorted(diffs, tol)
    # Enforce exact set symmetry by mirroring the non-negative half.
    pos = means[means > tol]
    omegas = np.concatenate([-pos[::-1], [0.0], pos])
    return omegas, len(omegas)


def spacing_ratio(eigenvalues, degeneracy_tol=1e-12):
    """Mean ratio min(s_i, s_{i+1}) / max(s_i, s_{i+1}) of adjacent spacings.

    Raises DegenerateSpectrum (carrying the collision count) when any
    spacing is below tolerance, since the ratio is then undefined.
    """
    e = np.sort(np.asarray(eigenvalues, dtype=float))
    if e.size < 4:
        raise ValueError("need at least 4 eigenvalues for the spacing ratio")
    s = np.diff(e)
    collisions = int(np.count_nonzero(s < degeneracy_tol))
    if collisions:
        raise DegenerateSpectrum(
            f"{collisions} spacings below {degeneracy_tol:.1e}", collisions=collisions
        )
    ratios = np.minimum(s[:-1], s[1:]) / np.maximum(s[:-1], s[1:])
    return float(ratios.mean())


def spectrum_stats(hamiltonian, tol=DEGENERACY_TOL):
    """G, K, K_nonzero, and the spacing-ratio statistic for one Hamiltonian."""
    eig = hermitian_eigendecompose(hamiltonian)
    g = distinct_count(eig.eigenvalues, tol)
    _, k = frequency_set(eig.eigenvalues, tol)
    try:
        mean_r = spacing_ratio(eig.eigenvalues)
    except (DegenerateSpectrum, ValueError):
        mean_r = float("nan")
    return SpectrumStats(G=g, K=k, K_nonzero=k - 1, mean_spacing_ratio=mean_r)


def _model_samples(h_enc, u, xs, observable=None):
    """f(x) on a grid, vectorized over x and chunked to bound memory."""
    eig = hermitian_eigendecompose(h_enc)
    v = eig.eigenvectors
    dim = eig.dim
    if observable is None:
        n_qubits = int(round(np.log2(dim)))
        observable = embed_pauli("Z", 1, n_qubits)
    obs = u.conj().T @ observable @ u
    obs_eig = v.conj().T @ obs @ v
    a0 = v.conj().T @ basis_state(dim)
    out = np.empty(len(xs))
    chunk = max(1, (1 << 22) // dim)
    for start in range(0, len(xs), chunk):
        x = xs[start:start + chunk]
        d = np.exp(-1j * np.outer(eig.eigenvalues, x)) * a0[:, None]
        out[start:start + chunk] = np.real(np.sum(d.conj() * (obs_eig @ d), axis=0))
    return out


def dft_spectrum(
    h_enc,
    u,
    n_samples=None,
    window=None,
    observable=None,
    tol=DEGENERACY_TOL,
    kaiser_beta=KAISER_BETA,
    max_samples=1 << 23,
):
    """Windowed DFT magnitudes of the model f(x).

    The sampling window T and count M default to values derived from the
    exact frequency set: T keeps distinct tones >= 32 bins apart, and M
    gives a 2x Nyquist margin over the largest frequency.  Magnitudes are
    normalized by the window sum so a bin-centered tone of coefficient
    magnitude c reads ~c.  Returns (frequencies in FFT order, magnitudes).
    """
    eig = hermitian_eigendecompose(h_enc)
    omegas, _ = frequency_set(eig.eigenvalues, tol)
    gaps = np.diff(omegas)
    delta_min = float(gaps.min()) if gaps.size else 1.0
    w_max = float(np.max(np.abs(omegas))) if len(omegas) > 1 else 1.0

    if window is None:
        window = _SEPARATION_BINS * 2 * np.pi / delta_min
    if n_samples is None:
        n_samples = max(int(np.ceil(4 * w_max * window / (2 * np.pi))), 256)
    t_total = float(window)
    m = int(n_samples)

    if m > max_samples:
        raise ResolutionInsufficient(
            f"resolving the spectrum needs {m} samples (cap {max_samples})"
        )
    separation_bins = delta_min * t_total / (2 * np.pi)
    if len(omegas) > 1 and separation_bins < 2 * _MAINLOBE_HALFWIDTH_BINS:
        raise ResolutionInsufficient(
            f"window {t_total:.3g} separates adjacent tones by only "
            f"{separation_bins:.2f} bins"
        )
    if 2 * np.pi * m / t_total < 2 * w_max:
        raise ResolutionInsufficient(
            f"{m} samples over window {t_total:.3g} is below Nyquist for "
            f"max frequency {w_max:.3g}"
        )

    xs = np.arange(m) * (t_total / m)
    samples = _model_samples(h_enc, u, xs, observable=observable)
    win = np.kaiser(m, kaiser_beta)
    mags = np.abs(np.fft.fft(samples * win)) / win.sum()
    freqs = 2 * np.pi * np.fft.fftfreq(m, d=t_total / m)
    return freqs, mags


def count_peaks(magnitudes, rel_threshold=PEAK_REL_THRESHOLD):
    """Local maxima (circular adjacency) above rel_threshold * max."""
    m = np.asarray(magnitudes, dtype=float)
    if m.size == 0:
        return 0
    threshold = rel_threshold * m.max()
    left = np.roll(m, 1)
    right = np.roll(m, -1)
    return int(np.count_nonzero((m > left) & (m > right) & (m > threshold)))

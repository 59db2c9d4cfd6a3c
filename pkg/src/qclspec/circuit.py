"""Variational circuit, model evaluation, and exact Fourier decomposition.

The model is f_theta(x) = <0..0| e^{ixH} U(theta)^dag Z_1 U(theta) e^{-ixH} |0..0>
with U(theta) built from depth-many layers of a random-Ising evolution
followed by per-qubit RX-RZ-RX rotations.  Within each layer the Ising
evolution acts on the state first.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ParamLengthMismatch
from .hamiltonians import (
    AnsatzHamiltonianSpec,
    Prng,
    build_ising_ansatz,
    embed_pauli,
)
from .numkernel import (
    basis_state,
    check_hermitian,
    expectation,
    hermitian_eigendecompose,
    kron,
    unitary_exp,
)
from .spectral import FrequencySpectrum


@dataclass(frozen=True)
class CircuitConfig:
    n_qubits: int
    depth: int = 3
    evolution_time: float = 1.0
    ansatz_seed: int = 0
    observable_site: int = 1

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if self.evolution_time < 0:
            raise ValueError("evolution_time must be >= 0")

    @property
    def n_params(self):
        return 3 * self.depth * self.n_qubits


def random_params(cfg, seed):
    """Initial angles drawn uniformly from [0, 2*pi), length 3*d*N."""
    rng = Prng(seed)
    return np.array([rng.uniform(0.0, 2 * np.pi) for _ in range(cfg.n_params)])


def rx(theta):
    """Rotation about x: [[cos t/2, -i sin t/2], [-i sin t/2, cos t/2]]."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def rz(phi):
    """Rotation about z: diag(e^{-i phi/2}, e^{i phi/2})."""
    return np.array(
        [[np.exp(-1j * phi / 2), 0], [0, np.exp(1j * phi / 2)]], dtype=complex
    )


def u_rot(site, angles, n_qubits):
    """RX(a1) RZ(a2) RX(a3) on one site, identity elsewhere."""
    a1, a2, a3 = angles
    gate = rx(a1) @ rz(a2) @ rx(a3)
    out = np.ones((1, 1), dtype=complex)
    for i in range(1, n_qubits + 1):
        out = kron(out, gate if i == site else np.eye(2, dtype=complex))
    return out


def u_rand(h_ansatz, t):
    """e^{-i t H} for the (Hermitian) ansatz generator."""
    return unitary_exp(hermitian_eigendecompose(h_ansatz), t)


def _rotation_layer(layer_angles, n_qubits):
    """Product over sites of the single-qubit rotations; angles shape (N, 3).

    Hot path of training: uses a bare reshape-based Kronecker chain instead
    of the checked kron to keep per-evaluation overhead low.
    """
    out = np.ones((1, 1), dtype=complex)
    for i in range(n_qubits):
        a1, a2, a3 = layer_angles[i]
        g = rx(a1) @ rz(a2) @ rx(a3)
        d = out.shape[0]
        out = (out[:, None, :, None] * g[None, :, None, :]).reshape(2 * d, 2 * d)
    return out


def build_ansatz(params, cfg, h_ansatz, urand=None):
    """Full circuit unitary for the 3*d*N parameter vector.

    Parameter layout: params.reshape(depth, n_qubits, 3); within a layer the
    Ising evolution is the rightmost (first-acting) factor.
    """
    params = np.asarray(params, dtype=float)
    if params.shape != (cfg.n_params,):
        raise ParamLengthMismatch(
            f"expected {cfg.n_params} parameters, got {params.shape}"
        )
    if urand is None:
        urand = u_rand(h_ansatz, cfg.evolution_time)
    angles = params.reshape(cfg.depth, cfg.n_qubits, 3)
    u = np.eye(2 ** cfg.n_qubits, dtype=complex)
    for k in range(cfg.depth):
        u = _rotation_layer(angles[k], cfg.n_qubits) @ (urand @ u)
    return u


def model_eval(h_enc, u, x, observable=None):
    """f(x) = <0..0| e^{ixH} U^dag Z U e^{-ixH} |0..0>."""
    eig = hermitian_eigendecompose(h_enc)
    if observable is None:
        n_qubits = int(round(np.log2(eig.dim)))
        observable = embed_pauli("Z", 1, n_qubits)
    psi = unitary_exp(eig, x) @ basis_state(eig.dim)
    return expectation(u @ psi, observable)


def exact_fourier(h_enc, u, tol=None, observable=None):
    """Exact frequency decomposition of the model.

    Expands over the encoding eigenbasis: the pair (n, m) contributes
    frequency E_m - E_n with coefficient
    <0|E_n><E_n|U^dag Z U|E_m><E_m|0>; terms are clustered by frequency.
    """
    eig = hermitian_eigendecompose(h_enc)
    v = eig.eigenvectors
    if observable is None:
        n_qubits = int(round(np.log2(eig.dim)))
        observable = embed_pauli("Z", 1, n_qubits)
    check_hermitian(observable)
    if tol is None:
        width = float(eig.eigenvalues[-1] - eig.eigenvalues[0])
        tol = 1e-9 * max(1.0, width)

    obs_eig = v.conj().T @ (u.conj().T @ observable @ u) @ v
    amp0 = v[0, :]  # <0..0|E_n>
    coeff = amp0[:, None] * obs_eig * amp0.conj()[None, :]
    # the (n, m) term carries phase e^{ix(E_n - E_m)}; in the e^{-i omega x}
    # convention of FrequencySpectrum that is frequency E_m - E_n
    omega = eig.eigenvalues[None, :] - eig.eigenvalues[:, None]

    flat_w = omega.ravel()
    flat_c = coeff.ravel()
    order = np.argsort(flat_w, kind="stable")
    flat_w = flat_w[order]
    flat_c = flat_c[order]
    edges = np.flatnonzero(np.diff(flat_w) > tol) + 1
    omegas = np.array([g.mean() for g in np.split(flat_w, edges)])
    coeffs = np.array([g.sum() for g in np.split(flat_c, edges)])
    return FrequencySpectrum(omegas=omegas, coeffs=coeffs, tol=tol)


class QuantumModel:
    """Cached evaluation context for one encoding + circuit configuration.

    Precomputes the encoding eigenbasis and the ansatz evolution so that
    repeated evaluations during training stay cheap.
    """

    def __init__(self, h_enc, cfg, h_ansatz=None):
        self.cfg = cfg
        if h_ansatz is None:
            h_ansatz = build_ising_ansatz(
                AnsatzHamiltonianSpec(n_qubits=cfg.n_qubits, seed=cfg.ansatz_seed)
            )
        self.h_ansatz = h_ansatz
        self._enc_eig = hermitian_eigendecompose(h_enc)
        self._urand = u_rand(h_ansatz, cfg.evolution_time)
        self._obs = embed_pauli("Z", cfg.observable_site, cfg.n_qubits)
        v = self._enc_eig.eigenvectors
        self._v = v
        self._amp0 = v.conj().T @ basis_state(self._enc_eig.dim)

    def unitary(self, theta):
        return build_ansatz(theta, self.cfg, self.h_ansatz, urand=self._urand)

    def evaluate(self, theta, xs):
        """f_theta on a grid of inputs."""
        xs = np.asarray(xs, dtype=float)
        u = self.unitary(theta)
        obs_eig = self._v.conj().T @ (u.conj().T @ self._obs @ u) @ self._v
        d = np.exp(-1j * np.outer(self._enc_eig.eigenvalues, xs)) * self._amp0[:, None]
        return np.real(np.sum(d.conj() * (obs_eig @ d), axis=0))

    def spectrum(self, theta, tol=None):
        h_enc = (
            self._v * self._enc_eig.eigenvalues
        ) @ self._v.conj().T
        return exact_fourier(h_enc, self.unitary(theta), tol=tol, observable=self._obs)

"""Encoding and ansatz Hamiltonian builders with a reproducible random stream.

All random parameters come from a self-contained 64-bit generator so that a
given spec reproduces the same Hamiltonian bit-for-bit on every platform.

Draw order (reproducibility contract):
  * non-integrable encoding: B^X_1..B^X_N, B^Y_1..B^Y_N, B^Z_1..B^Z_N,
    then J_ij over pairs i<j in lexicographic order;
  * Ising ansatz: a_1..a_N, then J_ij over pairs i<j in lexicographic order.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import SiteOutOfRange
from .numkernel import kron

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)

_PAULIS = {"X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}

MAX_QUBITS = 12

_MASK64 = (1 << 64) - 1


class Prng:
    """splitmix64: deterministic 64-bit shift-based generator.

    State advances by the golden-gamma increment 0x9E3779B97F4A7C15; each
    output is finalized with xor-shift/multiply rounds (constants
    0xBF58476D1CE4E5B9 and 0x94D049BB133111EB).  Identical seeds give
    identical streams on every platform.
    """

    def __init__(self, seed):
        self._state = int(seed) & _MASK64

    def next_u64(self):
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self, lo=0.0, hi=1.0):
        """Uniform real in [lo, hi)."""
        u = (self.next_u64() >> 11) * 2.0 ** -53
        return lo + (hi - lo) * u


@dataclass(frozen=True)
class EncodingSpec:
    """Which encoding Hamiltonian to build and its random parameters."""

    kind: str  # "uniform" | "exponential" | "nonintegrable"
    n_qubits: int
    seed: int = 0
    delta: float = 0.73
    field_range: tuple = (-1.0, 1.0)
    coupling_range: tuple = (-3.0, 3.0)
    all_pairs: bool = True  # False restricts J_ij to nearest neighbours

    def __post_init__(self):
        if self.kind not in ("uniform", "exponential", "nonintegrable"):
            raise ValueError(f"unknown encoding kind {self.kind!r}")
        _check_qubits(self.n_qubits)
        for name in ("field_range", "coupling_range"):
            lo, hi = getattr(self, name)
            if not lo < hi:
                raise ValueError(f"{name} must satisfy lo < hi, got ({lo}, {hi})")


@dataclass(frozen=True)
class AnsatzHamiltonianSpec:
    """Random transverse-field Ising generator for the trainable circuit."""

    n_qubits: int
    seed: int = 0
    range: tuple = (-1.0, 1.0)

    def __post_init__(self):
        _check_qubits(self.n_qubits)
        lo, hi = self.range
        if not lo < hi:
            raise ValueError(f"range must satisfy lo < hi, got ({lo}, {hi})")


def _check_qubits(n):
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n}")


def embed_pauli(axis, site, n_qubits):
    """I^(site-1) (x) sigma_axis (x) I^(N-site), sites counted from 1."""
    if axis not in _PAULIS:
        raise ValueError(f"axis must be one of X, Y, Z, got {axis!r}")
    if not 1 <= site <= n_qubits:
        raise SiteOutOfRange(f"site {site} not in 1..{n_qubits}")
    out = np.ones((1, 1), dtype=complex)
    for i in range(1, n_qubits + 1):
        out = kron(out, _PAULIS[axis] if i == site else IDENTITY2)
    return out


def _pair_list(n_qubits, all_pairs=True):
    if all_pairs:
        return [(i, j) for i in range(1, n_qubits + 1) for j in range(i + 1, n_qubits + 1)]
    return [(i, i + 1) for i in range(1, n_qubits)]


def build_uniform(n_qubits):
    """Sum of Y over all sites (uniform rotation-angle encoding)."""
    _check_qubits(n_qubits)
    dim = 2 ** n_qubits
    h = np.zeros((dim, dim), dtype=complex)
    for i in range(1, n_qubits + 1):
        h += embed_pauli("Y", i, n_qubits)
    return h


def build_exponential(n_qubits):
    """Sum of 3^i Y_i (exponentially weighted encoding)."""
    _check_qubits(n_qubits)
    dim = 2 ** n_qubits
    h = np.zeros((dim, dim), dtype=complex)
    for i in range(1, n_qubits + 1):
        h += 3.0 ** i * embed_pauli("Y", i, n_qubits)
    return h


def build_nonintegrable(spec):
    """Random-field XXZ-type generator: B.sigma on each site plus
    J_ij (X_i X_j + Y_i Y_j + delta Z_i Z_j) over pairs i<j."""
    if spec.kind != "nonintegrable":
        raise ValueError(f"spec.kind must be 'nonintegrable', got {spec.kind!r}")
    n = spec.n_qubits
    rng = Prng(spec.seed)
    fields = {
        axis: [rng.uniform(*spec.field_range) for _ in range(n)] for axis in "XYZ"
    }
    pairs = _pair_list(n, spec.all_pairs)
    couplings = [rng.uniform(*spec.coupling_range) for _ in pairs]

    dim = 2 ** n
    h = np.zeros((dim, dim), dtype=complex)
    for axis in "XYZ":
        for i in range(1, n + 1):
            h += fields[axis][i - 1] * embed_pauli(axis, i, n)
    for (i, j), jij in zip(pairs, couplings):
        h += jij * (
            embed_pauli("X", i, n) @ embed_pauli("X", j, n)
            + embed_pauli("Y", i, n) @ embed_pauli("Y", j, n)
            + spec.delta * embed_pauli("Z", i, n) @ embed_pauli("Z", j, n)
        )
    return h


def build_ising_ansatz(spec):
    """Transverse-field Ising generator: a_i X_i plus J_ij Z_i Z_j over pairs."""
    n = spec.n_qubits
    rng = Prng(spec.seed)
    a = [rng.uniform(*spec.range) for _ in range(n)]
    pairs = _pair_list(n, all_pairs=True)
    couplings = [rng.uniform(*spec.range) for _ in pairs]

    dim = 2 ** n
    h = np.zeros((dim, dim), dtype=complex)
    for i in range(1, n + 1):
        h += a[i - 1] * embed_pauli("X", i, n)
    for (i, j), jij in zip(pairs, couplings):
        h += jij * embed_pauli("Z", i, n) @ embed_pauli("Z", j, n)
    return h


def build_encoding(spec):
    """Dispatch on spec.kind."""
    if spec.kind == "uniform":
        return build_uniform(spec.n_qubits)
    if spec.kind == "exponential":
        return build_exponential(spec.n_qubits)
    return build_nonintegrable(spec)

"""Quantum-circuit-learning simulator and spectrum-analysis toolkit."""

__version__ = "0.1.0"

from .circuit import (
    CircuitConfig,
    QuantumModel,
    build_ansatz,
    exact_fourier,
    model_eval,
    random_params,
    rx,
    rz,
    u_rand,
    u_rot,
)
from .hamiltonians import (
    AnsatzHamiltonianSpec,
    EncodingSpec,
    Prng,
    build_encoding,
    build_exponential,
    build_ising_ansatz,
    build_nonintegrable,
    build_uniform,
    embed_pauli,
)
from .numkernel import (
    HermitianEigenSystem,
    apply,
    basis_state,
    expectation,
    hermitian_eigendecompose,
    kron,
    unitary_exp,
)
from .spectral import (
    FrequencySpectrum,
    SpectrumStats,
    count_peaks,
    dft_spectrum,
    distinct_count,
    frequency_set,
    spacing_ratio,
    spectrum_stats,
)
from .thermalization import (
    EthWindow,
    QuenchSetup,
    expectation_trace,
    long_time_average_analytic,
    microcanonical_expectation,
    offdiagonal_bound,
    resonance_count,
    temporal_fluctuation_analytic,
    temporal_fluctuation_empirical,
)
from .training import (
    Dataset,
    OptimizerConfig,
    TargetFunction,
    TrainResult,
    cost,
    gen_dataset,
    nelder_mead,
    target_eval,
    train,
)

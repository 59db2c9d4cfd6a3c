"""Batch experiment runner.

Subcommands: spectrum, fourier, train, eth.  Each takes a JSON config
(schema-validated, unknown keys rejected), runs one computation per grid
point/seed, and writes CSV data files plus a JSON run manifest.  Identical
configs produce byte-identical data files.

Exit codes: 0 success, 2 config error, 3 numerical failure.
"""

import argparse
import csv
import hashlib
import importlib.resources
import json
import logging
import os
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor

import jsonschema
import numpy as np

from . import __version__
from .circuit import CircuitConfig, QuantumModel, exact_fourier, random_params
from .errors import ConfigError, EmptyWindow, QclError
from .hamiltonians import AnsatzHamiltonianSpec, EncodingSpec, build_encoding
from .numkernel import basis_state, hermitian_eigendecompose
from .spectral import (
    DEGENERACY_TOL,
    PEAK_REL_THRESHOLD,
    count_peaks,
    dft_spectrum,
    spectrum_stats,
)
from .thermalization import (
    EthWindow,
    QuenchSetup,
    long_time_average_analytic,
    microcanonical_expectation,
    minimum_frequency_gap,
    offdiagonal_bound,
    resonance_count,
    temporal_fluctuation_analytic,
    temporal_fluctuation_empirical,
)
from .training import OptimizerConfig, TargetFunction, gen_dataset, train

log = logging.getLogger("qclspec")

# Derived seeds keep the encoding, ansatz, and parameter streams disjoint
# while staying a pure function of the per-run seed.
ANSATZ_SEED_OFFSET = 10_000
THETA_SEED_OFFSET = 20_000


def _load_schema(command):
    text = (
        importlib.resources.files("qclspec.schemas")
        .joinpath(f"{command}.json")
        .read_text()
    )
    return json.loads(text)


def load_config(path, command):
    try:
        with open(path) as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        jsonschema.validate(config, _load_schema(command))
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"config schema violation: {exc.message}") from exc
    return config


def _atomic_write(path, text):
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qclspec-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_csv(path, header, rows):
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    _atomic_write(path, buf.getvalue())


def _encoding_spec(kind, n_qubits, seed, config):
    return EncodingSpec(
        kind=kind,
        n_qubits=n_qubits,
        seed=seed,
        delta=config.get("delta", 0.73),
        field_range=tuple(config.get("field_range", (-1.0, 1.0))),
        coupling_range=tuple(config.get("coupling_range", (-3.0, 3.0))),
        all_pairs=config.get("all_pairs", True),
    )


def _run_parallel(jobs, fn, items):
    if jobs <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _manifest(out_dir, command, config, outputs, elapsed):
    canonical = json.dumps(config, sort_keys=True).encode()
    manifest = {
        "command": command,
        "tool_version": __version__,
        "config_sha256": hashlib.sha256(canonical).hexdigest(),
        "outputs": sorted(outputs),
        "wall_seconds": elapsed,
    }
    for rel in manifest["outputs"]:
        path = os.path.join(out_dir, rel)
        if not (os.path.exists(path) and os.path.getsize(path) > 0):
            raise QclError(f"output file missing or empty: {rel}")
    _atomic_write(
        os.path.join(out_dir, "manifest.json"), json.dumps(manifest, indent=2) + "\n"
    )


def cmd_spectrum(config, out_dir, jobs):
    tol = config.get("tol", DEGENERACY_TOL)
    grid = [
        (kind, n, seed)
        for kind in config["kinds"]
        for n in config["n_qubits"]
        for seed in config["seeds"]
    ]

    def one(item):
        kind, n, seed = item
        try:
            stats = spectrum_stats(build_encoding(_encoding_spec(kind, n, seed, config)), tol)
        except QclError as exc:
            raise QclError(f"seed {seed} ({kind}, N={n}): {exc}") from exc
        return (kind, n, seed, stats.G, stats.K, stats.K_nonzero, stats.mean_spacing_ratio)

    rows = _run_parallel(jobs, one, grid)
    _write_csv(
        os.path.join(out_dir, "spectrum.csv"),
        [
            "encoding", "n_qubits", "seed", "G_distinct_eigenvalues",
            "K_distinct_frequencies_zero_inclusive", "K_nonzero",
            "mean_spacing_ratio_dimensionless",
        ],
        rows,
    )
    return ["spectrum.csv"]


def cmd_fourier(config, out_dir, jobs):
    kind = config["kind"]
    tol = config.get("tol", DEGENERACY_TOL)
    rel_threshold = config.get("rel_threshold", PEAK_REL_THRESHOLD)
    grid = [(n, seed) for n in config["n_qubits"] for seed in config["seeds"]]
    summary = {}
    outputs = []

    def one(item):
        n, seed = item
        try:
            cfg = CircuitConfig(
                n_qubits=n,
                depth=config.get("depth", 3),
                evolution_time=config.get("evolution_time", 1.0),
                ansatz_seed=seed + ANSATZ_SEED_OFFSET,
                observable_site=config.get("observable_site", 1),
            )
            h_enc = build_encoding(_encoding_spec(kind, n, seed, config))
            model = QuantumModel(h_enc, cfg)
            theta = random_params(cfg, seed + THETA_SEED_OFFSET)
            u = model.unitary(theta)

            freqs, mags = dft_spectrum(h_enc, u, tol=tol)
            peaks = count_peaks(mags, rel_threshold)
            spec = exact_fourier(h_enc, u)
            exact_above = int(
                np.count_nonzero(np.abs(spec.coeffs) > rel_threshold * np.abs(spec.coeffs).max())
            )
        except QclError as exc:
            raise QclError(f"seed {seed} ({kind}, N={n}): {exc}") from exc

        dft_name = f"fourier_N{n}_seed{seed}.csv"
        _write_csv(
            os.path.join(out_dir, dft_name),
            ["bin_frequency_rad_per_x", "magnitude_dimensionless"],
            list(zip(map(float, freqs), map(float, mags))),
        )
        exact_name = f"exact_N{n}_seed{seed}.csv"
        _write_csv(
            os.path.join(out_dir, exact_name),
            ["omega_rad_per_x", "coeff_real", "coeff_imag", "coeff_abs"],
            [
                (float(w), float(c.real), float(c.imag), float(abs(c)))
                for w, c in zip(spec.omegas, spec.coeffs)
            ],
        )
        summary[(n, seed)] = (peaks, exact_above, len(spec.omegas))
        return [dft_name, exact_name]

    for files in _run_parallel(jobs, one, grid):
        outputs.extend(files)

    _write_csv(
        os.path.join(out_dir, "fourier_peaks.csv"),
        ["n_qubits", "seed", "dft_peak_count", "exact_count_above_threshold",
         "K_exact_zero_inclusive"],
        [(n, seed) + summary[(n, seed)] for n, seed in grid],
    )
    outputs.append("fourier_peaks.csv")
    return outputs


def cmd_train(config, out_dir, jobs, restarts_override=None):
    target = TargetFunction(kind=config["target"])
    opt = config.get("optimizer", {})
    opt_cfg = OptimizerConfig(
        max_iters=opt.get("max_iters", 20000),
        f_tol=opt.get("f_tol", 1e-8),
        x_tol=opt.get("x_tol", 1e-8),
    )
    restarts = restarts_override if restarts_override is not None else config.get("restarts", 0)
    n = config["n_qubits"]
    cfg = CircuitConfig(
        n_qubits=n,
        depth=config.get("depth", 3),
        evolution_time=config.get("evolution_time", 1.0),
        ansatz_seed=config.get("ansatz_seed", 0),
        observable_site=config.get("observable_site", 1),
    )
    x_range = tuple(config.get("x_range", (-1.0, 1.0)))
    n_points = config.get("n_points", 100)
    grid = [(kind, seed) for kind in config["kinds"] for seed in config["seeds"]]
    outputs = []
    summary = {}

    def one(item):
        kind, seed = item
        spec = _encoding_spec(kind, n, config.get("encoding_seed", 0), config)
        try:
            result = train(
                spec, cfg, target,
                n_points=n_points, x_range=x_range,
                optimizer_cfg=opt_cfg, init_seed=seed, restarts=restarts,
            )
        except QclError as exc:
            raise QclError(f"seed {seed} ({kind}): {exc}") from exc

        stem = f"train_{kind}_seed{seed}"
        result_name = f"{stem}.json"
        _atomic_write(
            os.path.join(out_dir, result_name),
            json.dumps(
                {
                    "encoding": kind,
                    "seed": seed,
                    "theta_opt": list(result.theta_opt),
                    "cost_initial": result.cost_initial,
                    "cost_final": result.cost_final,
                    "evaluations": result.evaluations,
                },
                indent=2,
            ) + "\n",
        )
        dataset = gen_dataset(target, n_points, x_range)
        model = QuantumModel(build_encoding(spec), cfg)
        fit = model.evaluate(result.theta_opt, dataset.x)
        fit_name = f"{stem}_fit.csv"
        _write_csv(
            os.path.join(out_dir, fit_name),
            ["x_dimensionless", "target_dimensionless", "model_dimensionless"],
            list(zip(map(float, dataset.x), map(float, dataset.y), map(float, fit))),
        )
        trace_name = f"{stem}_trace.csv"
        _write_csv(
            os.path.join(out_dir, trace_name),
            ["iteration", "best_cost_dimensionless"],
            list(enumerate(map(float, result.cost_trace))),
        )
        summary[(kind, seed)] = (result.cost_initial, result.cost_final, result.evaluations)
        return [result_name, fit_name, trace_name]

    for files in _run_parallel(jobs, one, grid):
        outputs.extend(files)

    _write_csv(
        os.path.join(out_dir, "train_summary.csv"),
        ["encoding", "seed", "cost_initial_dimensionless",
         "cost_final_dimensionless", "evaluations"],
        [(kind, seed) + summary[(kind, seed)] for kind, seed in grid],
    )
    outputs.append("train_summary.csv")
    return outputs


def cmd_eth(config, out_dir, jobs):
    tol = config.get("tol", DEGENERACY_TOL)
    site = config.get("observable_site", 1)
    horizons = config.get("horizon_periods", [10000.0])
    samples = config.get("samples", 4096)
    window_fraction = config.get("window_fraction", 0.1)
    grid = [
        (kind, n, seed)
        for kind in config["kinds"]
        for n in config["n_qubits"]
        for seed in config["seeds"]
    ]

    def one(item):
        kind, n, seed = item
        try:
            from .hamiltonians import embed_pauli

            h = build_encoding(_encoding_spec(kind, n, seed, config))
            setup = QuenchSetup(h, basis_state(2 ** n), embed_pauli("Z", site, n))
            violations = resonance_count(setup.energies, tol)
            sigma2 = temporal_fluctuation_analytic(setup)
            bound = offdiagonal_bound(setup)
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                diag = long_time_average_analytic(setup, tol)
            delta_min = minimum_frequency_gap(setup.energies, tol)
            empirical = []
            for periods in horizons:
                total_time = periods * 2 * np.pi / delta_min
                empirical.append(
                    temporal_fluctuation_empirical(setup, total_time, samples)
                )
            e_mean = float(np.real(np.vdot(setup.initial_state, h @ setup.initial_state)))
            half_width = window_fraction * float(
                setup.energies[-1] - setup.energies[0]
            )
            try:
                micro = microcanonical_expectation(
                    setup, EthWindow(energy=e_mean, half_width=half_width)
                )
                deviation = abs(diag - micro)
            except EmptyWindow:
                micro, deviation = float("nan"), float("nan")
        except QclError as exc:
            raise QclError(f"seed {seed} ({kind}, N={n}): {exc}") from exc
        return (kind, n, seed, violations, sigma2, *empirical, bound, diag, micro, deviation)

    rows = _run_parallel(jobs, one, grid)
    header = (
        ["encoding", "n_qubits", "seed", "resonance_count",
         "sigma2_analytic_dimensionless"]
        + [f"sigma2_empirical_p{p:g}" for p in horizons]
        + ["offdiag_bound_dimensionless", "diag_ensemble_dimensionless",
           "microcanonical_dimensionless", "eth_deviation_dimensionless"]
    )
    _write_csv(os.path.join(out_dir, "eth.csv"), header, rows)
    return ["eth.csv"]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qclspec",
        description="Encoding expressivity, Fourier, training, and "
        "thermalization experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("spectrum", "distinct eigenvalue/frequency counts per encoding"),
        ("fourier", "DFT peak counting vs exact frequency content"),
        ("train", "regression training runs"),
        ("eth", "thermalization diagnostics"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--jobs", type=int, default=1, help="seed-level parallelism")
        p.add_argument("--out", default=None, help="output directory")
        if name == "train":
            p.add_argument(
                "--restarts", type=int, default=None,
                help="override restart count from the config",
            )
    return parser


def main(argv=None):
    logging.basicConfig(level=os.environ.get("QCLSPEC_LOG", "WARNING").upper())
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args.config, args.command)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    out_dir = args.out or config.get("out_dir") or "."
    os.makedirs(out_dir, exist_ok=True)
    start = time.monotonic()
    try:
        if args.command == "spectrum":
            outputs = cmd_spectrum(config, out_dir, args.jobs)
        elif args.command == "fourier":
            outputs = cmd_fourier(config, out_dir, args.jobs)
        elif args.command == "train":
            outputs = cmd_train(config, out_dir, args.jobs, args.restarts)
        else:
            outputs = cmd_eth(config, out_dir, args.jobs)
        _manifest(out_dir, args.command, config, outputs, time.monotonic() - start)
    except (QclError, np.linalg.LinAlgError, ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Supervised regression of target functions with a Nelder-Mead optimizer.

The cost is the half sum of squared errors over the training grid; the
optimizer is a from-scratch simplex method with the standard
reflect/expand/contract/shrink moves.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import QuantumModel
from .errors import ObjectiveNonFinite
from .hamiltonians import Prng, build_encoding


@dataclass(frozen=True)
class TargetFunction:
    """Target to regress: 'gaussian' (e^{-10 x^2}), 'triangle' (period 2,
    amplitude 1, peak +1 at x = 0), or 'tabulated' (linear interpolation)."""

    kind: str
    xs: tuple = ()
    ys: tuple = ()

    def __post_init__(self):
        if self.kind not in ("gaussian", "triangle", "tabulated"):
            raise ValueError(f"unknown target kind {self.kind!r}")
        if self.kind == "tabulated" and len(self.xs) != len(self.ys):
            raise ValueError("tabulated target needs matching xs/ys")


def target_eval(target, x):
    if target.kind == "gaussian":
        return math.exp(-10.0 * x * x)
    if target.kind == "triangle":
        # peak +1 at x = 0, troughs -1 at x = +-1, linear in between
        return 1.0 - 2.0 * abs(((x + 1.0) % 2.0) - 1.0)
    return float(np.interp(x, target.xs, target.ys))


@dataclass(frozen=True)
class Dataset:
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        if len(self.x) < 2 or len(self.x) != len(self.y):
            raise ValueError("dataset needs >= 2 pairs with matching lengths")
        if len(np.unique(self.x)) != len(self.x):
            raise ValueError("x values must be distinct")
        if not np.all(np.isfinite(self.y)):
            raise ValueError("targets must be finite")


def gen_dataset(target, n_points, x_range=(-1.0, 1.0)):
    """Equally spaced grid over [a, b] inclusive with exact target values."""
    a, b = x_range
    if not a < b:
        raise ValueError("x_range must satisfy a < b")
    xs = np.linspace(a, b, n_points)
    ys = np.array([target_eval(target, x) for x in xs])
    return Dataset(x=xs, y=ys)


def cost(theta, dataset, model):
    """Half sum of squared residuals of the quantum model on the dataset."""
    residual = model.evaluate(theta, dataset.x) - dataset.y
    return 0.5 * float(residual @ residual)


@dataclass(frozen=True)
class OptimizerConfig:
    max_iters: int = 20000  # bound on objective evaluations
    f_tol: float = 1e-8
    x_tol: float = 1e-8
    alpha: float = 1.0  # reflection
    gamma: float = 2.0  # expansion
    rho: float = 0.5  # contraction
    sigma: float = 0.5  # shrink
    seed: int = 0

    def __post_init__(self):
        if not (self.alpha > 0 and self.gamma > 1 and 0 < self.rho < 1 and 0 < self.sigma < 1):
            raise ValueError("optimizer coefficients out of range")


@dataclass
class TrainResult:
    theta_opt: np.ndarray
    cost_initial: float
    cost_final: float
    cost_trace: list = field(default_factory=list)
    evaluations: int = 0


def nelder_mead(objective, theta0, cfg=None):
    """Minimize a real function of a real vector by the simplex method.

    The initial simplex perturbs each coordinate of theta0 by
    +0.05 * max(1, |theta0_i|).  Terminates when the evaluation budget is
    spent or when both the cost spread across the simplex falls below f_tol
    and the largest vertex displacement falls below x_tol.
    """
    cfg = cfg or OptimizerConfig()
    theta0 = np.asarray(theta0, dtype=float)
    n = len(theta0)
    evals = 0

    def f(v):
        nonlocal evals
        evals += 1
        value = float(objective(v))
        if not math.isfinite(value):
            raise ObjectiveNonFinite(f"objective returned {value} at {v!r}")
        return value

    verts = [theta0.copy()]
    for i in range(n):
        v = theta0.copy()
        v[i] += 0.05 * max(1.0, abs(theta0[i]))
        verts.append(v)
    verts = np.array(verts)
    costs = np.array([f(v) for v in verts])
    cost_initial = costs[0]

    trace = []
    while True:
        order = np.argsort(costs, kind="stable")
        verts, costs = verts[order], costs[order]
        trace.append(costs[0])

        spread = costs[-1] - costs[0]
        displacement = np.max(np.abs(verts - verts[0])) if n else 0.0
        if spread < cfg.f_tol and displacement < cfg.x_tol:
            break
        if evals >= cfg.max_iters:
            break

        centroid = verts[:-1].mean(axis=0)
        reflected = centroid + cfg.alpha * (centroid - verts[-1])
        f_r = f(reflected)
        if costs[0] <= f_r < costs[-2]:
            verts[-1], costs[-1] = reflected, f_r
            continue
        if f_r < costs[0]:
            expanded = centroid + cfg.gamma * (reflected - centroid)
            f_e = f(expanded)
            if f_e < f_r:
                verts[-1], costs[-1] = expanded, f_e
            else:
                verts[-1], costs[-1] = reflected, f_r
            continue
        contracted = centroid + cfg.rho * (verts[-1] - centroid)
        f_c = f(contracted)
        if f_c < costs[-1]:
            verts[-1], costs[-1] = contracted, f_c
            continue
        for i in range(1, n + 1):
            verts[i] = verts[0] + cfg.sigma * (verts[i] - verts[0])
            costs[i] = f(verts[i])

    best = int(np.argmin(costs))
    return TrainResult(
        theta_opt=verts[best].copy(),
        cost_initial=float(cost_initial),
        cost_final=float(costs[best]),
        cost_trace=[float(c) for c in trace],
        evaluations=evals,
    )


def train(
    encoding_spec,
    circuit_cfg,
    target,
    n_points=100,
    x_range=(-1.0, 1.0),
    optimizer_cfg=None,
    init_seed=0,
    restarts=0,
):
    """End-to-end training run; fully deterministic given seeds and configs.

    With restarts > 0, each restart draws a fresh initial parameter vector
    from the same seeded stream and the best result is kept.
    """
    optimizer_cfg = optimizer_cfg or OptimizerConfig()
    model = QuantumModel(build_encoding(encoding_spec), circuit_cfg)
    dataset = gen_dataset(target, n_points, x_range)

    def objective(theta):
        return cost(theta, dataset, model)

    rng = Prng(init_seed)
    best = None
    for _ in range(restarts + 1):
        theta0 = np.array(
            [rng.uniform(0.0, 2 * np.pi) for _ in range(circuit_cfg.n_params)]
        )
        result = nelder_mead(objective, theta0, optimizer_cfg)
        if best is None or result.cost_final < best.cost_final:
            best = result
    return best

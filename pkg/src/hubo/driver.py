"""Outer optimisation loops and regret accounting.

Three loops share one engine: the expand-and-translate algorithm ("hubo"),
its hypercube-restricted high-dimensional variant ("hdhubo"), and a doubling
baseline ("vol2") whose box never translates and whose volume doubles every
3d iterations.  Every random draw comes from a stream derived from the run
seed by a fixed label, so traces are bitwise reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .acquisition import (
    BetaSchedule,
    MaximizerConfig,
    beta,
    maximize_over_box,
    maximize_over_cubes,
)
from .cubes import HdConfig, membership, sample_cubes
from .gp import Dataset, FitConfig, fit_mle
from .space import ExpansionConfig, SearchBox, expand, initial_box, translate

__all__ = [
    "ALGORITHMS",
    "Objective",
    "RunConfig",
    "IterationRecord",
    "RunTrace",
    "default_n_init",
    "run",
    "run_hubo",
    "run_hdhubo",
    "run_vol2",
    "compute_regret",
    "sublinearity_diagnostic",
]

ALGORITHMS = ("hubo", "hdhubo", "vol2")

# Per-run RNG stream labels; each stream is seeded as [run_seed, label, ...]
# so the streams never collide and adding draws to one cannot shift another.
_STREAM_NOISE = 0
_STREAM_INIT = 1
_STREAM_CUBES = 2
_STREAM_MAXIMIZER = 3


@dataclass(frozen=True)
class Objective:
    """A maximization target: deterministic f plus a Gaussian noise level.

    The driver adds the observation noise itself (y = f(x) + noise_std * z)
    from its own stream; `fn` must be pure.  Optimum metadata is optional and
    only needed for regret.
    """

    fn: Callable[[np.ndarray], float]
    dim: int
    noise_std: float = 0.0
    optimum_value: float | None = None
    optimum_point: np.ndarray | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.noise_std < 0.0:
            raise ValueError(f"noise_std must be >= 0, got {self.noise_std}")
        if self.optimum_point is not None:
            pt = np.asarray(self.optimum_point, dtype=np.float64).copy()
            pt.setflags(write=False)
            if pt.shape != (self.dim,):
                raise ValueError(
                    f"optimum_point has shape {pt.shape}, expected ({self.dim},)"
                )
            object.__setattr__(self, "optimum_point", pt)

    def eval(self, x: np.ndarray) -> float:
        return float(self.fn(x))

    @classmethod
    def from_benchmark(cls, bench, noise_std: float = 0.0) -> "Objective":
        return cls(
            fn=bench.eval,
            dim=bench.dim,
            noise_std=noise_std,
            optimum_value=bench.optimum_value,
            optimum_point=bench.optimum_point,
        )


@dataclass(frozen=True)
class RunConfig:
    """Everything one run needs besides the objective."""

    expansion: ExpansionConfig
    beta: BetaSchedule
    maximizer: MaximizerConfig
    budget_T: int
    n_init: int
    seed: int
    algorithm: str
    hd: HdConfig | None = None
    kernel_family: str = "se"
    use_noiseless_incumbent: bool = False

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(
                f"unknown algorithm {self.algorithm!r}; choose from {ALGORITHMS}"
            )
        if self.budget_T < 0:
            raise ValueError(f"budget_T must be >= 0, got {self.budget_T}")
        if self.n_init < 2:
            raise ValueError(f"n_init must be >= 2, got {self.n_init}")
        if (self.hd is not None) != (self.algorithm == "hdhubo"):
            raise ValueError("hd config must be present exactly for hdhubo runs")
        expected_variant = "hdhubo" if self.algorithm == "hdhubo" else "hubo"
        if self.beta.variant != expected_variant:
            raise ValueError(
                f"{self.algorithm} needs beta variant {expected_variant!r}, "
                f"got {self.beta.variant!r}"
            )
        if self.beta.dim != self.expansion.dim:
            raise ValueError("beta schedule and expansion disagree on dim")


@dataclass
class IterationRecord:
    """One observation: t = 0 marks initial-design points, t >= 1 BO steps.

    r_t/R_t/log_dist stay None until compute_regret fills them.
    """

    t: int
    x: np.ndarray
    y: float
    best_y: float
    side: float
    n_cubes: int | None = None
    wall_ms: float = 0.0
    r_t: float | None = None
    R_t: float | None = None
    log_dist: float | None = None


@dataclass
class RunTrace:
    """Chronological record of a run; `incomplete` is set when the objective
    raised and the trace stops early."""

    algorithm: str
    seed: int
    dim: int
    n_init: int
    records: list[IterationRecord] = field(default_factory=list)
    incomplete: bool = False
    error: str | None = None

    @property
    def best_y(self) -> float:
        if not self.records:
            return -math.inf
        return self.records[-1].best_y

    @property
    def best_x(self) -> np.ndarray | None:
        """The earliest point achieving the final incumbent value."""
        if not self.records:
            return None
        target = self.records[-1].best_y
        for rec in self.records:
            if rec.best_y == target:
                return rec.x
        return None


def default_n_init(dim: int) -> int:
    """Initial-design size max(3, d+1): enough points for a nondegenerate fit."""
    return max(3, dim + 1)


def _derive_seed(*label: int) -> int:
    return int(np.random.SeedSequence(list(label)).generate_state(1, np.uint64)[0])


def run_hubo(obj: Objective, cfg: RunConfig) -> RunTrace:
    if cfg.algorithm != "hubo":
        raise ValueError(f"run_hubo needs algorithm 'hubo', got {cfg.algorithm!r}")
    return run(obj, cfg)


def run_hdhubo(obj: Objective, cfg: RunConfig) -> RunTrace:
    if cfg.algorithm != "hdhubo":
        raise ValueError(
            f"run_hdhubo needs algorithm 'hdhubo', got {cfg.algorithm!r}"
        )
    return run(obj, cfg)


def run_vol2(obj: Objective, cfg: RunConfig) -> RunTrace:
    if cfg.algorithm != "vol2":
        raise ValueError(f"run_vol2 needs algorithm 'vol2', got {cfg.algorithm!r}")
    return run(obj, cfg)


def run(obj: Objective, cfg: RunConfig) -> RunTrace:
    """Execute one run: n_init uniform points in X0, then budget_T BO steps.

    Each step refits the GP by MLE, updates the search region per the
    algorithm, maximizes UCB inside it, and observes f plus fresh noise.  If
    the objective raises, the partial trace is returned with incomplete=True.
    """
    d = obj.dim
    if cfg.expansion.dim != d:
        raise ValueError(
            f"expansion dim {cfg.expansion.dim} != objective dim {d}"
        )
    rng_noise = np.random.default_rng([cfg.seed, _STREAM_NOISE])
    rng_init = np.random.default_rng([cfg.seed, _STREAM_INIT])
    rng_cubes = None
    if cfg.algorithm == "hdhubo":
        rng_cubes = np.random.default_rng([cfg.seed, _STREAM_CUBES, cfg.hd.seed])

    trace = RunTrace(algorithm=cfg.algorithm, seed=cfg.seed, dim=d, n_init=cfg.n_init)
    box = initial_box(cfg.expansion)
    data = Dataset.empty(d)
    best_inc = -math.inf
    best_x: np.ndarray | None = None

    def observe(x: np.ndarray) -> tuple[float, float] | None:
        """(f, y) at x, or None after recording an evaluation failure."""
        try:
            f = obj.eval(x)
        except Exception as exc:  # objective failure -> partial trace
            trace.incomplete = True
            trace.error = f"{type(exc).__name__}: {exc}"
            return None
        y = f
        if obj.noise_std > 0.0:
            y = f + obj.noise_std * float(rng_noise.standard_normal())
        return f, y

    init_points = rng_init.uniform(box.lower, box.upper, size=(cfg.n_init, d))
    for k in range(cfg.n_init):
        started = time.perf_counter()
        x = init_points[k].copy()
        obs = observe(x)
        if obs is None:
            return trace
        f, y = obs
        data = data.append(x, y)
        inc = f if cfg.use_noiseless_incumbent else y
        if inc > best_inc:
            best_inc = inc
            best_x = x.copy()
        trace.records.append(
            IterationRecord(
                t=0,
                x=x,
                y=y,
                best_y=best_inc,
                side=box.side,
                wall_ms=(time.perf_counter() - started) * 1e3,
            )
        )

    for t in range(1, cfg.budget_T + 1):
        started = time.perf_counter()
        model = fit_mle(data, FitConfig(side_length=box.side, family=cfg.kernel_family))

        if cfg.algorithm == "vol2":
            doublings = t // (3 * d)
            side_t = cfg.expansion.initial_side * 2.0 ** (doublings / d)
            box = SearchBox(cfg.expansion.x0_center, 0.5 * side_t, d)
        else:
            box = translate(expand(box, t, cfg.expansion), best_x, cfg.expansion)

        if cfg.beta.variant == "hubo":
            # vol2 substitutes its current geometric side here as well
            beta_t = beta(t, cfg.beta, side=box.side)
        else:
            beta_t = beta(t, cfg.beta)

        mcfg = replace(cfg.maximizer, seed=_derive_seed(cfg.seed, _STREAM_MAXIMIZER, t))
        n_cubes: int | None = None
        if cfg.algorithm == "hdhubo":
            cube_set = sample_cubes(box, t, cfg.hd, rng_cubes)
            n_cubes = cube_set.n
            x, _ = maximize_over_cubes(model, data, beta_t, cube_set, mcfg)
            if not membership(cube_set, x):
                raise RuntimeError(
                    f"maximizer left the cube union at t={t}: {x.tolist()}"
                )
        else:
            x, _ = maximize_over_box(model, data, beta_t, box, mcfg)
            if not box.contains(x):
                raise RuntimeError(
                    f"maximizer left the search box at t={t}: {x.tolist()}"
                )

        obs = observe(x)
        if obs is None:
            return trace
        f, y = obs
        data = data.append(x, y)
        inc = f if cfg.use_noiseless_incumbent else y
        if inc > best_inc:
            best_inc = inc
            best_x = x.copy()
        trace.records.append(
            IterationRecord(
                t=t,
                x=x,
                y=y,
                best_y=best_inc,
                side=box.side,
                n_cubes=n_cubes,
                wall_ms=(time.perf_counter() - started) * 1e3,
            )
        )
    return trace


def compute_regret(trace: RunTrace, obj: Objective) -> RunTrace:
    """Fill regret columns in place (and return the trace).

    r_t and R_t cover BO rows (t >= 1) and use noiseless re-evaluation of f;
    log_dist = log10(optimum - best noiseless f so far) covers every row and
    is floored at -12 once the gap reaches 1e-12.
    """
    if obj.optimum_value is None:
        raise ValueError("compute_regret needs obj.optimum_value")
    opt = float(obj.optimum_value)
    best_f = -math.inf
    total = 0.0
    for rec in trace.records:
        f = obj.eval(rec.x)
        best_f = max(best_f, f)
        gap = opt - best_f
        rec.log_dist = -12.0 if gap <= 1e-12 else math.log10(gap)
        if rec.t >= 1:
            r = opt - f
            rec.r_t = r
            total += r
            rec.R_t = total
    return trace


def sublinearity_diagnostic(trace: RunTrace) -> list[tuple[int, float]]:
    """The average-regret series (t, R_t/t) over BO rows; needs regret filled."""
    pts = [
        (rec.t, rec.R_t / rec.t)
        for rec in trace.records
        if rec.t >= 1 and rec.R_t is not None
    ]
    if not pts:
        raise ValueError("trace has no filled regret rows; run compute_regret first")
    return pts

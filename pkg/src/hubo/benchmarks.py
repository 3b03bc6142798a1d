"""Synthetic test functions (maximization form) and experiment geometry.

All functions are the standard minimization benchmarks negated, so every
optimum is a maximum.  `initial_space` implements the benchmark protocol:
a small start box X0 dropped uniformly at random inside the function domain,
with the center-translation region C_initial ten times as wide, clipped to
the domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .driver import IterationRecord, RunTrace
from .space import ExpansionConfig, SearchBox

__all__ = [
    "BenchmarkFunction",
    "InitialSpace",
    "BENCHMARK_NAMES",
    "beale",
    "hartmann3",
    "hartmann6",
    "ackley",
    "levy",
    "make_benchmark",
    "initial_space",
    "random_search",
]

BENCHMARK_NAMES = ("beale", "hartmann3", "hartmann6", "ackley", "levy")

# Streams of the shared run seed (same labels the BO driver uses, so a random
# baseline and a BO run with the same seed draw from disjoint streams).
_STREAM_NOISE = 0
_STREAM_INIT = 1
_STREAM_PLACEMENT = 4


@dataclass(frozen=True)
class BenchmarkFunction:
    """A maximization test problem on an axis-aligned box domain."""

    name: str
    dim: int
    lower: np.ndarray
    upper: np.ndarray
    fn: Callable[[np.ndarray], float]
    optimum_value: float
    optimum_point: np.ndarray

    def __post_init__(self):
        for field_name in ("lower", "upper", "optimum_point"):
            arr = np.asarray(getattr(self, field_name), dtype=np.float64).copy()
            arr.setflags(write=False)
            object.__setattr__(self, field_name, arr)
        if self.lower.shape != (self.dim,) or self.upper.shape != (self.dim,):
            raise ValueError("domain bounds must have shape (dim,)")
        if not np.all(self.upper > self.lower):
            raise ValueError("need upper > lower in every dimension")

    def eval(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.dim,):
            raise ValueError(f"point has shape {x.shape}, expected ({self.dim},)")
        return float(self.fn(x))


def beale(x: np.ndarray) -> float:
    """Negated Beale function on [-4.5, 4.5]^2; maximum 0 at (3, 0.5)."""
    x1, x2 = float(x[0]), float(x[1])
    t1 = 1.5 - x1 + x1 * x2
    t2 = 2.25 - x1 + x1 * x2 * x2
    t3 = 2.625 - x1 + x1 * x2 * x2 * x2
    return -(t1 * t1 + t2 * t2 + t3 * t3)


_HARTMANN_COEF = np.array([1.0, 1.2, 3.0, 3.2])

_HARTMANN3_A = np.array(
    [
        [3.0, 10.0, 30.0],
        [0.1, 10.0, 35.0],
        [3.0, 10.0, 30.0],
        [0.1, 10.0, 35.0],
    ]
)
_HARTMANN3_P = np.array(
    [
        [0.3689, 0.1170, 0.2673],
        [0.4699, 0.4387, 0.7470],
        [0.1091, 0.8732, 0.5547],
        [0.0381, 0.5743, 0.8828],
    ]
)

_HARTMANN6_A = np.array(
    [
        [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
        [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
        [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
        [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
    ]
)
_HARTMANN6_P = np.array(
    [
        [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
        [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
        [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
        [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
    ]
)

# Maximizers of the (negated) Hartmann functions for the coefficient tables
# above, polished to full float64 precision with a dense multistart check.
_HARTMANN3_OPT_POINT = np.array(
    [0.11458887930324516, 0.5556488952654733, 0.8525469855538348]
)
_HARTMANN3_OPT_VALUE = 3.862779787332663
_HARTMANN6_OPT_POINT = np.array(
    [
        0.20168951037794658,
        0.15001069146456325,
        0.4768739733706766,
        0.2753324288543796,
        0.3116516165632252,
        0.6573005308464771,
    ]
)
_HARTMANN6_OPT_VALUE = 3.322368011415515


def _hartmann(x: np.ndarray, A: np.ndarray, P: np.ndarray) -> float:
    inner = np.sum(A * (x[None, :] - P) ** 2, axis=1)
    return float(np.sum(_HARTMANN_COEF * np.exp(-inner)))


def hartmann3(x: np.ndarray) -> float:
    """Hartmann 3-d on [0, 1]^3 in maximization form (already a sum of bumps)."""
    return _hartmann(np.asarray(x, dtype=np.float64), _HARTMANN3_A, _HARTMANN3_P)


def hartmann6(x: np.ndarray) -> float:
    """Hartmann 6-d on [0, 1]^6 in maximization form."""
    return _hartmann(np.asarray(x, dtype=np.float64), _HARTMANN6_A, _HARTMANN6_P)


def ackley(x: np.ndarray) -> float:
    """Negated Ackley (a=20, b=0.2, c=2*pi) on [-32.768, 32.768]^d; max 0 at 0."""
    x = np.asarray(x, dtype=np.float64)
    d = x.size
    s1 = -20.0 * math.exp(-0.2 * math.sqrt(float(np.sum(x * x)) / d))
    s2 = -math.exp(float(np.sum(np.cos(2.0 * math.pi * x))) / d)
    return -(s1 + s2 + 20.0 + math.e)


def levy(x: np.ndarray) -> float:
    """Negated Levy function on [-10, 10]^d; maximum 0 at (1, ..., 1)."""
    x = np.asarray(x, dtype=np.float64)
    w = 1.0 + (x - 1.0) / 4.0
    head = math.sin(math.pi * w[0]) ** 2
    mid = np.sum((w[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(math.pi * w[:-1] + 1.0) ** 2))
    tail = (w[-1] - 1.0) ** 2 * (1.0 + math.sin(2.0 * math.pi * w[-1]) ** 2)
    return -float(head + mid + tail)


def make_benchmark(name: str, dim: int | None = None) -> BenchmarkFunction:
    """Build a benchmark by name.

    `dim` is required for the scalable functions (ackley, levy) and must
    match the fixed dimension of the others when given.
    """
    name = name.lower()
    if name == "beale":
        fixed = 2
        if dim is not None and dim != fixed:
            raise ValueError(f"beale is 2-dimensional, got dim={dim}")
        return BenchmarkFunction(
            "beale", 2, [-4.5, -4.5], [4.5, 4.5], beale, 0.0, [3.0, 0.5]
        )
    if name == "hartmann3":
        if dim is not None and dim != 3:
            raise ValueError(f"hartmann3 is 3-dimensional, got dim={dim}")
        return BenchmarkFunction(
            "hartmann3",
            3,
            np.zeros(3),
            np.ones(3),
            hartmann3,
            _HARTMANN3_OPT_VALUE,
            _HARTMANN3_OPT_POINT,
        )
    if name == "hartmann6":
        if dim is not None and dim != 6:
            raise ValueError(f"hartmann6 is 6-dimensional, got dim={dim}")
        return BenchmarkFunction(
            "hartmann6",
            6,
            np.zeros(6),
            np.ones(6),
            hartmann6,
            _HARTMANN6_OPT_VALUE,
            _HARTMANN6_OPT_POINT,
        )
    if name in ("ackley", "levy"):
        if dim is None:
            raise ValueError(f"{name} needs an explicit dim")
        if dim < 1:
            raise ValueError(f"dim must be >= 1, got {dim}")
        if name == "ackley":
            bound = 32.768
            return BenchmarkFunction(
                "ackley",
                dim,
                np.full(dim, -bound),
                np.full(dim, bound),
                ackley,
                0.0,
                np.zeros(dim),
            )
        return BenchmarkFunction(
            "levy", dim, np.full(dim, -10.0), np.full(dim, 10.0), levy, 0.0, np.ones(dim)
        )
    raise ValueError(f"unknown benchmark {name!r}; choose from {BENCHMARK_NAMES}")


@dataclass(frozen=True)
class InitialSpace:
    """Randomized start geometry for one benchmark run.

    X0 is the hypercube of side `b - a` centered at x0_center; [c_min, c_max]
    is the region the box center may translate into.  The c-bounds are the
    10x concentric hypercube intersected with the function domain, so they
    can differ per dimension near the boundary.
    """

    dim: int
    a: float
    b: float
    x0_center: np.ndarray
    c_min: np.ndarray
    c_max: np.ndarray

    def __post_init__(self):
        for field_name in ("x0_center", "c_min", "c_max"):
            arr = np.asarray(getattr(self, field_name), dtype=np.float64).copy()
            arr.setflags(write=False)
            object.__setattr__(self, field_name, arr)

    @property
    def side(self) -> float:
        return self.b - self.a

    def to_expansion(self, alpha: float) -> ExpansionConfig:
        return ExpansionConfig(
            a=self.a,
            b=self.b,
            alpha=alpha,
            c_min=self.c_min,
            c_max=self.c_max,
            dim=self.dim,
            x0_center=self.x0_center,
        )


def initial_space(bench: BenchmarkFunction, fraction: float, seed: int) -> InitialSpace:
    """Place X0 uniformly inside the benchmark domain.

    X0's side is `fraction` times the domain side; its center is drawn so the
    whole of X0 stays inside the domain.  C_initial is concentric with ten
    times the side, clipped to the domain (which always keeps X0 inside it).
    """
    if not (0.0 < fraction <= 1.0):
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    widths = bench.upper - bench.lower
    if not np.all(widths == widths[0]):
        raise ValueError("benchmark domain must have equal per-dimension widths")
    side = fraction * float(widths[0])
    rng = np.random.default_rng([seed, _STREAM_PLACEMENT])
    center = rng.uniform(bench.lower + 0.5 * side, bench.upper - 0.5 * side)
    c_min = np.maximum(center - 5.0 * side, bench.lower)
    c_max = np.minimum(center + 5.0 * side, bench.upper)
    return InitialSpace(
        dim=bench.dim, a=0.0, b=side, x0_center=center, c_min=c_min, c_max=c_max
    )


def random_search(obj, box, T: int, seed: int) -> RunTrace:
    """Uniform random baseline: T draws from `box`, same noise model as a run.

    `obj` needs .eval(x) and .dim (a BenchmarkFunction works; its noise_std
    is taken as 0 when absent).  `box` is a SearchBox or any object with
    .lower/.upper arrays, so a non-cubic translation region works too.  The
    trace has one record per draw (t = 1..T) and uses the same per-seed
    streams as the BO driver, so baselines pair with runs.
    """
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    lower = np.asarray(box.lower, dtype=np.float64)
    upper = np.asarray(box.upper, dtype=np.float64)
    dim = int(getattr(obj, "dim"))
    side = float(np.max(upper - lower))
    noise_std = float(getattr(obj, "noise_std", 0.0) or 0.0)
    rng_points = np.random.default_rng([seed, _STREAM_INIT])
    rng_noise = np.random.default_rng([seed, _STREAM_NOISE])

    trace = RunTrace(algorithm="random", seed=seed, dim=dim, n_init=0)
    X = rng_points.uniform(lower, upper, size=(T, dim))
    best = -math.inf
    for i in range(T):
        x = X[i].copy()
        y = float(obj.eval(x))
        if noise_std > 0.0:
            y += noise_std * float(rng_noise.standard_normal())
        best = max(best, y)
        trace.records.append(
            IterationRecord(t=i + 1, x=x, y=y, best_y=best, side=side)
        )
    return trace


def domain_box(bench: BenchmarkFunction) -> SearchBox:
    """The full benchmark domain as a SearchBox (domains are hypercubes)."""
    widths = bench.upper - bench.lower
    return SearchBox(
        0.5 * (bench.lower + bench.upper), 0.5 * float(widths[0]), bench.dim
    )

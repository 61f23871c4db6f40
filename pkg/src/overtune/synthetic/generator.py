"""Synthetic HPO runs over a finite grid with a known test surface."""

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from enum import StrEnum
from typing import Iterable, Sequence

import numpy as np

from overtune.errors import ParameterError
from overtune.models import HpoRun, MetricSpec, Orientation, RunKey, ScoreTrajectory
from overtune.reporting import format_float
from overtune.rng import StreamTag, substream

LOGGER = logging.getLogger(__name__)

SYNTHETIC_STUDY = "synthetic"
SYNTHETIC_METRIC = "error"


class SurfaceKind(StrEnum):
    IID_UNIFORM = "iid_uniform"
    IID_NORMAL = "iid_normal"
    QUADRATIC_1D = "quadratic_1d"


_DEFAULT_PARAMS = {
    SurfaceKind.IID_UNIFORM: (0.0, 1.0),
    SurfaceKind.IID_NORMAL: (0.5, 0.1),
    SurfaceKind.QUADRATIC_1D: (1.0, 0.0),
}


@dataclass(frozen=True)
class TestSurface:
    """
    True test error of every configuration in the grid.

    iid_uniform(lo, hi) and iid_normal(mu, sd) draw one value per
    configuration. quadratic_1d(depth, floor) places the configurations on
    an even grid over [-1, 1] with error floor + depth * x**2.
    """

    __test__ = False

    kind: SurfaceKind
    a: float
    b: float

    @classmethod
    def iid_uniform(cls, lo: float = 0.0, hi: float = 1.0) -> "TestSurface":
        return cls(SurfaceKind.IID_UNIFORM, float(lo), float(hi))

    @classmethod
    def iid_normal(cls, mu: float = 0.5, sd: float = 0.1) -> "TestSurface":
        return cls(SurfaceKind.IID_NORMAL, float(mu), float(sd))

    @classmethod
    def quadratic_1d(cls, depth: float = 1.0, floor: float = 0.0) -> "TestSurface":
        return cls(SurfaceKind.QUADRATIC_1D, float(depth), float(floor))

    @classmethod
    def parse(cls, text: str) -> "TestSurface":
        """
        Parse ``kind`` or ``kind:a,b`` (e.g. ``iid_uniform:0,1``).

        Raises:
            ParameterError: On an unknown kind or malformed parameters (INVALID_SPEC)
        """
        name, _, params = text.strip().partition(":")
        try:
            kind = SurfaceKind(name.strip())
        except ValueError:
            choices = ", ".join(k.value for k in SurfaceKind)
            raise ParameterError(f"unknown surface {name!r}; expected one of {choices}", "INVALID_SPEC")
        if not params:
            return cls(kind, *_DEFAULT_PARAMS[kind])
        try:
            a, b = (float(p) for p in params.split(","))
        except ValueError:
            raise ParameterError(f"surface parameters must be two numbers, got {params!r}", "INVALID_SPEC")
        return cls(kind, a, b)

    def label(self) -> str:
        return f"{self.kind.value}({format_float(self.a)},{format_float(self.b)})"

    def validate(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ParameterError(f"surface {self.label()} has non-finite parameters", "INVALID_SPEC")
        if self.kind == SurfaceKind.IID_UNIFORM and self.a > self.b:
            raise ParameterError(f"surface {self.label()}: lo exceeds hi", "INVALID_SPEC")
        if self.kind == SurfaceKind.IID_NORMAL and self.b < 0:
            raise ParameterError(f"surface {self.label()}: negative sd", "INVALID_SPEC")
        if self.kind == SurfaceKind.QUADRATIC_1D and self.a < 0:
            raise ParameterError(f"surface {self.label()}: negative depth", "INVALID_SPEC")

    def draw(self, n: int, rng: np.random.Generator) -> np.ndarray:
        if self.kind == SurfaceKind.IID_UNIFORM:
            return rng.uniform(self.a, self.b, size=n)
        if self.kind == SurfaceKind.IID_NORMAL:
            return rng.normal(self.a, self.b, size=n)
        x = np.linspace(-1.0, 1.0, n) if n > 1 else np.zeros(1)
        return self.b + self.a * x**2


@dataclass(frozen=True)
class SyntheticSpec:
    """Grid size, test surface and split-noise parameters of one synthetic run."""

    n_configs: int = 1000
    test_surface: TestSurface = TestSurface.iid_uniform()
    sigma_shared: float = 0.0
    sigma_indep: float = 0.1
    k_folds: int = 1
    reshuffled: bool = False
    trajectory_len: int = 500
    seed: int = 42

    def validate(self) -> None:
        """
        Raises:
            ParameterError: If any parameter is out of range (INVALID_SPEC)
        """
        if self.n_configs < 1:
            raise ParameterError(f"n_configs must be >= 1, got {self.n_configs}", "INVALID_SPEC")
        if not 1 <= self.trajectory_len <= self.n_configs:
            raise ParameterError(
                f"trajectory length {self.trajectory_len} must lie in 1..n_configs ({self.n_configs})",
                "INVALID_SPEC",
            )
        for name in ("sigma_shared", "sigma_indep"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ParameterError(f"{name} must be a finite value >= 0, got {value!r}", "INVALID_SPEC")
        if self.k_folds < 1:
            raise ParameterError(f"k_folds must be >= 1, got {self.k_folds}", "INVALID_SPEC")
        self.test_surface.validate()

    @property
    def resampling(self) -> str:
        return "holdout" if self.k_folds == 1 else f"{self.k_folds}-fold cv"

    def run_key(self) -> RunKey:
        return RunKey(
            study=SYNTHETIC_STUDY,
            learner=SYNTHETIC_STUDY,
            dataset=self.test_surface.label(),
            metric_name=SYNTHETIC_METRIC,
            resampling=self.resampling,
            seed=self.seed,
            extra={
                "n_configs": str(self.n_configs),
                "reshuffled": "true" if self.reshuffled else "false",
                "sigma_indep": format_float(self.sigma_indep),
                "sigma_shared": format_float(self.sigma_shared),
                "trajectory_len": str(self.trajectory_len),
            },
        )


@dataclass(frozen=True, eq=False)
class SyntheticRun:
    """A generated trajectory with its ground truth."""

    spec: SyntheticSpec
    key: RunKey
    trajectory: ScoreTrajectory
    oracle_min_test: float
    surface_test: np.ndarray
    surface_val: np.ndarray
    positions: np.ndarray

    def to_hpo_run(self) -> HpoRun:
        return HpoRun(key=self.key, trajectory=self.trajectory, source=SYNTHETIC_STUDY)


def synthetic_metric_table() -> list[MetricSpec]:
    return [MetricSpec(SYNTHETIC_METRIC, Orientation.MINIMIZE, "synthetic error, lower is better")]


def generate_run(spec: SyntheticSpec) -> SyntheticRun:
    """
    Draw one synthetic HPO run.

    True test errors come from the surface. Validation error adds a shared
    bias (one draw per run, or one per configuration when reshuffled) and
    independent noise whose variance is divided by k_folds. The trajectory
    is T configurations picked uniformly without replacement.

    Surface, selection, bias and noise use separate substreams of the seed,
    so specs sharing a seed share the surface and the trajectory order.

    Raises:
        ParameterError: If the spec is invalid, e.g. T > N (INVALID_SPEC)
    """
    spec.validate()
    n = spec.n_configs
    surface_test = spec.test_surface.draw(n, substream(spec.seed, StreamTag.SURFACE))
    bias_draws = substream(spec.seed, StreamTag.BIAS).standard_normal(n)
    bias = spec.sigma_shared * (bias_draws if spec.reshuffled else bias_draws[0])
    noise = (spec.sigma_indep / math.sqrt(spec.k_folds)) * substream(spec.seed, StreamTag.NOISE).standard_normal(n)
    surface_val = surface_test + bias + noise
    positions = substream(spec.seed, StreamTag.SELECTION).choice(n, size=spec.trajectory_len, replace=False)

    oracle_min_test = float(np.min(surface_test))
    trajectory = ScoreTrajectory(val=surface_val[positions], test=surface_test[positions])
    assert oracle_min_test <= float(np.min(trajectory.test))
    return SyntheticRun(
        spec=spec,
        key=spec.run_key(),
        trajectory=trajectory,
        oracle_min_test=oracle_min_test,
        surface_test=surface_test,
        surface_val=surface_val,
        positions=positions,
    )


def factorial_specs(base: SyntheticSpec, seeds: Iterable[int], **levels: Sequence) -> list[SyntheticSpec]:
    """
    Full factorial expansion of parameter levels, seeds varying fastest.

    Example:
        factorial_specs(base, range(10), sigma_indep=[0.05, 0.1], k_folds=[1, 5])
        yields 2 x 2 x 10 specs.

    Raises:
        ParameterError: On a level name that is not a SyntheticSpec field (INVALID_SPEC)
    """
    names = {f.name for f in fields(SyntheticSpec)} - {"seed"}
    unknown = [name for name in levels if name not in names]
    if unknown:
        raise ParameterError(f"unknown synthetic parameter {unknown[0]!r}", "INVALID_SPEC")
    seeds = list(seeds)
    specs = []
    for combination in itertools.product(*levels.values()):
        cell = replace(base, **dict(zip(levels.keys(), combination)))
        specs.extend(replace(cell, seed=int(s)) for s in seeds)
    return specs


def sweep_grid(specs: Sequence[SyntheticSpec], threads: int = 1) -> list[SyntheticRun]:
    """
    Generate one run per spec, in spec order.

    Raises:
        ParameterError: On an empty spec list or an invalid spec (INVALID_SPEC)
    """
    if len(specs) == 0:
        raise ParameterError("no synthetic specs to generate", "INVALID_SPEC")
    for spec in specs:
        spec.validate()
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        runs = list(executor.map(generate_run, specs))
    LOGGER.info("generated %d synthetic runs", len(runs))
    return runs

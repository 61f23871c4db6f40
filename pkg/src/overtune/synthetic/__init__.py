"""Ground-truth synthetic HPO runs."""

from overtune.synthetic.generator import (
    SYNTHETIC_METRIC,
    SYNTHETIC_STUDY,
    SurfaceKind,
    SyntheticRun,
    SyntheticSpec,
    TestSurface,
    factorial_specs,
    generate_run,
    sweep_grid,
    synthetic_metric_table,
)

__all__ = [
    "SYNTHETIC_METRIC",
    "SYNTHETIC_STUDY",
    "SurfaceKind",
    "SyntheticRun",
    "SyntheticSpec",
    "TestSurface",
    "factorial_specs",
    "generate_run",
    "sweep_grid",
    "synthetic_metric_table",
]

"""Poisson cylinder model toolkit.

Exact d-dimensional line/cylinder geometry, invariant hitting measures on the
space of lines, reproducible Poisson line-process sampling, cylinder
intersection graphs, the multi-scale box scaffold, and a seeded experiment
harness with a CLI front end (``cylab``).
"""

__version__ = "0.1.0"

from .geometry import (
    AxisBox,
    Ball,
    Cylinder,
    Direction,
    Line,
    canonicalize,
    complement_projection,
    cylinders_intersect,
    dist_line_line,
    dist_point_line,
    hits,
    orthobasis_complement,
)
from .measure import (
    MeasureEstimate,
    ball_cylinder_bounds,
    ball_hit_measure,
    ball_pair_hit_measure,
    cap_volume,
    cylinder_pair_projected_area,
    cylinder_pair_truncated_measure,
    hit_measure_mc,
    kappa,
    reg_inc_beta,
)
from .lineproc import (
    LineSample,
    Window,
    sample_line_process,
    vacancy_covariance_exact,
    vacancy_probability,
)
from .connectivity import (
    IntersectionGraph,
    build_graph,
    cdist,
    censored_diameter,
    chain_event,
    connecting_line_count,
    lattice_conv_sum,
)
from .scaffold import (
    Scaffold,
    build_scaffold,
    estimate_connection_probability,
    max_angle_cosine,
    verify_disjointness,
)
from .experiments import ExperimentConfig, FitResult, fit_power_law, run_experiment

__all__ = [
    "__version__",
    "AxisBox",
    "Ball",
    "Cylinder",
    "Direction",
    "Line",
    "canonicalize",
    "complement_projection",
    "cylinders_intersect",
    "dist_line_line",
    "dist_point_line",
    "hits",
    "orthobasis_complement",
    "MeasureEstimate",
    "ball_cylinder_bounds",
    "ball_hit_measure",
    "ball_pair_hit_measure",
    "cap_volume",
    "cylinder_pair_projected_area",
    "cylinder_pair_truncated_measure",
    "hit_measure_mc",
    "kappa",
    "reg_inc_beta",
    "LineSample",
    "Window",
    "sample_line_process",
    "vacancy_covariance_exact",
    "vacancy_probability",
    "IntersectionGraph",
    "build_graph",
    "cdist",
    "censored_diameter",
    "chain_event",
    "connecting_line_count",
    "lattice_conv_sum",
    "Scaffold",
    "build_scaffold",
    "estimate_connection_probability",
    "max_angle_cosine",
    "verify_disjointness",
    "ExperimentConfig",
    "FitResult",
    "fit_power_law",
    "run_experiment",
]

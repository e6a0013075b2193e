"""Reconstruction of single-variable functions from directional sublevel-set
persistence diagrams: diagram computation, persistence landscapes, triple-point
and five-line reconstruction, seeded generators, and a benchmark harness."""

from .geometry import Angle, Line, ParallelLines, Point2, angle_for_slope, intersect, slope_of
from .persistence import (
    CriticalKind,
    CriticalPoint,
    Diagram,
    PersistencePoint,
    PLFunction,
    critical_heights,
    critical_points,
    directional_diagram,
    interior_critical_points,
    is_admissible,
    min_abs_slope,
)
from .landscape import (
    DegenerateVertex,
    Landscape,
    VertexClass,
    classify_vertex,
    get_x_values,
    get_y_values,
    landscapes,
    landscapes_from_pairs,
    reconstruct_from_landscapes,
    tent,
)
from .reconstruct_pl import (
    OpCounter,
    TripleConfig,
    count_comparisons,
    naive_reconstruct,
    rolling_ball_reconstruct,
)
from .reconstruct_smooth import (
    DegenerateEstimator,
    SampledFunction,
    SmoothConfig,
    SmoothReconstruction,
    Triangle,
    alternation_check,
    compute_x,
    detect_triangles,
    filter_and_locate,
    five_line_reconstruct,
    refine_estimates,
    tangent_heights,
)
from .generators import (
    GenerationExhausted,
    GenFamily,
    GenSpec,
    NaturalCubicSpline,
    gen_harmonic,
    gen_pl,
    gen_spline,
    generate,
)
from .bench import BenchResult, run_bench, write_csv

__version__ = "0.1.0"

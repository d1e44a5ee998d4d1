"""Median-based dyadic analysis: maximal s-medians, Calderón–Zygmund cubes,
dyadic maximal functions and exact dyadic John–Nirenberg seminorms."""

from .czd import CubeCollection, CZResult, cz_decompose, level_set
from .errors import JNError, PreconditionError, ResourceError, UnsupportedError, ValidationError
from .grid import (
    DyadicCube,
    DyadicGrid,
    FunctionSpec,
    StepFunction,
    load,
    make_grid,
    sample,
    sample_catalog,
    save,
)
from .maximal import maximal_avg
from .maximal import maximal_median as median_maximal_function
from .median import maximal_median, median_oscillation, min_center_oscillation
from .seminorm import (
    SeminormConfig,
    SeminormReport,
    companion_norms,
    cube_weight,
    jn_seminorm,
    jn_seminorm_bruteforce,
)

from .estimators import DyadicMaximalTransformer, JNSeminorm, MedianCZ

__version__ = "0.1.0"

"""Topological fans over C^n x Z^n: exact validation, normal-chart
atlases with Laurent monomial transition data, and regular deformation of
any valid fan into a nice one."""

from .endo import (
    EndoParam,
    LaurentExponent,
    MonomialMatrix,
    ONE,
    ZERO,
    compose,
    eval_endo,
    matrix_compose,
    matrix_eval,
    pair,
    to_laurent,
)
from .fan import (
    Classification,
    RayData,
    TopologicalFan,
    ValidityReport,
    check_complete,
    check_fan_proper,
    check_nonsingular,
    classify,
    in_cone,
    make_fan,
    ray_data,
    validate,
    validate_combinatorics,
)
from .charts import (
    ChartRecord,
    DualSet,
    TransitionMap,
    atlas,
    chart_image,
    cocycle_check,
    dual_set,
    transition,
)
from .deform import (
    DeformationPath,
    RegularityCertificate,
    Segment,
    niceify,
    step1_kill_c,
    step2_rationalize,
    step3_scale_even,
    step4_swap_to_u,
)

__all__ = [name for name in dir() if not name.startswith("_")]

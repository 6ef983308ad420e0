"""Exact-arithmetic toolkit for the lonely runner problem.

Computes the gap function delta(S) by finite candidate enumeration, checks
the conjecture's diophantine, view-obstruction, billiard and finite-field
formulations on bounded instances, and emits verifiable certificates plus
figure renderings.
"""

from .arith import (
    QuadExt,
    Rational,
    SQRT3,
    SpeedSet,
    is_prime,
    next_prime_not_dividing,
    quad_sign,
    torus_norm,
)
from .billiards import (
    SquarePath,
    TriangleCell,
    TriangleHit,
    TrianglePath,
    fold_ray_point,
    square_min_obstacle,
    square_obstacle_contact,
    square_path_segments,
    triangle_cell,
    triangle_cells_along_ray,
    triangle_min_obstacle,
    triangle_obstruction_check,
    triangle_path_segments,
)
from .fieldsearch import (
    Conj34Witness,
    FieldWitness,
    PrimeBudgetExhausted,
    SubsetCertificate,
    band_avoidance_search,
    conj34_witness,
    invisible_subset,
    residue_matrix_scan,
)
from .gap import (
    GapCertificate,
    LonelyReport,
    LrcSweepReport,
    check_kappa_bounds,
    exact_gap,
    gap_grid_oracle,
    gap_value_at,
    lonely_time,
    separation_floor,
    verify_lrc,
)
from .render import render_svg
from .viewobstruct import (
    Direction,
    KPrimeScanReport,
    ObstructionWitness,
    kprime_scan,
    min_scale_for_direction,
    obstruction_witness,
    ray_cube_first_hit,
)

__version__ = "0.1.0"

__all__ = [
    "QuadExt",
    "Rational",
    "SQRT3",
    "SpeedSet",
    "is_prime",
    "next_prime_not_dividing",
    "quad_sign",
    "torus_norm",
    "GapCertificate",
    "LonelyReport",
    "LrcSweepReport",
    "check_kappa_bounds",
    "exact_gap",
    "gap_grid_oracle",
    "gap_value_at",
    "lonely_time",
    "separation_floor",
    "verify_lrc",
    "Conj34Witness",
    "FieldWitness",
    "PrimeBudgetExhausted",
    "SubsetCertificate",
    "band_avoidance_search",
    "conj34_witness",
    "invisible_subset",
    "residue_matrix_scan",
    "Direction",
    "KPrimeScanReport",
    "ObstructionWitness",
    "kprime_scan",
    "min_scale_for_direction",
    "obstruction_witness",
    "ray_cube_first_hit",
    "SquarePath",
    "TriangleCell",
    "TriangleHit",
    "TrianglePath",
    "fold_ray_point",
    "square_min_obstacle",
    "square_obstacle_contact",
    "square_path_segments",
    "triangle_cell",
    "triangle_cells_along_ray",
    "triangle_min_obstacle",
    "triangle_obstruction_check",
    "triangle_path_segments",
    "render_svg",
    "__version__",
]

"""Triple-overlap geometry of dilated convex bodies and the depletion pair potential."""

from ._core import (
    TRIPLET_FACTOR,
    WALL_FACTOR,
    AOParameters,
    Ball,
    CapabilityError,
    CaseTag,
    ConvexPolygon,
    CriterionReport,
    DegenerateInputError,
    DeltaMaxResult,
    Ellipsoid,
    HalfSpace,
    InputError,
    NumericalError,
    RoundedPolygon,
    apollonius_solve,
    campaign_names,
    delta_max,
    delta_max_wall,
    descartes_contact_radius,
    exactness_guard,
    largest_improved_delta,
    minimax_delta,
    pairwise_lens_area,
    pairwise_thresholds,
    parse_scene,
    potential_table,
    rolling_radius,
    run_campaign,
    signed_distance,
    theorem1_check,
    triple_empty,
    truncated_inclusion_exclusion,
    union_volume_mc,
    v_dep,
    v_eff,
    wall_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]

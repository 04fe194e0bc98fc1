"""Order-theoretic toolkit for the causal structure of flat space-time."""

from .order import (
    Direction,
    Event,
    OrderKind,
    OrderSpec,
    PairClass,
    apply_dilation,
    apply_space_isometry,
    classify_pair,
    comparable,
    event,
    interval_is_chain,
    interval_is_chain_sampled,
    leq,
    pairwise_comparable,
    reconstruct_causal_analytic,
    reconstruct_causal_sampled,
    strictly_below,
    subluminal_via_weakening,
)
from .worldlines import (
    Gap,
    GapWorldLine,
    KeptEnd,
    LightSegment,
    PolyWorldLine,
    Ray,
    canonical_gap_chain,
    gap_contains,
    is_subluminal_chain_probe,
    make_gap_worldline,
    make_polyline,
)
from .hypersurfaces import (
    Grading,
    Hypersurface,
    crossing_time,
    grading_monotone_on,
    grading_value,
    is_antichain_sample,
    level_contains,
    make_hypersurface,
)
from .finite import (
    CapExceeded,
    FiniteCausalSet,
    RelationDiff,
    SprinkleConfig,
    build,
    compare_relations,
    find_avoiding_chain,
    hasse,
    is_cutset,
    maximal_antichains,
    maximal_chains,
    reconstruct_order,
    sprinkle,
)
from .cones import (
    ConeClass,
    ConeKind,
    ConeOracle,
    InvarianceReport,
    affine_cone,
    check_invariance,
    classify_cone,
    cone_order_leq,
    standard_cone,
)
from .fileio import (
    ParseError,
    dot_digraph,
    gap_worldline_from_file,
    read_events,
    read_surface,
    read_worldline,
    write_events,
    write_gap_worldline,
    write_surface,
    write_worldline,
)

__version__ = "0.1.0"

__all__ = [
    "Direction",
    "Event",
    "OrderKind",
    "OrderSpec",
    "PairClass",
    "apply_dilation",
    "apply_space_isometry",
    "classify_pair",
    "comparable",
    "event",
    "interval_is_chain",
    "interval_is_chain_sampled",
    "leq",
    "pairwise_comparable",
    "reconstruct_causal_analytic",
    "reconstruct_causal_sampled",
    "strictly_below",
    "subluminal_via_weakening",
    "Gap",
    "GapWorldLine",
    "KeptEnd",
    "LightSegment",
    "PolyWorldLine",
    "Ray",
    "canonical_gap_chain",
    "gap_contains",
    "is_subluminal_chain_probe",
    "make_gap_worldline",
    "make_polyline",
    "Grading",
    "Hypersurface",
    "crossing_time",
    "grading_monotone_on",
    "grading_value",
    "is_antichain_sample",
    "level_contains",
    "make_hypersurface",
    "CapExceeded",
    "FiniteCausalSet",
    "RelationDiff",
    "SprinkleConfig",
    "build",
    "compare_relations",
    "find_avoiding_chain",
    "hasse",
    "is_cutset",
    "maximal_antichains",
    "maximal_chains",
    "reconstruct_order",
    "sprinkle",
    "ConeClass",
    "ConeKind",
    "ConeOracle",
    "InvarianceReport",
    "affine_cone",
    "check_invariance",
    "classify_cone",
    "cone_order_leq",
    "standard_cone",
    "ParseError",
    "dot_digraph",
    "gap_worldline_from_file",
    "read_events",
    "read_surface",
    "read_worldline",
    "write_events",
    "write_gap_worldline",
    "write_surface",
    "write_worldline",
]

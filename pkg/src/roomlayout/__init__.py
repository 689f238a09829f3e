"""Indoor room-layout estimation from edge and semantic heat maps.

The package estimates a parameterized box layout (one of 11 types) for an
indoor image given a per-pixel edge heat map and per-surface semantic
beliefs: hypotheses are generated by vanishing-point ray sampling and from a
predefined layout pool, ranked by a combined edge/semantic consistency
score, and refined by greedy per-corner search.
"""

from .core import (
    BORDER,
    INTERIOR,
    Layout,
    LayoutType,
    SurfaceLabel,
    TOPOLOGY,
    VanishingTriple,
    WALL_LABELS,
    boundary_segments,
    faces_of,
    make_layout,
    scale_layout,
    validate,
)
from .errors import (
    DegenerateTarget,
    DegenerateVP,
    DimensionMismatch,
    EmptyHypotheses,
    EmptyPool,
    GenerationFailure,
    InvalidTopology,
    ParseError,
    RoomLayoutError,
)
from .hypgen import (
    LayoutPool,
    Ray,
    SamplingConfig,
    SectorProfile,
    build_layout,
    compose_layouts,
    hypotheses_from_pool,
    hypotheses_from_sampling,
    make_pool,
    merge_hypotheses,
    sample_rays,
    sector_profile,
    select_sectors,
)
from .metrics import (
    EvalRecord,
    corner_error,
    edge_error,
    pixel_error,
    semantic_error,
    type_accuracy,
)
from .refine import NeighborSet, neighbor_set, optimize_layouts, refine_layout
from .render import (
    RenderConfig,
    gaussian_blur,
    gaussian_kernel,
    render_edges,
    render_seg,
)
from .score import (
    ScoreConfig,
    ScoredLayout,
    argmax_labels,
    edge_score,
    matched_accuracy,
    score_layout,
)
from .synth import (
    SynthConfig,
    build_pool,
    corrupt_maps,
    render_scene,
    sample_scene,
)

__version__ = "0.1.0"

"""Right-frontier checking for SDRT discourse graphs."""

from .closure import (
    NormalizationDiverged,
    ensure_continuation_coherence,
    expand_continuations,
    factor_distributive,
    normalize,
)
from .corpus import Document, parse_corpus, write_corpus
from .frontier import (
    FrontierSet,
    Provenance,
    available_attachment_points,
    dominance_parents,
    right_frontier,
    right_frontier_union,
)
from .sdrs import (
    ComplexSegment,
    Kind,
    Label,
    RelationInstance,
    RelationType,
    Sdrs,
    build_sdrs,
    classify,
    components,
    i_outscopes,
)
from .validator import (
    AttachmentVerdict,
    CorpusStats,
    ReplayConfig,
    Status,
    constituent_distance,
    corpus_stats,
    prefix_graph,
    replay,
    rfc_edu_score,
    rfc_r_score,
)

__version__ = "0.1.0"

"""Collaborative user-story authoring: parsing, concept graphs, suggestions.

The pipeline reads Connextra-style user stories, extracts noun-phrase
concepts, clusters and embeds them, links related concepts into a
versioned graph per user and per project, and compares those graphs to
suggest what a story set is missing.  A small HTTP service exposes the
whole thing for teams working together.
"""

from .config import Config, load_config
from .embedding import (
    EMBEDDING_DIM,
    SIMILARITY_THRESHOLD,
    ConceptMapping,
    KeywordExtractor,
    RemoteEmbedder,
    SimilarityMatrix,
    TrigramHashEmbedder,
    pair_terms,
    similarity_matrix,
)
from .errors import (
    EmptyGraphError,
    EmptySampleError,
    FormatError,
    GlossaryError,
    ImportPayloadError,
    MembershipError,
    NotFoundError,
    ProviderUnavailableError,
    StoryGraphError,
    UnknownConceptError,
)
from .graph import (
    ACTIVE_EXPIRY,
    CommitSummary,
    ConceptNode,
    GraphEdge,
    GraphStore,
    GraphView,
)
from .metrics import (
    ProjectMetrics,
    UTestResult,
    avg_node_connectivity,
    mann_whitney_u,
    project_metrics,
    std_dev,
)
from .stories import (
    PARSE_LENIENT,
    PARSE_STRICT,
    ParsedStory,
    Project,
    Stakeholder,
    StoryStore,
    UserStory,
    parse_user_story,
)
from .story_io import ImportReport, export_stories, import_stories
from .suggestions import (
    Suggestion,
    SuggestionLog,
    completeness_suggestions,
    quality_suggestions,
)

__version__ = "0.1.0"

__all__ = [
    "ACTIVE_EXPIRY",
    "Config",
    "CommitSummary",
    "ConceptMapping",
    "ConceptNode",
    "EMBEDDING_DIM",
    "EmptyGraphError",
    "EmptySampleError",
    "FormatError",
    "GlossaryError",
    "GraphEdge",
    "GraphStore",
    "GraphView",
    "ImportPayloadError",
    "ImportReport",
    "KeywordExtractor",
    "MembershipError",
    "NotFoundError",
    "PARSE_LENIENT",
    "PARSE_STRICT",
    "ParsedStory",
    "Project",
    "ProjectMetrics",
    "ProviderUnavailableError",
    "RemoteEmbedder",
    "SIMILARITY_THRESHOLD",
    "SimilarityMatrix",
    "Stakeholder",
    "StoryGraphError",
    "StoryStore",
    "Suggestion",
    "SuggestionLog",
    "TrigramHashEmbedder",
    "UTestResult",
    "UnknownConceptError",
    "UserStory",
    "avg_node_connectivity",
    "completeness_suggestions",
    "export_stories",
    "import_stories",
    "load_config",
    "mann_whitney_u",
    "pair_terms",
    "parse_user_story",
    "project_metrics",
    "quality_suggestions",
    "similarity_matrix",
    "std_dev",
    "__version__",
]

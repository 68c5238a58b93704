"""Pydantic data models for the news monitoring engine."""

from newsdesk_mcp.models.alert import AlertDecision, AlertState, DailyCount
from newsdesk_mcp.models.article import (
    Article,
    ArticleAnnotations,
    ChannelInfo,
    FetchResult,
    ItemDiagnostic,
    RawFeedItem,
    ResolvedPlace,
    SourceDescriptor,
    SourceError,
    TaggedName,
)
from newsdesk_mcp.models.category import (
    AndNode,
    CategoryDefinition,
    DefinitionMode,
    MatchResult,
    NearNode,
    NotNode,
    OrNode,
    Term,
    TermHit,
    TermNode,
)
from newsdesk_mcp.models.cluster import (
    BreakingNewsFlag,
    BreakingReason,
    ChainRecord,
    Cluster,
    ClusterFacets,
    ClusterSummary,
    KeywordVector,
    RoundSnapshot,
    SizePoint,
    TimelinePoint,
)
from newsdesk_mcp.models.config import MonitorConfig
from newsdesk_mcp.models.entity import (
    CoOccurrence,
    Entity,
    EntityProfile,
    EntityType,
    EntityVector,
    NameMention,
    QuoteRecord,
)
from newsdesk_mcp.models.geo import CountryVector, GazetteerEntry, GeoMention, SizeClass
from newsdesk_mcp.models.link import ClusterSignature, LinkEdge, LinkParts, LinkResult
from newsdesk_mcp.models.report import LanguageCounts, RoundReport
from newsdesk_mcp.models.subject import LabeledDocument, SubjectClass, SubjectProfile, SubjectVector

__all__ = [
    "AlertDecision",
    "AlertState",
    "AndNode",
    "Article",
    "ArticleAnnotations",
    "BreakingNewsFlag",
    "BreakingReason",
    "CategoryDefinition",
    "ChainRecord",
    "ChannelInfo",
    "Cluster",
    "ClusterFacets",
    "ClusterSignature",
    "ClusterSummary",
    "CoOccurrence",
    "CountryVector",
    "DailyCount",
    "DefinitionMode",
    "Entity",
    "EntityProfile",
    "EntityType",
    "EntityVector",
    "FetchResult",
    "GazetteerEntry",
    "GeoMention",
    "ItemDiagnostic",
    "KeywordVector",
    "LabeledDocument",
    "LanguageCounts",
    "LinkEdge",
    "LinkParts",
    "LinkResult",
    "MatchResult",
    "MonitorConfig",
    "NameMention",
    "NearNode",
    "NotNode",
    "OrNode",
    "QuoteRecord",
    "RawFeedItem",
    "ResolvedPlace",
    "RoundReport",
    "RoundSnapshot",
    "SizeClass",
    "SizePoint",
    "SourceDescriptor",
    "SourceError",
    "SubjectClass",
    "SubjectProfile",
    "SubjectVector",
    "TaggedName",
    "Term",
    "TermHit",
    "TermNode",
    "TimelinePoint",
]

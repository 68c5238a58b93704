"""Custom exception hierarchy for the news monitoring engine."""

from __future__ import annotations


class NewsdeskError(Exception):
    """Base exception for all newsdesk errors."""


class ConfigError(NewsdeskError):
    """Configuration file or value errors."""


class ResourceError(NewsdeskError):
    """A shipped or configured resource table is missing or malformed."""


class IngestError(NewsdeskError):
    """Feed acquisition and normalization errors."""


class SourceUnreachableError(IngestError):
    """Raised when a feed locator cannot be read."""


class FeedParseError(IngestError):
    """Raised when a feed document cannot be parsed at all."""


class ArticleRejectedError(IngestError):
    """Raised when a raw item cannot become an article (no title and no body)."""


class DefinitionError(NewsdeskError):
    """Category definition errors."""


class DefinitionSyntaxError(DefinitionError):
    """Raised when a category definition does not parse."""

    def __init__(self, message: str, line: int = 1, column: int = 1) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class StateError(NewsdeskError):
    """Persistent state errors."""


class StateLoadError(StateError):
    """Raised when a state file is corrupt or truncated."""

    def __init__(self, message: str, path: str, line: int | None = None) -> None:
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


class NotFoundError(NewsdeskError):
    """Lookup of an unknown identifier."""


class EntityNotFoundError(NotFoundError):
    """Raised when an entity id is unknown."""


class ClusterNotFoundError(NotFoundError):
    """Raised when a cluster id or language has no clusters."""


class StoryNotFoundError(NotFoundError):
    """Raised when a chain id is unknown."""


class RoundError(NewsdeskError):
    """Raised when a processing round aborts."""

"""Domain errors shared across the package.

Service code maps these onto HTTP status codes, so keep the split between
"bad input" (FormatError, ImportPayloadError), "unknown entity" and
"membership" errors intact.
"""

from __future__ import annotations


class StoryGraphError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(StoryGraphError):
    """A story does not follow the role / goal / benefit template."""

    def __init__(self, text: str, reason: str = "story does not match the template"):
        super().__init__(f"{reason}: {text!r}")
        self.text = text
        self.reason = reason


class ImportPayloadError(StoryGraphError):
    """An import payload is empty or structurally unreadable."""


class GlossaryError(StoryGraphError):
    """A verb glossary is missing one of the four action categories."""


class NotFoundError(StoryGraphError):
    """A referenced entity (project, story, user, suggestion) does not exist."""


class MembershipError(StoryGraphError):
    """An operation referenced a user outside the project's member list."""


class UnknownConceptError(StoryGraphError):
    """A graph query referenced a concept key with no active node."""


class EmptyGraphError(StoryGraphError):
    """A graph query ran against a scope with no active nodes."""


class EmptySampleError(StoryGraphError):
    """A statistic was requested over an empty sample."""


class ProviderUnavailableError(StoryGraphError):
    """The embedding provider could not be reached or answered garbage."""

"""Noun phrase extraction over tagged tokens.

The default chunker is a shallow scanner for the pattern::

    DET? ADJ* NOUN+ ((PREP | CONJ) DET? ADJ* NOUN+)*

with maximal munch, so "change the item label size" yields one phrase and
"list of books" or "users and admins" stay in one piece.  Determiners are
dropped from the phrase text but conjunctions and prepositions inside a
phrase are kept; a phrase containing "and"/"or" is how non-atomic stories
are detected later.  Pronoun-only spans never match the pattern, so they
are dropped by construction.

The chunker is pluggable: anything with a ``spans(tokens)`` method
returning (start, end) token index pairs can replace RuleChunker.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

from .preprocess import Token, preprocess
from .tagging import ADJ, CONJ, DET, NOUN, PREP, Tagger
from .lemmas import Lemmatizer
from ..stories import UserStory


@dataclass(slots=True)
class NounPhrase:
    """One extracted phrase with its location in the story."""

    text: str
    tokens: list[str]
    lemmas: list[str]
    span: tuple[int, int]
    story_id: str
    segment: str


class Chunker(Protocol):
    def spans(self, tokens: list[Token]) -> list[tuple[int, int]]: ...


class RuleChunker:
    """Shallow pattern matcher over coarse tags."""

    def spans(self, tokens: list[Token]) -> list[tuple[int, int]]:
        tags = [t.pos for t in tokens]
        n = len(tags)
        out = []
        i = 0
        while i < n:
            end = self._match_group(tags, i)
            if end is None:
                i += 1
                continue
            start = i
            while end < n and tags[end] in (PREP, CONJ):
                cont = self._match_group(tags, end + 1)
                if cont is None:
                    break
                end = cont
            out.append((start, end))
            i = end
        return out

    @staticmethod
    def _match_group(tags: list[str], i: int):
        """Match DET? ADJ* NOUN+ at position i, returning the end index."""
        n = len(tags)
        j = i
        if j < n and tags[j] == DET:
            j += 1
        while j < n and tags[j] == ADJ:
            j += 1
        k = j
        while j < n and tags[j] == NOUN:
            j += 1
        if j == k:
            return None
        return j


class PhraseExtractor:
    """Runs preprocessing and chunking over every segment of a story."""

    def __init__(
        self,
        lemmatizer: Lemmatizer,
        tagger: Tagger,
        chunker: Chunker | None = None,
        extra_verbs: set[str] | None = None,
    ):
        self.lemmatizer = lemmatizer
        self.tagger = tagger
        self.chunker = chunker if chunker is not None else RuleChunker()
        self.extra_verbs = set(extra_verbs or ())

    def segment_tokens(self, story: UserStory) -> dict[str, list[Token]]:
        out = {}
        for name, text, start in story.parsed.segments():
            out[name] = preprocess(
                text,
                self.lemmatizer,
                self.tagger,
                goal_position=(name == "goal"),
                extra_verbs=self.extra_verbs,
                offset=start,
            )
        return out

    def phrases(self, story: UserStory) -> list[NounPhrase]:
        out = []
        for name, tokens in self.segment_tokens(story).items():
            for start, end in self.chunker.spans(tokens):
                kept = [t for t in tokens[start:end] if t.pos != DET]
                if not kept:
                    continue
                out.append(
                    NounPhrase(
                        text=" ".join(t.folded for t in kept),
                        tokens=[t.folded for t in kept],
                        lemmas=[t.lemma for t in kept],
                        span=(kept[0].start, kept[-1].end),
                        story_id=story.id,
                        segment=name,
                    )
                )
        return out

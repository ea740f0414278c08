"""Tokenization of story segments.

Produces lowercase-folded, punctuation-free tokens that keep their lemma,
coarse tag and character span in the original text.  Stop words are kept:
determiners and prepositions carry structure the chunker needs, so they
are only dropped later when phrase text is assembled.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .lemmas import Lemmatizer
from .tagging import DET, Tagger

_WORD = re.compile(r"[A-Za-z0-9']+")


@dataclass(slots=True)
class Token:
    surface: str
    lemma: str
    pos: str
    start: int
    end: int

    @property
    def folded(self) -> str:
        return self.surface.lower()


def preprocess(
    text: str,
    lemmatizer: Lemmatizer,
    tagger: Tagger,
    goal_position: bool = False,
    extra_verbs: set[str] | None = None,
    offset: int = 0,
) -> list[Token]:
    """Tokenize one segment; spans are shifted by ``offset`` into the story."""
    raws = []
    for m in _WORD.finditer(text):
        surface = m.group().strip("'")
        if not surface:
            continue
        start = m.start() + (len(m.group()) - len(m.group().lstrip("'")))
        raws.append((surface, start))
    words = []
    for surface, _ in raws:
        core = surface[:-2] if surface.lower().endswith("'s") else surface
        words.append((surface, lemmatizer.lemma(core)))
    tags = tagger.tag_sequence(words, goal_position=goal_position, extra_verbs=extra_verbs)
    return [
        Token(
            surface=surface,
            lemma=lemma,
            pos=tag,
            start=offset + start,
            end=offset + start + len(surface),
        )
        for ((surface, lemma), tag, (_, start)) in zip(words, tags, raws)
    ]


def normalize_text(text: str, lemmatizer: Lemmatizer, tagger: Tagger) -> str:
    """Case-fold, strip punctuation and drop determiners.

    This is the normal form phrase text is written in, shared with the
    span-fidelity check so a phrase always equals its normalized slice.
    """
    tokens = preprocess(text, lemmatizer, tagger)
    return " ".join(t.folded for t in tokens if t.pos != DET)

"""Action verb glossary and verb-object mention extraction.

The glossary file maps each of the four data action categories (create,
read, update, delete) to a synonym list.  A mention is recorded whenever a
goal-segment verb's lemma is in the glossary; the affected term is the
nearest noun phrase that starts at or after the verb.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .chunking import NounPhrase, PhraseExtractor
from .tagging import VERB
from ..errors import GlossaryError
from ..stories import UserStory

CATEGORIES = ("create", "read", "update", "delete")


@dataclass(slots=True)
class CrudMention:
    story_id: str
    verb_lemma: str
    category: str
    term: str
    term_span: tuple[int, int]


class VerbGlossary:
    def __init__(self, by_category: dict[str, list[str]]):
        missing = [c for c in CATEGORIES if not by_category.get(c)]
        if missing:
            raise GlossaryError(f"glossary is missing categories: {', '.join(missing)}")
        self.by_category = {c: list(by_category[c]) for c in CATEGORIES}
        self.category_of = {
            verb: category for category in CATEGORIES for verb in self.by_category[category]
        }

    @property
    def verbs(self) -> set[str]:
        return set(self.category_of)

    @classmethod
    def parse(cls, text: str) -> "VerbGlossary":
        table: dict[str, list[str]] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            category, _, verbs = line.partition(":")
            table[category.strip().lower()] = [
                v.strip().lower() for v in verbs.split(",") if v.strip()
            ]
        return cls(table)

    @classmethod
    def load_default(cls) -> "VerbGlossary":
        text = resources.files("storygraph.nlp").joinpath("data/crud_glossary.txt").read_text("utf-8")
        return cls.parse(text)

    @classmethod
    def load_file(cls, path) -> "VerbGlossary":
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())


def extract_crud_mentions(
    story: UserStory,
    extractor: PhraseExtractor,
    glossary: VerbGlossary,
    phrases: list[NounPhrase] | None = None,
) -> list[CrudMention]:
    if phrases is None:
        phrases = extractor.phrases(story)
    goal_phrases = sorted(
        (p for p in phrases if p.segment == "goal"), key=lambda p: p.span[0]
    )
    tokens = extractor.segment_tokens(story)["goal"]
    mentions = []
    for token in tokens:
        if token.pos != VERB or token.lemma not in glossary.category_of:
            continue
        target = next((p for p in goal_phrases if p.span[0] >= token.end), None)
        if target is None:
            continue
        mentions.append(
            CrudMention(
                story_id=story.id,
                verb_lemma=token.lemma,
                category=glossary.category_of[token.lemma],
                term=target.text,
                term_span=target.span,
            )
        )
    return mentions

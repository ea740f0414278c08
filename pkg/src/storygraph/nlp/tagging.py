"""Coarse part-of-speech tagging from a lexicon plus suffix heuristics.

Each token gets one of NOUN, VERB, ADJ, DET, PREP, CONJ, PRON, OTHER.
Lookup order: surface form, then lemma, then suffix shape, then NOUN.
Two repair passes fix the cases a context-free lookup gets wrong in
template sentences:

* a goal segment starts with its verb ("list my tasks"), so a known verb
  lemma in first position is forced to VERB even if the word is
  noun-primary elsewhere, and an entirely unknown first word is taken as
  the verb the template promises;
* a verb tag directly after a determiner or adjective is demoted to NOUN
  ("the change log");
* a known verb right after a conjunction that continues a verb phrase is
  promoted to VERB ("create and delete accounts").
"""

from __future__ import annotations

from importlib import resources

from .lemmas import Lemmatizer

NOUN = "NOUN"
VERB = "VERB"
ADJ = "ADJ"
DET = "DET"
PREP = "PREP"
CONJ = "CONJ"
PRON = "PRON"
OTHER = "OTHER"

_ADJ_SUFFIXES = ("ful", "ous", "ive", "al", "ic", "ical")


def _load_lexicon() -> dict[str, str]:
    lex = {}
    text = resources.files("storygraph.nlp").joinpath("data/pos_lexicon.tsv").read_text("utf-8")
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word, tag = line.split("\t")
        lex[word] = tag
    return lex


class Tagger:
    def __init__(self, lemmatizer: Lemmatizer, lexicon: dict[str, str] | None = None):
        self.lemmatizer = lemmatizer
        self.lexicon = dict(_load_lexicon() if lexicon is None else lexicon)
        self.verb_lemmas = {w for w, t in self.lexicon.items() if t == VERB}

    def tag_word(self, surface: str, lemma: str) -> str:
        w = surface.lower()
        hit = self.lexicon.get(w) or self.lexicon.get(lemma)
        if hit is not None:
            return hit
        if any(ch.isdigit() for ch in w):
            return OTHER
        if w.endswith("ly"):
            return OTHER
        if w.endswith("ing") or w.endswith("ed"):
            return ADJ
        # short -able/-ible words are mostly nouns (table, cable, bible)
        if w.endswith(("able", "ible")) and len(w) >= 6:
            return ADJ
        if w.endswith(_ADJ_SUFFIXES):
            return ADJ
        return NOUN

    def tag_sequence(
        self,
        words: list[tuple[str, str]],
        goal_position: bool = False,
        extra_verbs: set[str] | None = None,
    ) -> list[str]:
        """Tag (surface, lemma) pairs for one segment.

        ``goal_position`` marks segments that grammatically open with a verb.
        ``extra_verbs`` extends the verb lemma set, e.g. with glossary verbs.
        """
        known_verbs = self.verb_lemmas | (extra_verbs or set())
        tags = [self.tag_word(surface, lemma) for surface, lemma in words]
        if goal_position and tags:
            surface0, lemma0 = words[0]
            if lemma0 in known_verbs:
                tags[0] = VERB
            elif (
                tags[0] == NOUN
                and surface0.lower() not in self.lexicon
                and lemma0 not in self.lexicon
            ):
                # the template opens the goal with its verb, so an unknown
                # word in first position is the verb, not a noun
                tags[0] = VERB
        for i in range(1, len(tags)):
            if tags[i] == VERB and tags[i - 1] in (DET, ADJ):
                tags[i] = NOUN
        for i in range(2, len(tags)):
            if (
                tags[i] != VERB
                and tags[i - 1] == CONJ
                and tags[i - 2] == VERB
                and words[i][1] in known_verbs
            ):
                tags[i] = VERB
        return tags

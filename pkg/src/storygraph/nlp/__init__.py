"""Concept extraction: tokenization, chunking, clustering, verb mentions."""

from .lemmas import Lemmatizer
from .tagging import Tagger
from .preprocess import Token, preprocess, normalize_text
from .chunking import Chunker, NounPhrase, PhraseExtractor, RuleChunker
from .clustering import PhraseCluster, cluster_substrings, member_stories
from .crud import CATEGORIES, CrudMention, VerbGlossary, extract_crud_mentions

__all__ = [
    "CATEGORIES",
    "Chunker",
    "CrudMention",
    "Lemmatizer",
    "NounPhrase",
    "PhraseCluster",
    "PhraseExtractor",
    "RuleChunker",
    "Tagger",
    "Token",
    "VerbGlossary",
    "cluster_substrings",
    "extract_crud_mentions",
    "member_stories",
    "normalize_text",
    "preprocess",
]

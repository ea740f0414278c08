"""Phrase embeddings, similarity, and concept pairing.

Three layers live here:

* embedding providers -- the builtin one hashes character trigrams into a
  fixed random projection, so runs are deterministic and need no model
  download; a remote provider speaks a small HTTP batch protocol for real
  models;
* the cosine similarity matrix over cluster representatives;
* the pairing step that turns clusters plus similarities into a
  parent/member concept mapping.  Terms whose best similarity clears the
  threshold are grouped under a shared keyword parent; a multi-word term
  with no neighbor is reparented under its own most representative word;
  a single word with no neighbor keeps an empty-string placeholder member
  and later becomes a self-link node.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np
import requests

from .errors import ProviderUnavailableError
from .nlp.clustering import PhraseCluster
from .nlp.lemmas import Lemmatizer
from .nlp.tagging import ADJ, NOUN, VERB, Tagger

EMBEDDING_DIM = 768
SIMILARITY_THRESHOLD = 0.4


class EmbeddingProvider(Protocol):
    model_id: str

    def embed(self, texts: list[str]) -> np.ndarray: ...


class TrigramHashEmbedder:
    """Deterministic embedding from hashed character trigrams.

    Each distinct trigram of the space-padded text maps to a fixed
    pseudo-random direction (seeded from its SHA-256 digest); the text
    vector is the count-weighted sum, L2-normalized.  Similar surface
    forms share trigrams and land close together, which is all the
    pairing step needs.
    """

    def __init__(self, dim: int = EMBEDDING_DIM, seed: int = 768):
        self.dim = dim
        self.seed = seed
        self.model_id = f"trigram-hash-{dim}-{seed}"
        self._directions: dict[str, np.ndarray] = {}

    def _direction(self, trigram: str) -> np.ndarray:
        vec = self._directions.get(trigram)
        if vec is None:
            digest = hashlib.sha256(f"{self.seed}:{trigram}".encode("utf-8")).digest()
            rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
            vec = rng.standard_normal(self.dim)
            self._directions[trigram] = vec
        return vec

    def embed(self, texts: list[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dim))
        for row, text in enumerate(texts):
            padded = f" {text.strip().lower()} "
            counts: dict[str, int] = {}
            for i in range(len(padded) - 2):
                tri = padded[i : i + 3]
                counts[tri] = counts.get(tri, 0) + 1
            for tri, count in counts.items():
                out[row] += count * self._direction(tri)
            norm = np.linalg.norm(out[row])
            if norm > 0:
                out[row] /= norm
        return out


class RemoteEmbedder:
    """Client for an embedding service.

    Protocol: POST a JSON array of strings, receive a JSON array of
    768-float arrays plus the serving model id in the X-Model-Id header.
    """

    def __init__(self, url: str, timeout: float = 30.0, dim: int = EMBEDDING_DIM):
        self.url = url
        self.timeout = timeout
        self.dim = dim
        self.model_id = "remote"

    def embed(self, texts: list[str]) -> np.ndarray:
        try:
            response = requests.post(self.url, json=list(texts), timeout=self.timeout)
        except requests.RequestException as exc:
            raise ProviderUnavailableError(f"embedding provider unreachable: {exc}") from exc
        if response.status_code != 200:
            raise ProviderUnavailableError(
                f"embedding provider returned HTTP {response.status_code}"
            )
        self.model_id = response.headers.get("X-Model-Id", self.model_id)
        try:
            data = response.json()
        except json.JSONDecodeError as exc:
            raise ProviderUnavailableError("embedding provider sent non-JSON body") from exc
        if not isinstance(data, list) or len(data) != len(texts):
            raise ProviderUnavailableError("embedding provider sent a mismatched batch")
        vectors = np.asarray(data, dtype=float)
        if vectors.ndim != 2 or vectors.shape[1] != self.dim:
            raise ProviderUnavailableError(
                f"embedding provider sent vectors of the wrong width: {vectors.shape}"
            )
        return vectors


@dataclass(slots=True)
class SimilarityMatrix:
    terms: list[str]
    scores: np.ndarray
    index: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {t: i for i, t in enumerate(self.terms)}

    def score(self, a: str, b: str) -> float:
        return float(self.scores[self.index[a], self.index[b]])


def similarity_matrix(terms: list[str], provider: EmbeddingProvider) -> SimilarityMatrix:
    """Pairwise cosine similarity; symmetric with a unit diagonal."""
    vectors = provider.embed(terms)
    norms = np.linalg.norm(vectors, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    unit = vectors / norms
    scores = unit @ unit.T
    scores = np.clip((scores + scores.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(scores, 1.0)
    return SimilarityMatrix(terms=list(terms), scores=scores)


class KeywordExtractor:
    """Pick the word that best represents a pair of terms.

    The lemmatized term and parent are concatenated; every distinct
    content-word unigram is scored by cosine similarity between its
    embedding and the whole string's embedding.  With at most one
    candidate the parent is returned unchanged.
    """

    def __init__(self, provider: EmbeddingProvider, lemmatizer: Lemmatizer, tagger: Tagger):
        self.provider = provider
        self.lemmatizer = lemmatizer
        self.tagger = tagger

    def _candidates(self, words: list[str]) -> list[str]:
        seen = []
        for w in words:
            if w in seen:
                continue
            if self.tagger.tag_word(w, self.lemmatizer.lemma(w)) in (NOUN, VERB, ADJ):
                seen.append(w)
        return seen

    def extract(self, parent: str, term: str) -> str:
        term_string = " ".join(
            part
            for part in (self.lemmatizer.lemma_phrase(term), self.lemmatizer.lemma_phrase(parent))
            if part
        )
        candidates = self._candidates(term_string.split())
        if len(candidates) <= 1:
            return parent
        vectors = self.provider.embed([term_string] + candidates)
        doc = vectors[0]
        doc_norm = np.linalg.norm(doc) or 1.0
        best_word, best_score = None, -np.inf
        for word, vec in zip(candidates, vectors[1:]):
            norm = np.linalg.norm(vec) or 1.0
            score = float(vec @ doc) / (norm * doc_norm)
            if score > best_score:
                best_word, best_score = word, score
        return best_word


@dataclass(slots=True)
class ConceptMapping:
    """Parent concept -> related terms, plus story provenance per term.

    A member of "" is a placeholder: the parent had no neighbor and no
    splittable wording, and will be committed as a self-link node.
    """

    parents: dict[str, list[str]]
    provenance: dict[str, set[str]]

    def terms(self) -> list[str]:
        out = list(self.parents)
        for members in self.parents.values():
            out.extend(m for m in members if m and m not in out)
        return out

    def check(self) -> None:
        for parent, members in self.parents.items():
            if not members:
                raise ValueError(f"parent {parent!r} has an empty member list")
            for m in members:
                if m and m != parent and m in self.parents:
                    raise ValueError(f"{m!r} is both a parent and a member of {parent!r}")
        for term in self.terms():
            if not self.provenance.get(term):
                raise ValueError(f"term {term!r} has no supporting stories")


def pair_terms(
    clusters: list[PhraseCluster],
    matrix: SimilarityMatrix,
    keywords: KeywordExtractor,
    phrase_stories: dict[str, set[str]],
    threshold: float = SIMILARITY_THRESHOLD,
) -> ConceptMapping:
    """Group cluster representatives into the concept mapping.

    For each representative T (lexicographic order) the best-scoring other
    representative strictly above ``threshold`` is picked, then the keyword
    step refines the pair into a parent.  Cluster member lists are merged
    in afterwards and entries left with no members are dropped.
    """
    reps = {c.representative: c for c in clusters}
    mapping: dict[str, list[str]] = {}
    ordered = sorted(reps)
    for term in ordered:
        best_partner, best_score = "", threshold
        for other in sorted(matrix.terms):
            if other == term:
                continue
            score = matrix.score(term, other)
            if score > best_score:
                best_partner, best_score = other, score
        parent = keywords.extract(best_partner, term)
        if parent:
            mapping.setdefault(parent, [])
            if term not in mapping[parent]:
                mapping[parent].append(term)
        else:
            mapping.setdefault(term, [])
            if "" not in mapping[term]:
                mapping[term].append("")
    for term in ordered:
        members = sorted(reps[term].members - {term})
        mapping.setdefault(term, [])
        for m in members:
            if m not in mapping[term]:
                mapping[term].append(m)
    mapping = {parent: members for parent, members in mapping.items() if members}
    mapping = _restore_forest(mapping)

    provenance: dict[str, set[str]] = {}
    for parent, members in mapping.items():
        for term in [parent] + [m for m in members if m]:
            provenance[term] = set(phrase_stories.get(term, ()))
    for parent, members in mapping.items():
        if not provenance[parent]:
            for m in members:
                if m:
                    provenance[parent] |= provenance.get(m, set())
    result = ConceptMapping(parents=mapping, provenance=provenance)
    result.check()
    return result


def _restore_forest(mapping: dict[str, list[str]]) -> dict[str, list[str]]:
    """Fold away parents that also appear as members of another parent.

    The similarity pass can make a representative both a parent (of its
    cluster members) and a member (under a keyword).  The smaller entry is
    folded into the one that owns it so the result is a one-level forest.
    """
    while True:
        violation = None
        for child in sorted(mapping):
            owners = sorted(
                p for p, members in mapping.items() if p != child and child in members
            )
            if owners:
                violation = (child, owners[0])
                break
        if violation is None:
            return mapping
        child, owner = violation
        for m in mapping.pop(child):
            if m and m != owner and m != child and m not in mapping[owner]:
                mapping[owner].append(m)

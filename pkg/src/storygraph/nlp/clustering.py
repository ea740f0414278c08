"""Grouping of noun phrases by contiguous token containment.

Phrases are folded into clusters greedily in ascending token-length order:
each phrase joins the cluster of the shortest existing representative that
occurs as a contiguous token run inside it, otherwise it founds a new
cluster.  The representative is therefore always the shortest member, and
"item label" absorbs "item label size" but not "label size item".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chunking import NounPhrase


@dataclass(slots=True)
class PhraseCluster:
    representative: str
    members: set[str] = field(default_factory=set)
    story_refs: set[str] = field(default_factory=set)


def _contains_run(haystack: list[str], needle: list[str]) -> bool:
    if len(needle) > len(haystack):
        return False
    return any(
        haystack[i : i + len(needle)] == needle
        for i in range(len(haystack) - len(needle) + 1)
    )


def cluster_substrings(phrases: list[NounPhrase]) -> list[PhraseCluster]:
    # fold duplicates first: one entry per distinct phrase text
    by_text: dict[str, dict] = {}
    for p in phrases:
        entry = by_text.setdefault(p.text, {"tokens": p.tokens, "refs": set()})
        entry["refs"].add(p.story_id)

    clusters: list[PhraseCluster] = []
    reps: list[tuple[str, list[str]]] = []
    for text in sorted(by_text, key=lambda t: (len(by_text[t]["tokens"]), t)):
        tokens = by_text[text]["tokens"]
        candidates = [
            i for i, (_, rep_tokens) in enumerate(reps) if _contains_run(tokens, rep_tokens)
        ]
        if candidates:
            best = min(candidates, key=lambda i: (len(reps[i][1]), reps[i][0]))
            clusters[best].members.add(text)
            clusters[best].story_refs.update(by_text[text]["refs"])
        else:
            clusters.append(
                PhraseCluster(representative=text, members={text}, story_refs=set(by_text[text]["refs"]))
            )
            reps.append((text, tokens))
    clusters.sort(key=lambda c: c.representative)
    return clusters


def member_stories(phrases: list[NounPhrase]) -> dict[str, set[str]]:
    """Story ids in which each distinct phrase text occurs."""
    out: dict[str, set[str]] = {}
    for p in phrases:
        out.setdefault(p.text, set()).add(p.story_id)
    return out

import random

from hypothesis import given, settings, strategies as st

from storygraph.nlp.chunking import NounPhrase
from storygraph.nlp.clustering import cluster_substrings, member_stories


def phrase(text, story_id="s1"):
    tokens = text.split()
    return NounPhrase(
        text=text,
        tokens=tokens,
        lemmas=tokens,
        span=(0, len(text)),
        story_id=story_id,
        segment="goal",
    )


def as_mapping(clusters):
    return {c.representative: set(c.members) for c in clusters}


def contains_run(haystack, needle):
    if len(needle) > len(haystack):
        return False
    return any(
        haystack[i : i + len(needle)] == needle
        for i in range(len(haystack) - len(needle) + 1)
    )


def check_clustering(texts, clusters):
    """Greedy-containment oracle, checked property by property."""
    mapping = as_mapping(clusters)
    seen = [m for c in clusters for m in c.members]
    assert sorted(seen) == sorted(set(texts)), "partition must cover every phrase once"
    for rep, members in mapping.items():
        assert rep in members
        rep_tokens = rep.split()
        for m in members:
            assert contains_run(m.split(), rep_tokens), f"{m!r} must contain {rep!r}"
        assert min(len(m.split()) for m in members) == len(rep_tokens), (
            "representative must be a shortest member"
        )
    reps = list(mapping)
    for a in reps:
        for b in reps:
            if a != b:
                assert not contains_run(b.split(), a.split()) or len(a.split()) == len(
                    b.split()
                ), f"representative {b!r} should have joined {a!r}"


def test_item_label_absorbs_longer_phrase():
    clusters = cluster_substrings(
        [phrase("item label"), phrase("item label size", "s2")]
    )
    assert as_mapping(clusters) == {"item label": {"item label", "item label size"}}
    assert clusters[0].story_refs == {"s1", "s2"}


def test_order_matters_for_containment():
    clusters = cluster_substrings([phrase("item label"), phrase("label size item")])
    assert set(as_mapping(clusters)) == {"item label", "label size item"}


def test_overlap_resolved_toward_shortest_then_lexicographic():
    clusters = cluster_substrings(
        [phrase("a b"), phrase("a b c"), phrase("b c d")]
    )
    assert as_mapping(clusters) == {
        "a b": {"a b", "a b c"},
        "b c d": {"b c d"},
    }


def test_duplicates_fold_and_collect_refs():
    clusters = cluster_substrings(
        [phrase("order", "s1"), phrase("order", "s2"), phrase("order status", "s3")]
    )
    (c,) = clusters
    assert c.members == {"order", "order status"}
    assert c.story_refs == {"s1", "s2", "s3"}


def test_empty_input():
    assert cluster_substrings([]) == []


def test_clusters_sorted_by_representative():
    clusters = cluster_substrings([phrase("zebra"), phrase("apple"), phrase("mango")])
    assert [c.representative for c in clusters] == ["apple", "mango", "zebra"]


def test_member_stories():
    out = member_stories(
        [phrase("order", "s1"), phrase("order", "s2"), phrase("menu", "s1")]
    )
    assert out == {"order": {"s1", "s2"}, "menu": {"s1"}}


def random_phrase_set(rng, vocab=("a", "b", "c", "d", "e")):
    count = rng.randint(0, 30)
    texts = set()
    while len(texts) < count:
        length = rng.randint(1, 4)
        texts.add(" ".join(rng.choice(vocab) for _ in range(length)))
    return [phrase(t, f"s{i}") for i, t in enumerate(sorted(texts))]


def test_random_sets_satisfy_containment_oracle():
    rng = random.Random(42)
    for _ in range(200):
        phrases = random_phrase_set(rng)
        clusters = cluster_substrings(phrases)
        check_clustering([p.text for p in phrases], clusters)


@settings(max_examples=60, deadline=None)
@given(
    texts=st.lists(
        st.lists(st.sampled_from("abc"), min_size=1, max_size=4).map(" ".join),
        max_size=12,
        unique=True,
    )
)
def test_clustering_properties(texts):
    clusters = cluster_substrings([phrase(t, f"s{i}") for i, t in enumerate(texts)])
    check_clustering(texts, clusters)

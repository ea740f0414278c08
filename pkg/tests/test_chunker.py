from hypothesis import given, strategies as st

from storygraph.nlp.crud import extract_crud_mentions
from storygraph.nlp.preprocess import normalize_text


def goal_phrases(extractor, store, story_factory, goal):
    story = story_factory(goal)
    return story, [p for p in extractor.phrases(story) if p.segment == "goal"]


def test_adjective_noun_phrase(extractor, store, story_factory):
    _, phrases = goal_phrases(extractor, store, story_factory, "see shipping offers")
    assert [p.text for p in phrases] == ["shipping offers"]
    assert phrases[0].lemmas == ["ship", "offer"]


def test_maximal_munch_compound(extractor, store, story_factory):
    _, phrases = goal_phrases(
        extractor, store, story_factory, "change the item label size"
    )
    assert [p.text for p in phrases] == ["item label size"]


def test_pronoun_only_goal_has_no_phrases(extractor, store, story_factory):
    _, phrases = goal_phrases(extractor, store, story_factory, "do it")
    assert phrases == []


def test_preposition_keeps_phrase_together(extractor, store, story_factory):
    _, phrases = goal_phrases(extractor, store, story_factory, "browse the list of books")
    assert [p.text for p in phrases] == ["list of books"]


def test_conjunction_keeps_phrase_together(extractor, store, story_factory):
    _, phrases = goal_phrases(
        extractor, store, story_factory, "clean the aquarium and the fountain"
    )
    assert [p.text for p in phrases] == ["aquarium and fountain"]


def test_determiner_dropped_from_text_but_span_excludes_it(
    extractor, store, story_factory
):
    story, phrases = goal_phrases(extractor, store, story_factory, "track the order")
    (p,) = phrases
    assert p.text == "order"
    assert story.raw_text[slice(*p.span)] == "order"


def test_phrases_cover_all_segments(extractor, store, story_factory):
    story = story_factory("update the menu", role="waiter", benefit="guests see prices")
    segments = {p.segment for p in extractor.phrases(story)}
    assert segments == {"role", "goal", "benefit"}


def test_crud_mention_for_read_verb(extractor, glossary, store, story_factory):
    story = story_factory("view my profile")
    mentions = extract_crud_mentions(story, extractor, glossary)
    assert [(m.category, m.term) for m in mentions] == [("read", "profile")]
    assert story.raw_text[slice(*mentions[0].term_span)] == "profile"


def test_crud_mentions_for_coordinated_verbs(extractor, glossary, store, story_factory):
    story = story_factory("create and delete accounts")
    mentions = extract_crud_mentions(story, extractor, glossary)
    assert [(m.category, m.term) for m in mentions] == [
        ("create", "accounts"),
        ("delete", "accounts"),
    ]


def test_verb_without_following_phrase_is_skipped(
    extractor, glossary, store, story_factory
):
    story = story_factory("view it")
    assert extract_crud_mentions(story, extractor, glossary) == []


@given(
    goal=st.sampled_from(
        [
            "see shipping offers",
            "change the item label size",
            "clean the aquarium and the fountain",
            "browse the list of books",
            "track the new order",
            "update the menu",
        ]
    ),
    role=st.sampled_from(["user", "shop owner", "night manager"]),
)
def test_span_fidelity(goal, role):
    from storygraph.nlp.chunking import PhraseExtractor
    from storygraph.nlp.crud import VerbGlossary
    from storygraph.nlp.lemmas import Lemmatizer
    from storygraph.nlp.tagging import Tagger
    from storygraph.stories import StoryStore

    lem = Lemmatizer()
    tag = Tagger(lem)
    extractor = PhraseExtractor(lem, tag, extra_verbs=VerbGlossary.load_default().verbs)
    store = StoryStore()
    store.add_stakeholder("u1", "Ada")
    store.create_project("p1", "Shop", "testbed")
    store.join_project("p1", "u1")
    story = store.create_story(
        "p1", "u1", f"As a {role}, I want to {goal} so that the day goes well."
    )
    for p in extractor.phrases(story):
        sliced = story.raw_text[slice(*p.span)]
        assert normalize_text(sliced, lem, tag) == p.text

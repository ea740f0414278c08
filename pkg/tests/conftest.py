import pytest

from storygraph.embedding import KeywordExtractor, TrigramHashEmbedder
from storygraph.nlp import Lemmatizer, PhraseExtractor, Tagger, VerbGlossary
from storygraph.stories import StoryStore


@pytest.fixture(scope="session")
def lemmatizer():
    return Lemmatizer()


@pytest.fixture(scope="session")
def tagger(lemmatizer):
    return Tagger(lemmatizer)


@pytest.fixture(scope="session")
def glossary():
    return VerbGlossary.load_default()


@pytest.fixture(scope="session")
def extractor(lemmatizer, tagger, glossary):
    return PhraseExtractor(lemmatizer, tagger, extra_verbs=glossary.verbs)


@pytest.fixture(scope="session")
def provider():
    return TrigramHashEmbedder()


@pytest.fixture(scope="session")
def keyword_extractor(provider, lemmatizer, tagger):
    return KeywordExtractor(provider, lemmatizer, tagger)


@pytest.fixture()
def store():
    s = StoryStore()
    s.add_stakeholder("u1", "Ada")
    s.add_stakeholder("u2", "Grace")
    s.create_project("p1", "Shop", "A small web shop.")
    s.join_project("p1", "u1")
    s.join_project("p1", "u2")
    return s


def make_story(store, goal, author="u1", project="p1", role="user", benefit="life is easier"):
    return store.create_story(
        project, author, f"As a {role}, I want to {goal} so that {benefit}."
    )


@pytest.fixture()
def story_factory(store):
    def make(goal, **kw):
        return make_story(store, goal, **kw)

    return make

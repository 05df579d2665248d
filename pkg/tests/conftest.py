import pytest

from grpd.core import validate_groupoid
from grpd.corpus import CorpusConfig, corpus_groupoids


@pytest.fixture(scope="session")
def corpus():
    """Seeded mid-size corpus shared across unit-test modules."""
    members = corpus_groupoids(CorpusConfig(seed=20250809, count=40))
    for g in members:
        validate_groupoid(g)
    return members


@pytest.fixture(scope="session")
def small_corpus(corpus):
    """Members small enough for the quadratic searches."""
    return [g for g in corpus if len(g.arrows) <= 30]

import pytest

from knotdom.cli import default_corpus_path
from knotdom.knotbase import load_corpus
from knotdom.poset import build_graph


@pytest.fixture(scope="session")
def corpus_path():
    return default_corpus_path()


@pytest.fixture(scope="session")
def corpus(corpus_path):
    return load_corpus(corpus_path)


@pytest.fixture(scope="session")
def graph(corpus):
    return build_graph(corpus)

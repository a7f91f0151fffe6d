import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from timexlink import default_lexicon, default_ruleset, make_document  # noqa: E402


@pytest.fixture(scope="session")
def ruleset():
    return default_ruleset()


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture
def doc():
    return make_document("d1", "1997-06-12", [["Hello", "."]])

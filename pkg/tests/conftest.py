import os

import pytest

from seqlibs.config import DATA_DIR
from seqlibs.corpus import default_corpus
from seqlibs.matrix import load_bases
from seqlibs.stable import default_stable


@pytest.fixture(scope="session")
def stable():
    return default_stable()


@pytest.fixture(scope="session")
def stable_no_primes(stable):
    return stable.with_options(primes_recognizer=False)


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()


@pytest.fixture(scope="session")
def records(corpus):
    return {record.id: record for record in corpus}


@pytest.fixture
def worked_bases():
    return load_bases(os.path.join(DATA_DIR, "worked_example.bases"))


@pytest.fixture
def fibonacci_bases():
    return load_bases(os.path.join(DATA_DIR, "fibonacci.bases"))


@pytest.fixture(scope="session")
def base(stable):
    by_key = {entry.key: entry for entry in stable.entries}
    return lambda key: by_key[key]

import pytest

from cmstruct import (
    ModelSpec,
    fit,
    generate_corpus,
    parse_map,
)
from cmstruct.evaluation import dataset_from_corpus
from cmstruct.generate import default_params

STAR6_JSON = (
    b'{"id":"star6","nodes":[{"id":"c"},{"id":"l1"},{"id":"l2"},{"id":"l3"},'
    b'{"id":"l4"},{"id":"l5"}],"edges":[{"source":"c","target":"l1"},'
    b'{"source":"c","target":"l2"},{"source":"c","target":"l3"},'
    b'{"source":"c","target":"l4"},{"source":"c","target":"l5"}]}'
)


@pytest.fixture
def path5_cm():
    return parse_map(b"a,b\nb,c\nc,d\nd,e", "csv", map_id="path5")


@pytest.fixture
def star6_cm():
    return parse_map(STAR6_JSON, "json")


@pytest.fixture
def cycle3_cm():
    return parse_map(b"a,b\nb,c\nc,a", "csv", map_id="cycle3")


@pytest.fixture
def net4_cm():
    # a->b, b->c, c->a, a->d, d->b: degrees [3, 3, 2, 2]
    return parse_map(b"a,b\nb,c\nc,a\na,d\nd,b", "csv", map_id="net4")


@pytest.fixture(scope="session")
def noise0_corpus():
    return generate_corpus(100, default_params(0.0), master_seed=42)


@pytest.fixture(scope="session")
def noisy_corpus():
    return generate_corpus(100, default_params(), master_seed=42)


@pytest.fixture(scope="session")
def noise0_dataset(noise0_corpus):
    return dataset_from_corpus(noise0_corpus)


@pytest.fixture(scope="session")
def noisy_dataset(noisy_corpus):
    return dataset_from_corpus(noisy_corpus)


@pytest.fixture(scope="session")
def noise0_tree(noise0_dataset):
    X, y = noise0_dataset.to_arrays()
    return fit(ModelSpec(kind="decision_tree", seed=7), X, y)

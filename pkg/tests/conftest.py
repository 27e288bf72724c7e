import random

import pytest

from conedec import build_corpus, is_generic
from conedec.corpus import pentagon_cone, pyramid


@pytest.fixture(scope="session")
def corpus():
    """(entry, polytope) pairs for the whole bundled corpus, built once."""
    return [(e, e.build()) for e in build_corpus()]


@pytest.fixture(scope="session")
def pyramid_poly():
    return pyramid()


@pytest.fixture(scope="session")
def pentagon_cone_poly():
    return pentagon_cone()


def seeded_generic_functionals(p, count, seed=0):
    """Distinct edge-generic integer functionals from a seeded generator."""
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        cand = tuple(rng.randint(-9, 9) for _ in range(p.dim))
        if any(cand) and cand not in found and is_generic(cand, p):
            found.append(cand)
    return found

import random

import pytest

from primegaps import pair, pair_stream

# One fixed seed for every randomized sweep; reruns are reproducible.
SEED = 20260824


@pytest.fixture(scope="session")
def pairs_1e5():
    return list(pair_stream(10**5))


@pytest.fixture(scope="session")
def corpus_pairs():
    """Fixed mixed corpus of 10^4 pairs for precision tests.

    Half are real consecutive pairs; the rest are synthetic (p not
    necessarily prime, arithmetic only), weighted toward large p and small
    gaps where naive evaluation cancels catastrophically.  The last entry
    pins the worst case: p adjacent to 1e12 with gap 2.
    """
    real = list(pair_stream(10**5))[:5000]
    rng = random.Random(SEED)
    synthetic = []
    for k in range(4999):
        p = rng.randint(10**6, 10**12)
        g = 2 * rng.randint(1, 50)
        synthetic.append(pair(5000 + k + 1, p, p + g))
    synthetic.append(pair(10**4, 999999999999, 10**12 + 1))
    return real + synthetic

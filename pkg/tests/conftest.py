import random

import pytest

from expmaps.catalog import char_p_square_entry, russell

CHARS = (0, 2, 3, 5)


@pytest.fixture(scope="session")
def russell_entries():
    return {p: russell(p) for p in CHARS}


@pytest.fixture(scope="session")
def char2_entry():
    return char_p_square_entry(2)


def random_coeff(rng: random.Random, field, nonzero=False):
    p = field.characteristic
    while True:
        c = field.coeff(rng.randrange(p) if p else rng.randrange(-4, 5))
        if c or not nonzero:
            return c


def random_element(rng: random.Random, algebra, max_degree=4, nterms=3):
    basis = algebra.monomial_basis(max_degree)
    out = algebra.zero()
    for _ in range(nterms):
        out = out + algebra.element(rng.choice(basis)).scale(
            random_coeff(rng, algebra.field)
        )
    return out


def random_nonzero_element(rng, algebra, max_degree=4, nterms=3):
    while True:
        a = random_element(rng, algebra, max_degree, nterms)
        if a:
            return a

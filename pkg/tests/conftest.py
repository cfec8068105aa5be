import random

import pytest

from musym.polys import Polynomial, rat, term_from_exps


@pytest.fixture
def rng():
    return random.Random(20240613)


def random_poly(rng, space="r", nvars=2, max_terms=4, max_exp=3, max_coeff=5):
    """Small random polynomial for property tests."""
    coeffs = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = {}
        for i in range(1, nvars + 1):
            e = rng.randint(0, max_exp)
            if e:
                exps[(space, i)] = e
        c = rng.randint(-max_coeff, max_coeff)
        term = term_from_exps(exps)
        coeffs[term] = coeffs.get(term, rat(0)) + c
    return Polynomial(coeffs)


def random_homogeneous(rng, m, delta, max_coeff=6):
    """Random homogeneous degree-delta polynomial in r1..rm (maybe zero)."""
    from musym.linsys import degree_terms

    terms = degree_terms(m, delta)
    coeffs = {}
    for t in terms:
        if rng.random() < 0.6:
            c = rng.randint(-max_coeff, max_coeff)
            if c:
                coeffs[t] = rat(c)
    return Polynomial(coeffs)

import random

import pytest

from dunklcms.coeffs import ParamPoly, ParamRatio, Rat


def random_param_poly(rng: random.Random, symbols=(0, 1, 2), max_terms=4, max_exp=3) -> ParamPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * 5
        for s in symbols:
            e[s] = rng.randint(0, max_exp)
        terms[tuple(e)] = Rat(rng.randint(-9, 9))
    return ParamPoly(terms)


def random_param_ratio(rng: random.Random, symbols=(0,)) -> ParamRatio:
    num = random_param_poly(rng, symbols)
    den = random_param_poly(rng, symbols, max_terms=2, max_exp=2)
    while den.is_zero():
        den = random_param_poly(rng, symbols, max_terms=2, max_exp=2)
    return ParamRatio(num, den)


@pytest.fixture
def rng():
    return random.Random(20240615)

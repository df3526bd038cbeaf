import random

import pytest
from hypothesis import given, settings, strategies as st

from ultracoh import padic_groups as pg


def test_vp():
    assert pg.vp(48, 2) == 4
    assert pg.vp(7, 3) == 0


@pytest.mark.parametrize("n,p,N,j", [(2, 2, 8, 2), (2, 3, 6, 1)])
def test_commutator_lemma_small(n, p, N, j):
    rep = pg.verify_commutator_lemma(n, p, N, j, 60, seed=3)
    assert rep["passed"]
    assert rep["b"]["order"] == p ** (n * n)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_commutator_level_hypothesis(s1, s2):
    p, N = 3, 6
    ch = pg.Chart(2, 1, p, N)
    a = ch.random_element(random.Random(s1), 1)
    b = ch.random_element(random.Random(s2), 2)
    assert pg.commutator(a, b).level() >= min(1 + 2, N)


def test_inverse_and_identity():
    ch = pg.Chart(3, 1, 3, 5)
    g = ch.random_element(random.Random(0))
    assert (g * g.inverse()).is_identity()


def test_log_exp_inverse():
    rng = random.Random(1)
    for p, j in ((3, 1), (2, 2)):
        ch = pg.Chart(2, j, p, 8)
        for _ in range(10):
            g = ch.random_element(rng)
            back = pg.exp(pg.log(g), p, 8)
            assert back.entries == g.entries


def test_log_domain_error():
    g = pg.Chart(2, 1, 2, 6).random_element(random.Random(0), 1)
    if g.level() < 2:
        with pytest.raises(pg.DomainError):
            pg.log(g)


def test_pth_root():
    rng = random.Random(2)
    for p in (2, 3):
        ch = pg.Chart(2, pg.min_level(p) + 1, p, 8)
        for _ in range(5):
            g = ch.random_element(rng)
            eta = pg.pth_root(g)
            assert (eta ** p).entries == g.entries


def test_multiplication_series():
    assert pg.multiplication_series_check(2, 3, 6, 1, 30)["passed"]
    assert pg.multiplication_series_check(2, 2, 8, 2, 30)["passed"]


def test_element_json_round_trip():
    g = pg.Chart(2, 1, 3, 4).random_element(random.Random(5))
    assert pg.CongruenceElement.from_json(g.to_json()) == g


def test_rejects_low_level():
    with pytest.raises(ValueError):
        pg.CongruenceElement(2, 1, 3, 4, ((2, 0), (0, 1)))

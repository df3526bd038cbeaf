import random

import pytest

from ultracoh import banach
from ultracoh.cochain_lab import (AbelianWindow, CongruenceWindow, HomotopyParams, READINGS,
                                  homotopy_apply, homotopy_residual_decomposition,
                                  orbit_representation, random_cochain, reading_name,
                                  residual_cochain)
from ultracoh.cochain_lab.cochains import vec_is_zero, vec_sub
from ultracoh.scalars import LaurentField

DISPLAYED = reading_name(READINGS[0])


def setup(p, U, l=0, m=3):
    N = p ** (l + m)
    F = LaurentField(p, N)
    r = len(U)
    gamma = [[(F.one if i == j else F.zero) + F.t * F(U[i][j]) for j in range(r)] for i in range(r)]
    W = AbelianWindow(p, [gamma], l, m, N)
    em1 = banach.BoundedMap(banach.mat_sub(gamma, banach.identity(r, p, N)), p, N)
    return W, banach.quasi_inverse(em1).g


def test_h_on_degree_one_is_G_f_eps():
    W, g = setup(2, [[1, 1], [0, 1]])
    f = random_cochain(W, 1, random.Random(0))
    prm = HomotopyParams(1, g, 0, 1)
    h = homotopy_apply(f, prm)
    G = prm.G(W)
    want = banach.mat_vec(G, f(W.eta_power(1)), 2, W.prec)
    assert vec_is_zero(vec_sub(h(), want))


def test_residual_vanishes_when_gamma_minus_one_invertible():
    W, g = setup(3, [[1, 2], [0, 1]])
    rng = random.Random(1)
    for n in (1, 2):
        f = random_cochain(W, n, rng)
        for i in (0, 1, 2):
            res = residual_cochain(f, HomotopyParams(i, g, 0, 1))
            pts = list(res.points())[:150]
            assert all(vec_is_zero(res(*a)) for a in pts)


def test_nilpotent_case_separates_term1_arguments():
    W, g = setup(2, [[0, 1, 1], [0, 0, 1], [0, 0, 0]])
    f = random_cochain(W, 2, random.Random(2))
    _, terms, rep = homotopy_residual_decomposition(f, HomotopyParams(0, g, 0, 1), max_points=150)
    assert rep.displayed_reading_holds
    assert not rep.readings[reading_name(("head", "plain"))]
    assert rep.term_valuations[0] != float("inf")     # term 1 is really present


def test_nonabelian_window_pins_down_the_reading():
    p, prec = 3, 6
    rep, r, _ = orbit_representation(2, p, 2, prec)
    W = CongruenceWindow(2, p, 1, 2, rep, r, prec, eta=((1, 1), (0, 1)))
    eta = rep(W.eta)
    g = banach.quasi_inverse(banach.BoundedMap(
        banach.mat_sub(eta, banach.identity(r, p, prec)), p, prec)).g
    f = random_cochain(W, 2, random.Random(0), lazy=True)
    _, _, rp = homotopy_residual_decomposition(f, HomotopyParams(1, g, 1, 1, 0, d_val=0),
                                               max_points=40)
    assert rp.verified_readings == [DISPLAYED]


def test_bound_increases_iff_setup():
    W, g = setup(2, [[1, 1], [0, 1]], l=2, m=3)
    bounds = [HomotopyParams(i, g, 2, 1).residual_bound(2, 0) for i in (2, 3, 4)]
    assert HomotopyParams(2, g, 2, 1).setup_bound_holds(2)
    assert bounds[0] < bounds[1] < bounds[2]
    # at l = 0 with |g| = |t^-1| the set-up inequality 2 < 1 fails and the bound decreases
    p0 = HomotopyParams(0, g, 0, 1)
    assert not p0.setup_bound_holds(2)
    assert HomotopyParams(1, g, 0, 1).residual_bound(2, 0) < p0.residual_bound(2, 0)


def test_guards():
    W, g = setup(2, [[1]], l=1, m=2)
    f = random_cochain(W, 1, random.Random(0))
    with pytest.raises(ValueError):
        homotopy_apply(f, HomotopyParams(0, g, 1, 1))           # i < l
    with pytest.raises(ValueError):
        homotopy_apply(f, HomotopyParams(1, g, 0, 1))           # level mismatch
    f0 = random_cochain(W, 0, random.Random(0))
    with pytest.raises(ValueError):
        homotopy_apply(f0, HomotopyParams(1, g, 1, 1))

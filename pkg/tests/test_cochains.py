import itertools
import random

import numpy as np
import pytest

from ultracoh import banach
from ultracoh.cochain_lab import (AbelianWindow, CongruenceWindow, Cochain, LatticeWindow,
                                  action_certificate, c_analytic_seminorm, certificate_from_profile,
                                  certificate_holds, coboundary_of_vector, differential,
                                  orbit_representation, random_cochain, window_certificate)
from ultracoh.cochain_lab.analytic import Certificate, Rejection
from ultracoh.cochain_lab.cochains import vec_add, vec_is_zero, vec_sub
from ultracoh.scalars import INF, LaurentField


def one_plus_t(F, A):
    r = len(A)
    return [[(F.one if i == j else F.zero) + F.t * F(A[i][j]) for j in range(r)] for i in range(r)]


@pytest.fixture
def window():
    F = LaurentField(3, 9)
    g = one_plus_t(F, [[1, 1], [0, 1]])
    return AbelianWindow(3, [g], 0, 2, 9)


def test_window_group_structure(window):
    W = window
    assert W.order == 9
    e = W.identity
    for a, b, c in itertools.product(W.elements, repeat=3):
        assert W.mul(W.mul(a, b), c) == W.mul(a, W.mul(b, c))
    for a in W.elements:
        assert W.mul(a, W.inv(a)) == e
    assert W.is_faithful()


def test_window_action_is_homomorphism(window):
    W = window
    p, N = W.p, W.prec
    for a, b in itertools.product(W.elements, repeat=2):
        lhs = W.action(W.mul(a, b))
        rhs = banach.mat_mul(W.action(a), W.action(b), p, N)
        assert banach.is_zero_matrix(banach.mat_sub(lhs, rhs))


def test_differential_low_degrees_explicit(window):
    W = window
    rng = random.Random(0)
    f1 = random_cochain(W, 1, rng)
    df1 = differential(f1)
    for g, h in itertools.product(W.elements, repeat=2):
        # (df)(g, h) = g f(h) - f(gh) + f(g)
        want = vec_add(vec_sub(W.act(g, f1(h)), f1(W.mul(g, h))), f1(g))
        assert vec_is_zero(vec_sub(df1(g, h), want))
    f0 = random_cochain(W, 0, rng)
    for g in W.elements:
        assert vec_is_zero(vec_sub(differential(f0)(g), vec_sub(W.act(g, f0()), f0())))


def test_dd_zero_object_path(window):
    rng = random.Random(1)
    for n in (0, 1):
        f = random_cochain(window, n, rng)
        ddf = differential(differential(f))
        assert all(vec_is_zero(ddf(*a)) for a in ddf.points())


def test_coboundary_is_cocycle(window):
    F = LaurentField(3, 9)
    c = coboundary_of_vector(window, [F.t, F.one])
    dc = differential(c)
    assert all(vec_is_zero(dc(*a)) for a in dc.points())


def test_lattice_matches_object_path(window):
    L = LatticeWindow(window)
    assert L.is_faithful()
    rng = random.Random(2)
    for n in (0, 1, 2):
        f = random_cochain(window, n, rng, digits=window.prec)
        assert np.array_equal(L.differential(L.to_array(f), n) % 3,
                              L.to_array(differential(f)) % 3)


def test_lattice_dd_zero(window):
    L = LatticeWindow(window)
    nrng = np.random.default_rng(0)
    for n in (0, 1, 2):
        ok, bad, total = L.dd_zero(L.random_table(n, nrng), n)
        assert ok and bad == 0 and total == 9 ** (n + 2)


def test_lattice_detects_broken_differential(window):
    # a table that is not a cochain image: dd of a perturbed "dF" is nonzero
    L = LatticeWindow(window)
    nrng = np.random.default_rng(1)
    F = L.random_table(1, nrng)
    dF = L.differential(F, 1)
    dF[0, 1, 0] = (dF[0, 1, 0] + 1) % 3
    blocks = [np.count_nonzero(L.differential_slice(dF, 2, a)) for a in range(L.q)]
    assert sum(blocks) > 0


def test_cochain_table_round_trip(window):
    f = random_cochain(window, 1, random.Random(3))
    g = Cochain.from_table(window, 1, f.table())
    assert all(vec_is_zero(vec_sub(f(*a), g(*a))) for a in f.points())


def test_two_generator_window():
    F = LaurentField(2, 4)
    g1 = one_plus_t(F, [[1, 1], [0, 1]])
    g2 = one_plus_t(F, [[0, 1], [0, 0]])
    W = AbelianWindow(2, [g1, g2], 0, 2, 4)
    assert W.order == 16
    L = LatticeWindow(W)
    assert L.is_faithful()
    ok, _, _ = L.dd_zero(L.random_table(1, np.random.default_rng(5)), 1)
    assert ok


def test_congruence_window_orbit_representation():
    rep, r, pts = orbit_representation(2, 3, 2, 6)
    assert r == len(pts) == 9
    W = CongruenceWindow(2, 3, 1, 2, rep, r, 6, eta=((1, 1), (0, 1)))
    assert W.order == 3 ** 8
    rng = random.Random(0)
    els = W.elements
    for _ in range(20):
        a, b = rng.choice(els), rng.choice(els)
        lhs = W.action(W.mul(a, b))
        rhs = banach.mat_mul(W.action(a), W.action(b), 3, 6)
        assert banach.is_zero_matrix(banach.mat_sub(lhs, rhs))


def test_eta_power_range(window):
    assert window.eta_power(1) == (3,)
    with pytest.raises(ValueError):
        window.eta_power(2)


# -- analyticity -------------------------------------------------------------

def test_certificate_unipotent_profile():
    cert = certificate_from_profile([(0, 1), (1, 2), (2, 4)], 2)
    assert isinstance(cert, Certificate)
    assert (cert.v_e, cert.v_c) == (0, 1)
    assert certificate_holds(cert, [(0, 1), (1, 2), (2, 4)], 2)


def test_certificate_rejects_flat_profile():
    rej = certificate_from_profile([(0, 1), (1, 1), (2, 1)], 3)
    assert isinstance(rej, Rejection)


def test_action_certificate_growth():
    F = LaurentField(2, 16)
    g = one_plus_t(F, [[1, 1], [0, 1]])
    cert = action_certificate([g], 2, 16, l_max=3)
    # (1 + tU)^(2^i) = 1 + t^(2^i) U^(2^i) has valuation exactly 2^i
    assert [w for _, w in cert.profile] == [1, 2, 4, 8]
    assert (cert.v_e, cert.v_c) == (0, 1)


def test_window_certificate_matches_direct(window):
    cert = window_certificate(window)
    assert cert.v_c >= 1 and certificate_holds(cert, cert.profile, 3)


def test_seminorm_of_constant_is_trivial(window):
    F = LaurentField(3, 9)
    f = Cochain.constant(window, 1, [F.one, F.t])
    assert c_analytic_seminorm(f, 1).d_val == -INF


def test_seminorm_detects_jumps(window):
    F = LaurentField(3, 9)
    table = {(a,): [F(a[0] % 3), F.zero] for a in window.elements}
    f = Cochain.from_table(window, 1, table)
    s = c_analytic_seminorm(f, 1)
    # values differ at valuation 0 inside cosets of Gamma_0 but not of Gamma_1
    assert dict(s.profile)[0] == 0 and dict(s.profile)[1] == INF
    assert s.d_val == 1

import pytest

from ultracoh import banach
from ultracoh.cochain_lab import (check_commuting, koszul_cohomology, main_theorem_experiment,
                                  procyclic_cohomology)
from ultracoh.scalars import LaurentField

F = LaurentField(3, 8)


def diag(*xs):
    return [[xs[i] if i == j else F.zero for j in range(len(xs))] for i in range(len(xs))]


def test_procyclic_by_hand():
    assert procyclic_cohomology(2, diag(F.one, F.one), 3, 8).dims == (2, 2)
    assert procyclic_cohomology(2, diag(F.one + F.t, F.one + F.t), 3, 8).dims == (0, 0)
    jordan = [[F.one, F.t], [F.zero, F.one]]
    pc = procyclic_cohomology(2, jordan, 3, 8)
    assert pc.dims == (1, 1)
    # the invariant line is spanned by e_0
    v = pc.h0_basis[0]
    assert v[1].is_zero() and not v[0].is_zero()


def test_procyclic_rejects_singular():
    with pytest.raises(ValueError):
        procyclic_cohomology(2, diag(F.one, F.zero), 3, 8)


def test_koszul_by_hand():
    # the fixed line contributes (1, 2, 1); the other line is killed by gamma_1 - 1 = t
    g1 = diag(F.one, F.one + F.t)
    g2 = diag(F.one, F.one)
    assert koszul_cohomology(2, [g1, g2], 3, 8) == [1, 2, 1]
    assert koszul_cohomology(1, [diag(F.one)] * 3, 3, 8) == [1, 3, 3, 1]


def test_koszul_d1_is_procyclic():
    g = [[F.one, F.t], [F.zero, F.one + F.t ** 2]]
    assert koszul_cohomology(2, [g], 3, 8) == list(procyclic_cohomology(2, g, 3, 8).dims)


def test_koszul_rejects_noncommuting():
    a = [[F.one, F.t], [F.zero, F.one]]
    b = [[F.one, F.zero], [F.t, F.one]]
    with pytest.raises(ValueError):
        check_commuting([a, b], 3, 8)
    with pytest.raises(ValueError):
        koszul_cohomology(2, [a, b], 3, 8)


def test_main_theorem_spec():
    g1 = [[F.one + F.t, F.t], [F.zero, F.one + F.t]]
    g2 = [[F.one, F.t], [F.zero, F.one]]
    rep = main_theorem_experiment({"p": 3, "N": 8, "module": {"rank": 2},
                                   "action": {"generators": [g1, g2], "abelian": True}})
    assert rep.hypothesis and rep.conclusion and rep.implication_holds
    assert rep.gamma_dims == [0, 0, 0]
    assert rep.to_json()["h_dims"] == [0, 0]


def test_main_theorem_rejects_nonabelian():
    with pytest.raises(ValueError):
        main_theorem_experiment({"p": 3, "N": 8, "action": {"generators": [diag(F.one)],
                                                            "abelian": False}})


def test_main_theorem_vacuous_case():
    rep = main_theorem_experiment({"p": 3, "N": 8,
                                   "action": {"generators": [diag(F.one), diag(F.one + F.t)]}})
    assert not rep.hypothesis and rep.implication_holds

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ultracoh.lie import (LieAlgebra, LieModule, abelian, adjoint_module, catalog_algebra,
                          catalog_instance, ce_complex, cohomology_dims,
                          conjecture_lie_experiment, heisenberg, highest_weight_module,
                          hs_e2_page, is_nilpotent, kostant_check, sl2, sl3, sub_basis,
                          trivial_module, validate_structures, weyl_dimension,
                          weyl_length_counts)
from ultracoh.lie import linalg as la


def dims(g, M):
    return cohomology_dims(ce_complex(g, M))


def test_betti_numbers():
    assert dims(sl2(), trivial_module(sl2())) == [1, 0, 0, 1]
    assert dims(heisenberg(), trivial_module(heisenberg())) == [1, 2, 2, 1]
    for n in range(1, 4):
        assert dims(abelian(n), trivial_module(abelian(n))) == [comb(n, k) for k in range(n + 1)]


def test_sl3_trivial_is_exterior_on_3_and_5():
    assert dims(sl3(), trivial_module(sl3())) == [1, 0, 0, 1, 0, 1, 0, 0, 1]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_whitehead_vanishing(n):
    M = highest_weight_module("sl2", n)
    assert not any(dims(sl2(), M))


def test_adjoint_sl2_vanishes():
    assert dims(sl2(), adjoint_module(sl2())) == [0, 0, 0, 0]


@pytest.mark.parametrize("lam,d", [((0, 0), 1), ((1, 0), 3), ((0, 1), 3), ((1, 1), 8),
                                   ((2, 0), 6), ((2, 1), 15)])
def test_weyl_dimension(lam, d):
    assert weyl_dimension("sl3", lam) == d
    M = highest_weight_module("sl3", lam)
    assert M.dim == d
    assert validate_structures(sl3(), M).valid


def test_weyl_length_counts():
    assert weyl_length_counts("sl2") == [1, 1]
    assert weyl_length_counts("sl3") == [1, 2, 2, 1]


@pytest.mark.parametrize("alg,lam", [("sl2", (0,)), ("sl2", (3,)), ("sl3", (0, 0)),
                                     ("sl3", (1, 1)), ("sl3", (2, 0))])
def test_kostant(alg, lam):
    rep = kostant_check(alg, lam)
    assert rep.passed
    assert rep.dims == weyl_length_counts(alg)


def test_bad_weight():
    with pytest.raises(ValueError):
        kostant_check("sl3", (1,))
    with pytest.raises(ValueError):
        kostant_check("sl2", (-1,))


def test_validation_catches_broken_structures():
    c = [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]      # [x0, x1] = x0 = [x1, x0]
    g = LieAlgebra(2, c)
    assert validate_structures(g).antisymmetry
    h = sl2()
    M2 = LieModule(h, [[[0]], [[1]], [[0]]])       # rho(h) = 1 but [rho e, rho f] = 0
    assert not validate_structures(h, M2).valid
    with pytest.raises(ValueError):
        ce_complex(h, M2)


def test_nilpotency():
    assert is_nilpotent(heisenberg())
    assert not is_nilpotent(sl2())
    assert is_nilpotent(catalog_algebra("sl3-nilradical"))
    assert not is_nilpotent(catalog_algebra("sl2-borel"))


@pytest.mark.parametrize("base,sub,rep", [("heisenberg", "center", "trivial"),
                                          ("heisenberg", "center", "adjoint"),
                                          ("heisenberg", "all", "adjoint")])
def test_hs_euler_and_inequality(base, sub, rep):
    g, hb, M = catalog_instance(base, sub, rep)
    e2 = hs_e2_page(g, hb, M)
    assert e2.euler_equal and e2.inequality_holds and e2.well_defined


def test_hs_borel_by_hand():
    b = catalog_algebra("sl2-borel")                 # basis e, h with [h, e] = 2e
    e2 = hs_e2_page(b, [b.basis_vector(0)], trivial_module(b))
    # H(n) = (Q, Q e*) and h acts on e* by -2, so only E2^{0,0} and E2^{1,0} survive
    assert e2.table == [[1, 0], [1, 0]]
    assert e2.abutment == [1, 1, 0]


def test_hs_rejects_non_ideal():
    g = sl2()
    with pytest.raises(ValueError):
        hs_e2_page(g, [g.basis_vector(0)], trivial_module(g))


def test_conjecture_nonvacuous_instance():
    g, hb, M = catalog_instance("sl2", "cartan", (1,))
    rep = conjecture_lie_experiment(g, hb, M)
    assert rep.hypothesis_a and rep.conclusion_a and rep.implication_a == "holds"


def test_conjecture_requires_nilpotent():
    g = sl2()
    with pytest.raises(ValueError):
        conjecture_lie_experiment(g, sub_basis(g, [0, 1]), trivial_module(g))


small = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4)


@settings(max_examples=60)
@given(small)
def test_rank_and_nullspace(a):
    a = [[Fraction(x) for x in row] for row in a]
    r = la.rank(a)
    assert r == la.rank(la.transpose(a))
    ns = la.nullspace(a, 3)
    assert len(ns) == 3 - r
    assert all(not any(la.matvec(a, v)) for v in ns)


@settings(max_examples=60)
@given(small, st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_solve_in_span(rows, coeffs):
    basis = [[Fraction(x) for x in row] for row in rows]
    v = [sum(Fraction(c) * b[i] for c, b in zip(coeffs, basis)) for i in range(3)]
    sol = la.solve(basis, v)
    assert sol is not None
    assert [sum(s * b[i] for s, b in zip(sol, basis)) for i in range(3)] == v

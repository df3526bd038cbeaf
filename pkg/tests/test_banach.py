import itertools
import random

import pytest

from ultracoh import banach
from ultracoh.scalars import INF, LaurentField, PrecisionError, TruncSeries


def brute_kernel_size(a, p):
    """#{x in F_p^n : a x = 0} by enumeration."""
    n = len(a[0])
    count = 0
    for x in itertools.product(range(p), repeat=n):
        if all(sum(r[j] * x[j] for j in range(n)) % p == 0 for r in a):
            count += 1
    return count


def embed(a, p, N):
    return banach.BoundedMap([[TruncSeries.from_int(p, x, N) for x in row] for row in a], p, N)


@pytest.mark.parametrize("p", [2, 3])
def test_rank_matches_brute_force_over_fp(p):
    rng = random.Random(p)
    for _ in range(40):
        m, n = rng.randint(1, 3), rng.randint(1, 4)
        a = [[rng.randrange(p) for _ in range(n)] for _ in range(m)]
        dec = banach.decompose(embed(a, p, 4))
        assert p ** dec.dim_kernel == brute_kernel_size(a, p)
        assert dec.rank + dec.dim_kernel == n
        assert dec.rank + dec.dim_cokernel == m


def test_known_rank_construction(rng):
    F = LaurentField(3, 8)
    for r in range(4):
        D = [[F.zero] * 4 for _ in range(4)]
        for i in range(r):
            D[i][i] = F.monomial(i - 1)
        X = [[F.one if i == j else (F.t if j > i else F.zero) for j in range(4)] for i in range(4)]
        a = banach.mat_mul(X, D, 3, 8)
        dec = banach.decompose(banach.BoundedMap(a, 3, 8))
        assert dec.rank == r
        for v in dec.kernel_basis:
            assert banach.vector_valuation(banach.mat_vec(a, v, 3, 8)) == INF


def test_section_contract_and_valuation():
    F = LaurentField(2, 8)
    a = [[F.t, F.t ** 2], [F.zero, F.monomial(-1)]]
    f = banach.BoundedMap(a, 2, 8)
    dec = banach.decompose(f)
    assert dec.rank == 2
    fsf = f @ dec.section @ f
    assert banach.is_zero_matrix((fsf - f).entries)
    assert dec.section_valuation == -1        # inverse has entries t^-1 ...


def test_quasi_inverse_bounds():
    F = LaurentField(3, 6)
    a = [[F.one, F.zero, F.zero], [F.zero, F.zero, F.zero]]
    qi = banach.quasi_inverse(banach.BoundedMap(a, 3, 6))
    assert (qi.dim_kernel, qi.dim_cokernel) == (2, 1)
    assert qi.fg_defect_rank == 1 and qi.gf_defect_rank == 2
    assert qi.within_bounds


def test_precision_error_when_pivot_uncertified():
    a = [[TruncSeries(3, 3, [1], 8), TruncSeries.zero(3, 1)]]
    with pytest.raises(PrecisionError):
        banach.decompose(banach.BoundedMap(a, 3, 8))


def test_irreducible_poly_has_no_roots():
    for p in (2, 3, 5):
        for e in (2, 3):
            f = banach.irreducible_poly(p, e)
            assert len(f) == e + 1 and f[-1] == 1
            assert all(sum(c * x**k for k, c in enumerate(f)) % p for x in range(p))


def test_base_change_invariance_with_complex():
    F = LaurentField(2, 8)
    f = banach.BoundedMap([[F.t, F.zero], [F.zero, F.zero]], 2, 8)
    g = banach.BoundedMap([[F.zero, F.one]], 2, 8)
    rep = banach.base_change_check(f, 2, seed=1, complex_maps=[f, g])
    assert rep["invariant"]
    assert rep["cohomology_dims"] == [1, 0, 0]


def test_complex_rejects_non_complex():
    F = LaurentField(2, 4)
    f = banach.BoundedMap([[F.one]], 2, 4)
    with pytest.raises(ValueError):
        banach.complex_cohomology([f, f])


def test_inverse_round_trip(rng):
    F = LaurentField(5, 6)
    a = [[F.one, F.t], [F.t, F.one + F.t]]
    inv = banach.inverse(a)
    prod = banach.mat_mul(a, inv, 5, 6)
    assert banach.is_zero_matrix(banach.mat_sub(prod, banach.identity(2, 5, 6)))

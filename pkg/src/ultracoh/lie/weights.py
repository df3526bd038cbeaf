"""Highest-weight modules of sl2 and sl3, Weyl-group oracles, and Kostant checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .algebra import (LieModule, SUBALGEBRAS, catalog_algebra, is_nilpotent, restrict,
                      sl2, sl3, sl3_matrices, sub_basis, subalgebra)
from .ce import ce_complex, cohomology_dims


def _parse_weight(algebra, lam):
    if isinstance(lam, str):
        lam = tuple(int(x) for x in lam.split(","))
    if isinstance(lam, int):
        lam = (lam,)
    lam = tuple(lam)
    rank = {"sl2": 1, "sl3": 2}[algebra]
    if len(lam) != rank:
        raise ValueError(f"{algebra} weights have {rank} component(s)")
    if any(x < 0 for x in lam):
        raise ValueError(f"weight {lam} is not dominant")
    return lam


def weyl_dimension(algebra, lam):
    """Weyl dimension formula, written out for A1 and A2."""
    lam = _parse_weight(algebra, lam)
    if algebra == "sl2":
        return lam[0] + 1
    a, b = lam
    return (a + 1) * (b + 1) * (a + b + 2) // 2


def _sl2_module(n):
    # basis v_0..v_n: h v_k = (n-2k) v_k, f v_k = (k+1) v_{k+1}, e v_k = (n-k+1) v_{k-1}
    d = n + 1
    e, h, f = la.zeros(d, d), la.zeros(d, d), la.zeros(d, d)
    for k in range(d):
        h[k][k] = Fraction(n - 2 * k)
        if k + 1 < d:
            f[k + 1][k] = Fraction(k + 1)
        if k >= 1:
            e[k - 1][k] = Fraction(n - k + 1)
    return LieModule(sl2(), [e, h, f], f"V({n})")


def _kron_action(mats_list):
    """x acting on a tensor product: sum over factors of 1 x .. x rho_i(x) x .. x 1."""
    dims = [len(m) for m in mats_list]
    total = 1
    for d in dims:
        total *= d
    out = la.zeros(total, total)
    idx = list(itertools.product(*[range(d) for d in dims]))
    pos = {t: k for k, t in enumerate(idx)}
    for col, t in enumerate(idx):
        for f, m in enumerate(mats_list):
            for r in range(dims[f]):
                x = m[r][t[f]]
                if x:
                    u = t[:f] + (r,) + t[f + 1:]
                    out[pos[u]][col] += x
    return out


def _sl3_module(a, b):
    g = sl3()
    mats, _ = sl3_matrices()
    std = [[[Fraction(x) for x in row] for row in m] for m in mats]
    dual = [la.scale(la.transpose(m), -1) for m in std]
    factors = a + b
    if factors == 0:
        return LieModule(g, [[[Fraction(0)]] for _ in range(g.dim)], "V(0,0)")
    big = [_kron_action([std[i]] * a + [dual[i]] * b) for i in range(g.dim)]
    # highest weight vector e_1^{(x) a} (x) (e_3^*)^{(x) b}
    dims = [3] * factors
    idx = list(itertools.product(*[range(d) for d in dims]))
    hw = tuple([0] * a + [2] * b)
    v0 = [Fraction(int(t == hw)) for t in idx]
    lowering = [big[5], big[6], big[7]]          # E21, E31, E32
    basis = [v0]
    frontier = [v0]
    while frontier:
        nxt = []
        for v in frontier:
            for L in lowering:
                w = la.matvec(L, v)
                if any(w) and la.rank(basis + [w]) > len(basis):
                    basis.append(w)
                    nxt.append(w)
        frontier = nxt
    # restrict every basis element's action to the generated subspace
    restricted = []
    for X in big:
        cols = []
        for v in basis:
            coords = la.solve(basis, la.matvec(X, v))
            if coords is None:
                raise ValueError("generated subspace is not a submodule")
            cols.append(coords)
        restricted.append(la.transpose(cols, len(basis)))
    return LieModule(g, restricted, f"V({a},{b})")


def highest_weight_module(algebra, lam):
    lam = _parse_weight(algebra, lam)
    if algebra == "sl2":
        M = _sl2_module(lam[0])
    else:
        M = _sl3_module(*lam)
    expect = weyl_dimension(algebra, lam)
    if M.dim != expect:
        raise AssertionError(f"built dimension {M.dim} != Weyl dimension {expect}")
    return M


def weyl_length_counts(algebra):
    """#{w : l(w) = i} with W = S_n and length = inversions."""
    n = {"sl2": 2, "sl3": 3}[algebra]
    counts = [0] * (n * (n - 1) // 2 + 1)
    for w in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
        counts[inv] += 1
    return counts


@dataclass
class KostantReport:
    algebra: str
    weight: tuple
    module_dim: int
    weyl_dimension: int
    dims: list
    weyl_counts: list
    nonzero: bool
    matches: bool

    @property
    def passed(self):
        return self.nonzero and self.matches and self.module_dim == self.weyl_dimension

    def to_json(self):
        return {"algebra": self.algebra, "weight": list(self.weight),
                "module_dim": self.module_dim, "weyl_dimension": self.weyl_dimension,
                "dims": self.dims, "weyl_counts": self.weyl_counts,
                "nonzero": self.nonzero, "matches": self.matches, "passed": self.passed}


def kostant_check(algebra, lam):
    lam = _parse_weight(algebra, lam)
    M = highest_weight_module(algebra, lam)
    g = M.algebra
    basis = sub_basis(g, SUBALGEBRAS[(algebra, "nilradical")])
    n = subalgebra(g, basis, f"{algebra}-nilradical")
    Mn = restrict(M, g, basis, n)
    dims = cohomology_dims(ce_complex(n, Mn))
    counts = weyl_length_counts(algebra)
    return KostantReport(algebra, lam, M.dim, weyl_dimension(algebra, lam), dims, counts,
                         any(dims), dims == counts)


@dataclass
class ConjectureReport:
    h_dims: list
    g_dims: list
    hypothesis_a: bool           # H^*(h, M) = 0
    conclusion_a: bool
    implication_a: str           # "vacuous", "holds" or "fails"
    hypothesis_b: bool
    conclusion_b: bool
    implication_b: str

    def to_json(self):
        return dict(self.__dict__)


def conjecture_lie_experiment(g, h_basis, M):
    """Record both implications of the nilpotent-subalgebra conjecture on one instance."""
    h = subalgebra(g, h_basis) if h_basis else None
    if h is not None and not is_nilpotent(h):
        raise ValueError("h is not nilpotent")
    if h is None:
        h_dims = [M.dim]
    else:
        h_dims = cohomology_dims(ce_complex(h, restrict(M, g, h_basis, h)))
    g_dims = cohomology_dims(ce_complex(g, M))
    hyp_a = not any(h_dims)
    concl_a = not any(g_dims)
    # at finite dimension every dim is finite, so (b) holds on every instance
    hyp_b = concl_b = True
    return ConjectureReport(
        h_dims, g_dims, hyp_a, concl_a,
        "vacuous" if not hyp_a else ("holds" if concl_a else "fails"),
        hyp_b, concl_b, "holds")


def catalog_instance(algebra_name, sub_name, module):
    """(g, h basis, M) from catalog names; module is 'trivial', 'adjoint' or a weight."""
    from .algebra import adjoint_module, trivial_module
    g = catalog_algebra(algebra_name)
    idx = SUBALGEBRAS.get((algebra_name, sub_name)) if sub_name else []
    if sub_name and idx is None:
        raise ValueError(f"unknown subalgebra {sub_name!r} of {algebra_name}")
    basis = sub_basis(g, idx or [])
    if module == "trivial":
        M = trivial_module(g)
    elif module == "adjoint":
        M = adjoint_module(g)
    else:
        M = highest_weight_module(algebra_name, module)
    return g, basis, M

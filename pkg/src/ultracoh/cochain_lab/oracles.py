"""Cohomology oracles for procyclic and abelian groups acting on K^r.

For Gamma = Z_p with generator gamma the continuous cohomology of an analytic
module is that of ``0 -> M --(gamma - 1)--> M -> 0``; for Z_p^d it is the
Koszul complex of the commuting operators gamma_k - 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .. import banach
from ..scalars import TruncSeries
from .analytic import check_commuting
from .windows import _as_entries


def _minus_one(mat, p, prec):
    return banach.mat_sub(mat, banach.identity(len(mat), p, prec))


@dataclass
class Procyclic:
    dims: tuple
    h0_basis: list
    h1_basis: list
    section_valuation: float


def procyclic_cohomology(M, gamma, p=None, prec=None):
    """(dim H^0, dim H^1) = (dim ker, dim coker) of gamma - 1, with bases."""
    if isinstance(gamma, banach.BoundedMap):
        p, prec = gamma.p, gamma.prec
    g = _as_entries(gamma, p, prec)
    r = M.rank if isinstance(M, banach.NormedModule) else int(M)
    if len(g) != r:
        raise ValueError("gamma does not act on a module of this rank")
    if r == 0:
        return Procyclic((0, 0), [], [], float("inf"))
    if banach.rank(banach.BoundedMap(g, p, prec)) < r:
        raise ValueError("gamma is not invertible")
    dec = banach.decompose(banach.BoundedMap(_minus_one(g, p, prec), p, prec))
    return Procyclic((dec.dim_kernel, dec.dim_cokernel), dec.kernel_basis,
                     dec.cokernel_basis, dec.section_valuation)


def _sign(k, S):
    return -1 if sum(1 for s in S if s < k) % 2 else 1


def koszul_complex(gammas, p, prec):
    """Differentials of the Koszul complex on (gamma_1 - 1, ..., gamma_d - 1).

    C^q has basis e_S (x) m_a, S a q-subset of {0..d-1};
    d(e_S (x) v) = sum_{k not in S} sign(k, S) e_{S + k} (x) (gamma_k - 1) v.
    """
    gens = [_as_entries(g, p, prec) for g in gammas]
    d = len(gens)
    r = len(gens[0])
    ops = [_minus_one(g, p, prec) for g in gens]
    subsets = [list(itertools.combinations(range(d), q)) for q in range(d + 1)]
    zero = TruncSeries.zero(p, prec)
    maps = []
    for q in range(d):
        src, tgt = subsets[q], subsets[q + 1]
        where = {S: k for k, S in enumerate(tgt)}
        mat = [[zero] * (len(src) * r) for _ in range(len(tgt) * r)]
        for a, S in enumerate(src):
            for k in range(d):
                if k in S:
                    continue
                T = tuple(sorted(S + (k,)))
                b = where[T]
                s = _sign(k, S)
                for i in range(r):
                    for j in range(r):
                        x = ops[k][i][j]
                        if not x.is_zero():
                            mat[b * r + i][a * r + j] = x if s > 0 else -x
        maps.append(banach.BoundedMap(mat, p, prec))
    ranks = [len(s) * r for s in subsets]
    return maps, ranks


def koszul_cohomology(M, gammas, p=None, prec=None):
    """Dims of Koszul cohomology of commuting invertible gammas on M."""
    if gammas and isinstance(gammas[0], banach.BoundedMap):
        p, prec = gammas[0].p, gammas[0].prec
    gens = [_as_entries(g, p, prec) for g in gammas]
    if not gens:
        raise ValueError("need at least one generator")
    r = M.rank if isinstance(M, banach.NormedModule) else int(M)
    if any(len(g) != r for g in gens):
        raise ValueError("generators do not act on a module of this rank")
    check_commuting(gens, p, prec)
    for g in gens:
        if r and banach.rank(banach.BoundedMap(g, p, prec)) < r:
            raise ValueError("generators must be invertible")
    if r == 0:
        return [0] * (len(gens) + 1)
    maps, ranks = koszul_complex(gens, p, prec)
    return banach.complex_cohomology(maps, ranks).dims


@dataclass
class MainTheoremReport:
    p: int
    prec: int
    rank: int
    d: int
    h_dims: tuple                # H^*(H, M), H generated by the first generator
    gamma_dims: list             # H^*(Gamma, M) via Koszul
    hypothesis: bool             # H^*(H, M) = 0
    conclusion: bool             # H^*(Gamma, M) = 0
    implication_holds: bool
    finite: bool
    eta_minus_one_valuation: float
    quasi_inverse_defects: tuple  # ranks of (eta-1)g - 1 and g(eta-1) - 1
    g_valuation: float
    extras: dict = field(default_factory=dict)

    def to_json(self):
        from .analytic import _jsonval
        return {"p": self.p, "N": self.prec, "rank": self.rank, "d": self.d,
                "h_dims": list(self.h_dims), "gamma_dims": list(self.gamma_dims),
                "hypothesis": self.hypothesis, "conclusion": self.conclusion,
                "implication_holds": self.implication_holds, "finite": self.finite,
                "eta_minus_one_valuation": _jsonval(self.eta_minus_one_valuation),
                "quasi_inverse_defects": list(self.quasi_inverse_defects),
                "g_valuation": _jsonval(self.g_valuation)}


def main_theorem_experiment(spec):
    """Vanishing for H = <gamma_1> propagates to Gamma = Z_p^d (abelian specs only).

    ``spec`` has keys p, N, module.rank and action.generators (matrices of
    integers or serialized series) with action.abelian true.
    """
    action = spec["action"]
    if not action.get("abelian", True):
        raise ValueError("the Koszul oracle only handles abelian actions")
    p, prec = spec["p"], spec["N"]
    gens = [_as_entries(g, p, prec) for g in action["generators"]]
    r = spec.get("module", {}).get("rank", len(gens[0]))
    eta = gens[0]
    h = procyclic_cohomology(r, eta, p, prec)
    dims = koszul_cohomology(r, gens, p, prec)
    hyp = all(x == 0 for x in h.dims)
    concl = all(x == 0 for x in dims)
    em1 = banach.BoundedMap(_minus_one(eta, p, prec), p, prec)
    qi = banach.quasi_inverse(em1)
    return MainTheoremReport(
        p=p, prec=prec, rank=r, d=len(gens), h_dims=h.dims, gamma_dims=dims,
        hypothesis=hyp, conclusion=concl, implication_holds=(not hyp) or concl,
        finite=True, eta_minus_one_valuation=em1.valuation(),
        quasi_inverse_defects=(qi.fg_defect_rank, qi.gf_defect_rank),
        g_valuation=qi.g.valuation())

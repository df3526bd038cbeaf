"""Chevalley-Eilenberg complexes Hom(Lambda^k g, M) over Q.

Convention, fixed throughout the package:

    (df)(x_0..x_k) = sum_s (-1)^s x_s f(..^x_s..)
                     + sum_{s<t} (-1)^(s+t) f([x_s, x_t], ..^x_s..^x_t..)

C^k has basis e_S (x) m_a for k-subsets S of the basis of g, ordered
lexicographically, with index ``position(S) * dim M + a``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la


@dataclass
class CEComplex:
    algebra: object
    module: object
    subsets: list        # subsets[k] = list of sorted k-tuples
    diffs: list          # diffs[k]: C^k -> C^(k+1), rows x cols

    @property
    def dims(self):
        m = self.module.dim
        return [len(s) * m for s in self.subsets]

    def check_dd(self):
        for k in range(len(self.diffs) - 1):
            if self.dims[k] and self.dims[k + 2] and \
                    not la.is_zero(la.matmul(self.diffs[k + 1], self.diffs[k])):
                return False
        return True


def _sort_sign(k, rest):
    """Sign of sorting (k, *rest) and the sorted tuple; None if k repeats."""
    if k in rest:
        return 0, None
    before = sum(1 for r in rest if r < k)
    return (-1) ** before, tuple(sorted(rest + (k,)))


def ce_complex(g, M, check=True):
    n, m = g.dim, M.dim
    subsets = [list(itertools.combinations(range(n), k)) for k in range(n + 1)]
    where = [{S: i for i, S in enumerate(sub)} for sub in subsets]
    diffs = []
    for k in range(n):
        src, tgt = subsets[k], subsets[k + 1]
        D = la.zeros(len(tgt) * m, len(src) * m)
        for ti, T in enumerate(tgt):
            # action terms
            for s, xs in enumerate(T):
                S = T[:s] + T[s + 1:]
                si = where[k][S]
                sign = -1 if s % 2 else 1
                rho = M.mats[xs]
                for b in range(m):
                    row = D[ti * m + b]
                    for a in range(m):
                        x = rho[b][a]
                        if x:
                            row[si * m + a] += sign * x
            # bracket terms
            for s in range(len(T)):
                for t in range(s + 1, len(T)):
                    rest = T[:s] + T[s + 1:t] + T[t + 1:]
                    base = -1 if (s + t) % 2 else 1
                    for kk, coef in enumerate(g.c[T[s]][T[t]]):
                        if not coef:
                            continue
                        sgn, S = _sort_sign(kk, rest)
                        if not sgn:
                            continue
                        si = where[k][S]
                        for a in range(m):
                            D[ti * m + a][si * m + a] += base * sgn * coef
        diffs.append(D)
    cx = CEComplex(g, M, subsets, diffs)
    if check and not cx.check_dd():
        raise ValueError("d o d != 0: structures are not a Lie algebra and module")
    return cx


def _rank(D, rows, cols):
    return la.rank(D) if rows and cols else 0


def cohomology_dims(cx):
    dims = cx.dims
    ranks = [_rank(D, dims[k + 1], dims[k]) for k, D in enumerate(cx.diffs)]
    out = []
    for k, c in enumerate(dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k >= 1 else 0
        out.append(c - r_out - r_in)
    return out


def euler_characteristic(dims):
    return sum((-1) ** k * d for k, d in enumerate(dims))


@dataclass
class CohomologyBasis:
    """Cocycle representatives of H^k together with a basis of B^k."""

    reps: list
    coboundaries: list

    def coordinates(self, z):
        """Coordinates of the class of cocycle z in the ``reps`` basis."""
        sol = la.solve(self.reps + self.coboundaries, z)
        if sol is None:
            raise ValueError("vector is not a cocycle")
        return sol[: len(self.reps)]


def cohomology_basis(cx, k):
    dims = cx.dims
    if k < len(cx.diffs) and dims[k + 1]:
        Z = la.nullspace(cx.diffs[k], dims[k])
    else:
        Z = [[Fraction(int(i == j)) for i in range(dims[k])] for j in range(dims[k])]
    if k >= 1 and dims[k - 1]:
        B = la.column_space(cx.diffs[k - 1])
    else:
        B = []
    reps = la.complement_in(B, Z)
    return CohomologyBasis(reps, B)

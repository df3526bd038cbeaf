"""Analyticity data: the (v_e, v_c) action certificate and the c-analytic seminorm.

Everything is in valuation form.  With e = p^v_e and c_0 = p^v_c the uniform
analytic action bound ``|gamma - 1| <= e c_0^(-p^i)`` on Gamma_i becomes

    val(gamma - 1) >= -v_e + v_c p^i.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .. import banach
from ..scalars import INF
from .cochains import vec_sub, vec_valuation
from .windows import AbelianWindow, _as_entries, _mat_power


@dataclass(frozen=True)
class Certificate:
    v_e: int
    v_c: int
    profile: tuple = ()          # (i, min val(gamma - 1) over sampled gamma in Gamma_i)

    def bound(self, i, p):
        """Certified lower bound for val(gamma - 1), gamma in Gamma_i."""
        return -self.v_e + self.v_c * p**i

    def to_json(self):
        return {"v_e": self.v_e, "v_c": self.v_c,
                "profile": [[i, _jsonval(w)] for i, w in self.profile]}


@dataclass(frozen=True)
class Rejection:
    reason: str
    profile: tuple = ()

    def to_json(self):
        return {"rejected": self.reason, "profile": [[i, _jsonval(w)] for i, w in self.profile]}


def _jsonval(v):
    if v == INF:
        return "inf"
    if v == -INF:
        return "-inf"
    return v


def certificate_from_profile(profile, p):
    """Best integer (v_e, v_c >= 1) below a decay profile ``[(i, w_i)]``.

    v_e is capped at ``max(0, v_e(1))`` where v_e(1) is the excess needed
    with v_c = 1; within that cap v_c is maximized.  A profile that does not
    grow by at least p^i - 1 from level 0 is rejected.
    """
    finite = [(i, w) for i, w in profile if w != INF]
    if not finite:
        return Certificate(0, 1, tuple(profile))
    i0, w0 = min(finite)
    for i, w in finite:
        if i > i0 and w - w0 < p**i - p**i0:
            return Rejection(f"val(gamma - 1) on Gamma_{i} is {w}, no linear growth in p^i "
                             f"from {w0} on Gamma_{i0}", tuple(profile))

    def need(vc):
        return max(vc * p**i - w for i, w in finite)

    cap = max(0, need(1))
    vc = 1
    while need(vc + 1) <= cap:
        vc += 1
        if vc > 1 << 20:      # only reachable when all finite levels are huge
            break
    return Certificate(need(vc), vc, tuple(profile))


def _gamma_minus_one_val(mat):
    r = len(mat)
    return min((((mat[i][j] - 1) if i == j else mat[i][j]).valuation()
                for i in range(r) for j in range(r)), default=INF)


def action_certificate(generators, p, prec, l_max=3, samples=8, seed=0):
    """Certificate for Z_p^d acting through commuting ``generators``.

    Gamma_i is sampled by gamma^(p^i a) for the unit vectors a and ``samples``
    random a in Z_p^d (drawn mod p^2); the profile is the min of
    val(gamma - 1) at each level.
    """
    gens = [_as_entries(g, p, prec) for g in generators]
    for g in gens:
        if banach.decompose(banach.BoundedMap(g, p, prec)).rank < len(g):
            raise ValueError("generator maps must be invertible")
    rng = random.Random(seed)
    d = len(gens)
    exps = [tuple(int(k == a) for k in range(d)) for a in range(d)]
    exps += [tuple(rng.randrange(p * p) for _ in range(d)) for _ in range(samples)]
    profile = []
    for i in range(l_max + 1):
        w = INF
        for a in exps:
            mat = banach.identity(len(gens[0]), p, prec)
            for k, e in enumerate(a):
                if e:
                    mat = banach.mat_mul(mat, _mat_power(gens[k], e * p**i, p, prec), p, prec)
            w = min(w, _gamma_minus_one_val(mat))
        profile.append((i, w))
    return certificate_from_profile(profile, p)


def window_certificate(window):
    """Certificate from all elements of a window, grouped by exact level."""
    best = {}
    for a in window.elements:
        lev = window.level_of(a)
        if lev >= window.l + window.m:
            continue
        w = _gamma_minus_one_val(window.action(a))
        for i in range(window.l, lev + 1):
            best[i] = min(best.get(i, INF), w)
    profile = sorted(best.items())
    return certificate_from_profile(profile, window.p)


def certificate_holds(cert, profile, p):
    return all(w >= -cert.v_e + cert.v_c * p**i for i, w in profile)


def faithful_level(cert, p, N):
    """Least l + m with Gamma_(l+m) acting trivially mod t^N per the certificate."""
    k = 0
    while -cert.v_e + cert.v_c * p**k < N:
        k += 1
    return k


@dataclass
class AnalyticAction:
    """Z_p^d (or a window of a congruence group) acting on K^r with a certificate."""

    module: banach.NormedModule
    generator_maps: list
    certificate: object
    p: int
    prec: int
    abelian: bool = True
    notes: dict = field(default_factory=dict)

    @classmethod
    def from_generators(cls, generators, p, prec, l_max=3, seed=0, abelian=True):
        gens = [_as_entries(g, p, prec) for g in generators]
        if abelian:
            check_commuting(gens, p, prec)
        cert = action_certificate(gens, p, prec, l_max=l_max, seed=seed)
        maps = [banach.BoundedMap(g, p, prec) for g in gens]
        return cls(banach.NormedModule(len(gens[0])), maps, cert, p, prec, abelian)

    @property
    def rank(self):
        return self.module.rank

    def window(self, l, m, prec=None):
        if not self.abelian:
            raise ValueError("abelian windows need commuting generators")
        return AbelianWindow(self.p, [g.entries for g in self.generator_maps], l, m,
                             self.prec if prec is None else prec)


def check_commuting(gens, p, prec):
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            ab = banach.mat_mul(gens[a], gens[b], p, prec)
            ba = banach.mat_mul(gens[b], gens[a], p, prec)
            if not banach.is_zero_matrix(banach.mat_sub(ab, ba)):
                raise ValueError(f"generators {a} and {b} do not commute")


# -- the c-analytic seminorm --------------------------------------------------

@dataclass
class Seminorm:
    d_val: float
    profile: list      # (i, worst difference valuation at scale i)

    def to_json(self):
        return {"d_val": _jsonval(self.d_val),
                "profile": [[i, _jsonval(w)] for i, w in self.profile]}


def c_analytic_seminorm(f, v_c, points=None):
    """Least d_val with val(f(x) - f(x sigma)) >= v_c p^i - d_val for sigma in Gamma_i^n.

    Scales run over i in [l, l+m); at each scale the table is grouped by the
    cosets of Gamma_i in every argument.
    """
    Q = f.window
    p = Q.p
    pts = list(f.points()) if points is None else list(points)
    profile = []
    d_val = -INF
    for i in range(Q.l, Q.l + Q.m):
        anchors = {}
        worst = INF
        for args in pts:
            key = tuple(Q.coset_key(a, i) for a in args)
            v = f(*args)
            a0 = anchors.get(key)
            if a0 is None:
                anchors[key] = v
                continue
            worst = min(worst, vec_valuation(vec_sub(v, a0)))
        profile.append((i, worst))
        if worst != INF:
            d_val = max(d_val, v_c * p**i - worst)
    return Seminorm(d_val, profile)

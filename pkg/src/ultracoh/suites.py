"""Verification suites behind ``ultracoh run``.

A suite takes resolved parameters and fills a :class:`SuiteResult`:
named assertions (each with a count and the first few reproducing data),
numeric payloads, tables for CSV output and plot descriptions.  Nothing in
a result depends on the clock; timings live with the caller.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field

import numpy as np

from . import banach
from .cochain_lab import (AbelianWindow, CongruenceWindow, HomotopyParams, LatticeWindow, READINGS,
                          action_certificate, differential, homotopy_residual_decomposition,
                          koszul_cohomology, main_theorem_experiment, orbit_representation,
                          procyclic_cohomology, random_cochain, reading_name)
from .cochain_lab.analytic import _jsonval
from .lie import (LieAlgebra, LieModule, adjoint_module, catalog_algebra, catalog_instance,
                  conjecture_lie_experiment, hs_e2_page, kostant_check, sub_basis,
                  trivial_module, SUBALGEBRAS)
from .padic_groups import verify_commutator_lemma
from .scalars import INF, LaurentField, TruncSeries

MAX_FAILURES = 5


class Checks:
    """Named assertions, counted; failures keep a reproducing datum."""

    def __init__(self):
        self._d = {}

    def check(self, name, ok, datum=None):
        e = self._d.setdefault(name, {"name": name, "checked": 0, "failed": 0, "failures": []})
        e["checked"] += 1
        if not ok:
            e["failed"] += 1
            if len(e["failures"]) < MAX_FAILURES:
                e["failures"].append(datum)
        return ok

    def to_list(self):
        return [dict(e, passed=e["failed"] == 0) for e in self._d.values()]

    @property
    def passed(self):
        return all(e["failed"] == 0 for e in self._d.values())


@dataclass
class SuiteResult:
    suite: str
    params: dict
    checks: Checks = field(default_factory=Checks)
    payload: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    plots: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.checks.passed

    def table(self, name, columns):
        t = self.tables.setdefault(name, {"columns": list(columns), "rows": []})
        return t["rows"]

    def stable(self):
        return {"suite": self.suite, "seed": self.params.get("seed", 0), "params": self.params,
                "passed": self.passed, "assertions": self.checks.to_list(),
                "payload": self.payload, "tables": self.tables}


SUITES = {}


def suite(name, **defaults):
    defaults.setdefault("seed", 0)

    def deco(fn):
        SUITES[name] = (fn, defaults)
        return fn
    return deco


def run_suite(name, params=None):
    """Run suite ``name`` with ``params`` layered over its defaults."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    fn, defaults = SUITES[name]
    prm = dict(defaults)
    prm.update({k: v for k, v in (params or {}).items() if v is not None})
    res = SuiteResult(name, prm)
    t0 = time.perf_counter()
    fn(prm, res)
    res.timing["total_s"] = round(time.perf_counter() - t0, 3)
    return res


# -- shared helpers ------------------------------------------------------------

def mat_json(a):
    return [[x.to_json() for x in row] for row in a]


def _unimodular(F, r, rng):
    """Random integral r x r matrix with unit determinant, as L U."""
    one, zero = F.one, F.zero
    L = [[F.random(rng, 0, 2, zero_prob=0.3) if j < i else (one if i == j else zero)
          for j in range(r)] for i in range(r)]
    U = [[F.random(rng, 0, 2, zero_prob=0.3) if j > i else
          (F(rng.randrange(1, F.p)) if i == j else zero) for j in range(r)] for i in range(r)]
    return banach.mat_mul(L, U, F.p, F.prec)


def _diag(F, entries):
    r = len(entries)
    return [[entries[i] if i == j else F.zero for j in range(r)] for i in range(r)]


def _conjugate(F, X, D):
    p, N = F.p, F.prec
    return banach.mat_mul(banach.mat_mul(X, D, p, N), banach.inverse(X), p, N)


def _one_plus(F, a):
    return banach.mat_add(banach.identity(len(a), F.p, F.prec), a)


def _scale_t(F, a, k=1):
    tk = F.monomial(k)
    return [[tk * x for x in row] for row in a]


def _fp_matrix(F, r, rng, kind="any"):
    """r x r over F_p: 'any', 'invertible', 'unipotent' or 'nilpotent' (upper triangular)."""
    p = F.p
    while True:
        if kind in ("unipotent", "nilpotent"):
            diag = 1 if kind == "unipotent" else 0
            a = [[(diag if i == j else (rng.randrange(p) if j > i else 0)) for j in range(r)]
                 for i in range(r)]
        else:
            a = [[rng.randrange(p) for _ in range(r)] for _ in range(r)]
        m = [[F(x) for x in row] for row in a]
        if kind != "invertible" or banach.rank(banach.BoundedMap(m, p, F.prec)) == r:
            return m


def _poly(F, A, coeffs):
    """sum_k coeffs[k] A^k."""
    p, N = F.p, F.prec
    r = len(A)
    out = [[F.zero] * r for _ in range(r)]
    P = banach.identity(r, p, N)
    for c in coeffs:
        if c % p:
            out = banach.mat_add(out, [[F(c) * x for x in row] for row in P])
        P = banach.mat_mul(P, A, p, N)
    return out


def _parse_int_list(v):
    if v is None:
        return None
    if isinstance(v, str):
        return [int(x) for x in v.split(",") if x.strip()]
    if isinstance(v, int):
        return [v]
    return list(v)


def _entries(mat, p, N):
    """Spec matrix entries: ints mod p or series objects {lead, coeffs[, p, prec]}."""
    def one(x):
        if isinstance(x, dict):
            return TruncSeries(x.get("p", p), x.get("lead", 0), x["coeffs"], x.get("prec", N))
        return TruncSeries.from_int(p, x, N)
    return [[one(x) for x in row] for row in mat]


# -- banach ------------------------------------------------------------------

def _random_map(F, m, n, r, rng, shifts):
    """X diag(t^k_1 .. t^k_r, 0 ..) Y with X, Y unimodular: rank exactly r."""
    p, N = F.p, F.prec
    D = [[F.zero] * n for _ in range(m)]
    for i in range(r):
        D[i][i] = F.monomial(rng.choice(shifts), rng.randrange(1, p))
    X, Y = _unimodular(F, m, rng), _unimodular(F, n, rng)
    return X, banach.mat_mul(banach.mat_mul(X, D, p, N), Y, p, N)


@suite("banach", p=2, N=8, maps=1000, max_rank=6, e=2, complex_every=10)
def banach_suite(prm, res):
    """Random maps of known rank: decomposition, section, quasi-inverse, base change."""
    p, N, e = prm["p"], prm["N"], prm["e"]
    F = LaurentField(p, N)
    rng = random.Random(prm["seed"])
    ck = res.checks
    secvals, ranks = {}, {}
    shifts = [-1, 0, 0, 1, 2]
    for k in range(prm["maps"]):
        m = rng.randint(1, prm["max_rank"])
        n = rng.randint(1, prm["max_rank"])
        r = rng.randint(0, min(m, n))
        X, a = _random_map(F, m, n, r, rng, shifts)
        f = banach.BoundedMap(a, p, N)
        datum = {"index": k, "expected_rank": r, "map": mat_json(a)}
        dec = banach.decompose(f)
        ck.check("rank_matches_construction", dec.rank == r, datum)
        ck.check("rank_nullity", dec.rank + dec.dim_kernel == n
                 and dec.rank + dec.dim_cokernel == m and len(dec.image_basis) == dec.rank, datum)
        ck.check("kernel_annihilated",
                 all(banach.vector_valuation(f.apply(x)) == INF for x in dec.kernel_basis), datum)
        fsf = banach.mat_mul(banach.mat_mul(a, dec.section.entries, p, N), a, p, N)
        ck.check("section_contract", banach.is_zero_matrix(banach.mat_sub(fsf, a)), datum)
        qi = banach.quasi_inverse(f)
        ck.check("quasi_inverse_defects_within_bounds", qi.within_bounds,
                 dict(datum, defects=[qi.fg_defect_rank, qi.gf_defect_rank]))
        cx = None
        expect_h = None
        if prm["complex_every"] and k % prm["complex_every"] == 0:
            # a second map killing image(f): Z D2 X^-1 with D2 supported off the first r rows
            q = rng.randint(1, prm["max_rank"])
            s = rng.randint(0, min(q, m - r))
            D2 = [[F.zero] * m for _ in range(q)]
            for i in range(s):
                D2[i][r + i] = F.monomial(rng.choice(shifts), rng.randrange(1, p))
            Z = _unimodular(F, q, rng)
            b = banach.mat_mul(banach.mat_mul(Z, D2, p, N), banach.inverse(X), p, N)
            cx = [f, banach.BoundedMap(b, p, N)]
            expect_h = [n - r, m - r - s, q - s]
        bc = banach.base_change_check(f, e, seed=k, complex_maps=cx)
        ck.check("base_change_invariance", bc["invariant"], dict(datum, report=bc))
        if cx is not None:
            ck.check("complex_cohomology_matches_construction",
                     bc["cohomology_dims"] == expect_h, dict(datum, expected=expect_h,
                                                             got=bc["cohomology_dims"]))
        sv = str(_jsonval(dec.section_valuation))
        secvals[sv] = secvals.get(sv, 0) + 1
        ranks[r] = ranks.get(r, 0) + 1
    keyed = sorted(secvals.items(), key=lambda kv: (kv[0] == "inf", float(kv[0]) if kv[0] != "inf"
                                                    else 0))
    rows = res.table("section_valuations", ["section_valuation", "maps"])
    rows.extend([k, v] for k, v in keyed)
    rows = res.table("ranks", ["rank", "maps"])
    rows.extend([k, ranks[k]] for k in sorted(ranks))
    res.payload["maps"] = prm["maps"]
    res.plots["section_valuations"] = {
        "kind": "bar", "title": "Section valuations of random maps",
        "xlabel": "val(s)", "ylabel": "maps",
        "x": [k for k, _ in keyed], "series": {"maps": [v for _, v in keyed]}}


# -- commutators --------------------------------------------------------------

@suite("commutators", n=2, p=3, N=6, j=1, samples=500)
def commutators_suite(prm, res):
    """Closure, quotient structure and commutator levels in congruence subgroups."""
    rep = verify_commutator_lemma(prm["n"], prm["p"], prm["N"], prm["j"], prm["samples"],
                                  seed=prm["seed"])
    ck = res.checks
    ck.check("closure_under_products_and_inverses", rep["a"]["passed"],
             {"failures": rep["a"]["failures"][:MAX_FAILURES]})
    b = rep["b"]
    ck.check("quotient_elementary_abelian_of_order", b["passed"] and b["order"] == b["expected_order"],
             {"order": b["order"], "expected_order": b["expected_order"],
              "failures": b["failures"][:MAX_FAILURES]})
    ck.check("commutator_level_bound", rep["c"]["passed"],
             {"failures": rep["c"]["failures"][:MAX_FAILURES]})
    ck.check("telescoping_identity", rep["telescoping"]["passed"],
             {"failures": rep["telescoping"]["failures"][:MAX_FAILURES]})
    hist = rep["c"]["level_histogram"]
    res.payload.update({"quotient_order": b["order"], "bound": rep["c"]["bound"],
                        "level_histogram": hist})
    rows = res.table("commutator_levels", ["level", "pairs"])
    rows.extend([int(k), v] for k, v in hist.items())
    res.plots["commutator_levels"] = {
        "kind": "bar", "title": f"Levels of commutators, p={prm['p']}, j={prm['j']}",
        "xlabel": "level", "ylabel": "pairs", "x": list(hist), "series": {"pairs": list(hist.values())}}


# -- cochains --------------------------------------------------------------

DEFAULT_WINDOWS = [
    {"p": 2, "d": 1, "l": 0, "m": 2, "rank": 2},
    {"p": 3, "d": 1, "l": 0, "m": 2, "rank": 2},
    {"p": 2, "d": 2, "l": 0, "m": 2, "rank": 2},
    {"p": 2, "d": 3, "l": 0, "m": 2, "rank": 2},
    {"p": 3, "d": 2, "l": 0, "m": 2, "rank": 2},
]


def _abelian_generators(F, r, d, rng):
    """Commuting 1 + t P_k(A) for one random A over F_p."""
    A = _fp_matrix(F, r, rng)
    gens = []
    for k in range(d):
        coeffs = [0] + [rng.randrange(F.p) for _ in range(2)]
        coeffs[1 + k % 2] = 1
        gens.append(_one_plus(F, _scale_t(F, _poly(F, A, coeffs))))
    return gens


def _window_from(wspec, rng):
    p, l, m = wspec["p"], wspec["l"], wspec["m"]
    N = p ** (l + m)
    F = LaurentField(p, N)
    gens = _abelian_generators(F, wspec["rank"], wspec["d"], rng)
    return AbelianWindow(p, gens, l, m, N), gens


def _allocate(pairs, total, heavy, heavy_tables):
    counts = [0] * len(pairs)
    k = 0
    placed = 0
    while placed < total:
        idx = k % len(pairs)
        k += 1
        if heavy[idx] and counts[idx] >= heavy_tables:
            if all(counts[i] >= heavy_tables for i in range(len(pairs)) if heavy[i]) and \
                    all(heavy):
                break
            continue
        counts[idx] += 1
        placed += 1
    return counts


def _known_procyclic(F, r, rng):
    """gamma = X diag(1 + d_i) X^-1, d_i in {0, t^k}: H^0, H^1 both of dim #{d_i = 0}."""
    ds = []
    for _ in range(r):
        ds.append(F.zero if rng.random() < 0.35 else F.monomial(rng.randint(1, 3),
                                                               rng.randrange(1, F.p)))
    X = _unimodular(F, r, rng)
    gamma = _conjugate(F, X, _diag(F, [F.one + x for x in ds]))
    z = sum(1 for x in ds if x.is_zero())
    return gamma, (z, z)


@suite("cochains", tables=100, actions=200, degrees=[0, 1, 2], heavy_points=10**7,
       heavy_tables=2, N=8, max_rank=4)
def cochains_suite(prm, res):
    """d o d = 0 exhaustively on finite windows; Koszul with d = 1 against gamma - 1."""
    rng = random.Random(prm["seed"])
    nrng = np.random.default_rng(prm["seed"])
    ck = res.checks
    windows = prm.get("windows") or DEFAULT_WINDOWS
    degrees = _parse_int_list(prm["degrees"])
    built = []
    for w in windows:
        W, gens = _window_from(w, rng)
        L = LatticeWindow(W)
        built.append((w, W, L, gens))
        ck.check("window_action_is_homomorphism", L.is_faithful(),
                 {"window": w, "generators": [mat_json(g) for g in gens]})
    pairs = [(wi, n) for wi in range(len(built)) for n in degrees]
    heavy = [built[wi][2].q ** (n + 2) > prm["heavy_points"] for wi, n in pairs]
    counts = _allocate(pairs, prm["tables"], heavy, prm["heavy_tables"])
    rows = res.table("dd_tables", ["window", "order", "degree", "tables", "points_each"])
    for (wi, n), c in zip(pairs, counts):
        w, W, L, gens = built[wi]
        for t in range(c):
            F = L.random_table(n, nrng)
            ok, bad, total = L.dd_zero(F, n)
            ck.check("dd_zero", ok, {"window": w, "degree": n, "table": t, "nonzero": bad,
                                     "seed": prm["seed"]})
        rows.append([wi, L.q, n, c, L.q ** (n + 2)])
    # the numpy path against the object path on the small windows
    for wi, (w, W, L, gens) in enumerate(built):
        if W.order > 9:
            continue
        for n in (0, 1):
            f = random_cochain(W, n, rng, digits=W.prec)
            same = np.array_equal(L.differential(L.to_array(f), n) % W.p,
                                  L.to_array(differential(f)) % W.p)
            ck.check("lattice_matches_object_differential", same, {"window": w, "degree": n})
    # Koszul complex of one operator against the two-term complex
    krows = res.table("procyclic_vs_koszul", ["action", "p", "rank", "degree", "dim"])
    for k in range(prm["actions"]):
        p = (2, 3)[k % 2]
        F = LaurentField(p, prm["N"])
        r = rng.randint(1, prm["max_rank"])
        gamma, expect = _known_procyclic(F, r, rng)
        pc = procyclic_cohomology(r, gamma, p, prm["N"])
        kz = koszul_cohomology(r, [gamma], p, prm["N"])
        datum = {"action": k, "p": p, "gamma": mat_json(gamma), "expected": list(expect)}
        ck.check("koszul_d1_equals_procyclic", list(pc.dims) == kz, dict(datum, koszul=kz))
        ck.check("procyclic_matches_construction", tuple(pc.dims) == expect,
                 dict(datum, got=list(pc.dims)))
        if k < 10:
            krows.extend([k, p, r, q, x] for q, x in enumerate(kz))
    res.payload["windows"] = windows
    res.payload["dd_points_checked"] = sum(c * built[wi][2].q ** (n + 2)
                                           for (wi, n), c in zip(pairs, counts))


# -- procyclic and koszul ------------------------------------------------------

@suite("procyclic", p=3, N=8, max_rank=4, actions=50)
def procyclic_suite(prm, res):
    """H^0, H^1 of Z_p acting through gamma, with bases and section valuation."""
    p, N = prm["p"], prm["N"]
    F = LaurentField(p, N)
    rng = random.Random(prm["seed"])
    ck = res.checks
    cases = []
    if prm.get("action"):
        g = _entries(prm["action"]["generators"][0], p, N)
        cases.append((g, None))
    else:
        for _ in range(prm["actions"]):
            cases.append(_known_procyclic(F, rng.randint(1, prm["max_rank"]), rng))
    rows = res.table("dims", ["action", "degree", "dim"])
    for k, (g, expect) in enumerate(cases):
        r = len(g)
        pc = procyclic_cohomology(r, g, p, N)
        kz = koszul_cohomology(r, [g], p, N)
        datum = {"action": k, "gamma": mat_json(g)}
        ck.check("euler_characteristic_zero", pc.dims[0] == pc.dims[1], datum)
        ck.check("koszul_d1_equals_procyclic", list(pc.dims) == kz, datum)
        if expect is not None:
            ck.check("dims_match_construction", tuple(pc.dims) == expect,
                     dict(datum, expected=list(expect), got=list(pc.dims)))
        # invariants really are fixed by gamma
        fixed = all(banach.vector_valuation(banach.mat_sub([banach.mat_vec(g, v, p, N)], [v])[0])
                    == INF for v in pc.h0_basis)
        ck.check("h0_basis_fixed", fixed, datum)
        rows.extend([k, q, x] for q, x in enumerate(pc.dims))
        if len(cases) == 1:
            res.payload.update({"dims": list(pc.dims), "h0_basis": [[x.to_json() for x in v]
                                                                   for v in pc.h0_basis],
                                "h1_basis": [[x.to_json() for x in v] for v in pc.h1_basis],
                                "section_valuation": _jsonval(pc.section_valuation)})


def _known_koszul(F, r, d, rng):
    """Simultaneously diagonal gammas; lines fixed by all contribute C(d, q) in degree q."""
    X = _unimodular(F, r, rng)
    cols = []
    for _ in range(r):
        trivial = rng.random() < 0.4
        cols.append([F.zero if trivial or rng.random() < 0.3 else
                     F.monomial(rng.randint(1, 3), rng.randrange(1, F.p)) for _ in range(d)])
    gammas = [_conjugate(F, X, _diag(F, [F.one + c[k] for c in cols])) for k in range(d)]
    z = sum(1 for c in cols if all(x.is_zero() for x in c))
    return gammas, [z * math.comb(d, q) for q in range(d + 1)]


@suite("koszul", p=3, N=8, d=2, max_rank=3, actions=30)
def koszul_suite(prm, res):
    """Koszul cohomology of commuting gammas."""
    p, N = prm["p"], prm["N"]
    F = LaurentField(p, N)
    rng = random.Random(prm["seed"])
    ck = res.checks
    cases = []
    if prm.get("action"):
        cases.append(([_entries(g, p, N) for g in prm["action"]["generators"]], None))
    else:
        for _ in range(prm["actions"]):
            cases.append(_known_koszul(F, rng.randint(1, prm["max_rank"]), prm["d"], rng))
    rows = res.table("dims", ["action", "degree", "dim"])
    for k, (gens, expect) in enumerate(cases):
        r = len(gens[0])
        dims = koszul_cohomology(r, gens, p, N)
        datum = {"action": k, "generators": [mat_json(g) for g in gens]}
        ck.check("euler_characteristic_zero",
                 sum((-1) ** q * x for q, x in enumerate(dims)) == 0, datum)
        if expect is not None:
            ck.check("dims_match_construction", dims == expect,
                     dict(datum, expected=expect, got=dims))
        one = koszul_cohomology(r, gens[:1], p, N)
        ck.check("first_generator_matches_procyclic",
                 one == list(procyclic_cohomology(r, gens[0], p, N).dims), datum)
        rows.extend([k, q, x] for q, x in enumerate(dims))
        if len(cases) == 1:
            res.payload["dims"] = dims


# -- homotopy ----------------------------------------------------------------

SETUP_LEVEL = {2: 2, 3: 1}


def _homotopy_case(p, gamma, l, m, N, degrees, i_values, rng, max_points, seed, label,
                   v_c=None):
    W = AbelianWindow(p, [gamma], l, m, N)
    cert = action_certificate([gamma], p, N, l_max=l + m - 1)
    if not hasattr(cert, "v_c"):
        raise ValueError(f"action is not analytic: {cert.reason}")
    vc = cert.v_c if v_c is None else v_c
    em1 = banach.BoundedMap(banach.mat_sub(gamma, banach.identity(len(gamma), p, N)), p, N)
    qi = banach.quasi_inverse(em1)
    out = []
    for n in degrees:
        f = random_cochain(W, n, rng)
        reps = []
        for i in i_values:
            prm = HomotopyParams(i, qi.g, l, vc, cert.v_e)
            _, _, rep = homotopy_residual_decomposition(f, prm, max_points=max_points, seed=seed)
            reps.append(rep)
        out.append((n, reps))
    return cert, qi, out


@suite("homotopy", primes=[2, 3], max_rank=4, degrees=[1, 2], max_points=200, nonabelian=True)
def homotopy_suite(prm, res):
    """d h_i + h_i d - 1 against its three-term decomposition; bound growth in i."""
    rng = random.Random(prm["seed"])
    ck = res.checks
    degrees = _parse_int_list(prm["degrees"])
    rows = res.table("residuals", ["case", "p", "rank", "kind", "l", "degree", "i",
                                   "residual_valuation", "bound", "setup_bound_holds",
                                   "verified_readings"])
    verified_all = None
    plot_x, plot_series = [], {}
    cases = []
    if prm.get("action"):
        if "p" not in prm:
            raise ValueError("a custom action needs p")
        p = prm["p"]
        lv = prm.get("level", {"l": 0, "m": 3})
        N = prm.get("N") or p ** (lv["l"] + lv["m"])
        gamma = _entries(prm["action"]["generators"][0], p, N)
        h = prm.get("homotopy", {})
        i_vals = [h["i"]] if "i" in h else list(range(lv["l"], lv["l"] + lv["m"]))
        cases.append(("custom", p, len(gamma), "custom", lv["l"], lv["m"], N, gamma, i_vals,
                      h.get("v_c")))
    else:
        for p in _parse_int_list(prm["primes"]):
            for r in range(1, prm["max_rank"] + 1):
                for kind in ("unipotent", "nilpotent"):
                    if kind == "nilpotent" and r == 1:
                        continue
                    for l in sorted({0, SETUP_LEVEL.get(p, 1)}):
                        m = 3
                        N = p ** (l + m)
                        F = LaurentField(p, N)
                        U = _fp_matrix(F, r, rng, kind)
                        gamma = _one_plus(F, _scale_t(F, U))
                        cases.append((f"p{p}-r{r}-{kind}-l{l}", p, r, kind, l, m, N, gamma,
                                      list(range(l, l + 3)), None))
    for label, p, r, kind, l, m, N, gamma, i_vals, vc in cases:
        cert, qi, out = _homotopy_case(p, gamma, l, m, N, degrees, i_vals, rng,
                                       prm["max_points"], prm["seed"], label, v_c=vc)
        for n, reps in out:
            datum = {"case": label, "degree": n, "gamma": mat_json(gamma), "seed": prm["seed"]}
            for rep in reps:
                vr = set(rep.verified_readings)
                verified_all = vr if verified_all is None else verified_all & vr
                ck.check("identity_exact_under_displayed_reading", rep.displayed_reading_holds,
                         dict(datum, i=rep.i, readings=rep.readings))
                rows.append([label, p, r, kind, l, n, rep.i, _jsonval(rep.residual_valuation),
                             _jsonval(rep.bound), rep.setup_bound_holds,
                             ";".join(rep.verified_readings)])
            bounds = [rep.bound for rep in reps]
            if all(rep.setup_bound_holds for rep in reps) and len(reps) > 1:
                inc = all(b > a for a, b in zip(bounds, bounds[1:]))
                ck.check("bound_strictly_increasing_under_setup", inc,
                         dict(datum, bounds=[_jsonval(b) for b in bounds]))
                if kind == "unipotent" and n == degrees[-1]:
                    key = f"p={p}, rank {r}"
                    plot_x = [rep.i for rep in reps]
                    plot_series[key] = [rep.bound for rep in reps]
    if prm.get("nonabelian") and not prm.get("action"):
        verified_all = _nonabelian_readings(res, rng, prm, verified_all)
    verified_all = sorted(verified_all or [])
    ck.check("displayed_reading_verified", reading_name(READINGS[0]) in verified_all,
             {"verified_everywhere": verified_all})
    res.payload["reading"] = reading_name(READINGS[0])
    res.payload["readings_verified_on_every_case"] = verified_all
    res.payload["candidate_readings"] = [reading_name(rd) for rd in READINGS]
    if plot_series:
        res.plots["bound_growth"] = {
            "kind": "line", "title": "Certified residual bound under the set-up condition",
            "xlabel": "i", "ylabel": "valuation bound", "x": plot_x, "series": plot_series}


def _nonabelian_readings(res, rng, prm, verified_all):
    """Gamma_1 / Gamma_3 in GL_2(Z_3) permuting Z_3^2 / 9: separates all four readings."""
    ck = res.checks
    p, prec = 3, 6
    rep, r, _ = orbit_representation(2, p, 2, prec)
    W = CongruenceWindow(2, p, 1, 2, rep, r, prec, eta=((1, 1), (0, 1)))
    eta = rep(W.eta)
    qi = banach.quasi_inverse(banach.BoundedMap(
        banach.mat_sub(eta, banach.identity(r, p, prec)), p, prec))
    rows = res.table("nonabelian_readings", ["degree", "i", "reading", "exact"])
    for n in (2, 3):
        f = random_cochain(W, n, rng, lazy=True)
        _, _, rp = homotopy_residual_decomposition(
            f, HomotopyParams(1, qi.g, 1, 1, 0, d_val=0), max_points=60, seed=prm["seed"])
        vr = set(rp.verified_readings)
        verified_all = vr if verified_all is None else verified_all & vr
        ck.check("identity_exact_under_displayed_reading", rp.displayed_reading_holds,
                 {"case": "nonabelian-p3", "degree": n, "readings": rp.readings})
        rows.extend([n, 1, name, ok] for name, ok in rp.readings.items())
    ck.check("reading_uniquely_determined", len(verified_all) == 1,
             {"verified_everywhere": sorted(verified_all)})
    return verified_all


# -- main theorem -----------------------------------------------------------

@suite("main-theorem", specs=100, primes=[2, 3], max_rank=4, N=8)
def main_theorem_suite(prm, res):
    """Vanishing for <gamma_1> and for Z_p^2 on random abelian specs."""
    rng = random.Random(prm["seed"])
    ck = res.checks
    specs = []
    if prm.get("action"):
        if "p" not in prm:
            raise ValueError("a custom action needs p")
        specs.append({"p": prm["p"], "N": prm["N"], "module": prm.get("module", {}),
                      "action": prm["action"]})
    else:
        primes = _parse_int_list(prm["primes"])
        for k in range(prm["specs"]):
            p = primes[k % len(primes)]
            F = LaurentField(p, prm["N"])
            r = rng.randint(1, prm["max_rank"])
            A = _fp_matrix(F, r, rng, "invertible")
            coeffs = [rng.randrange(p) for _ in range(3)]
            g1 = _one_plus(F, _scale_t(F, A))
            g2 = _one_plus(F, _scale_t(F, _poly(F, A, coeffs)))
            specs.append({"p": p, "N": prm["N"], "module": {"rank": r},
                          "action": {"generators": [g1, g2], "abelian": True}})
    rows = res.table("dims", ["spec", "group", "degree", "dim"])
    for k, spec in enumerate(specs):
        rep = main_theorem_experiment(spec)
        gens = spec["action"]["generators"]
        datum = {"spec": k, "p": spec["p"],
                 "generators": [mat_json(g) if isinstance(g[0][0], TruncSeries) else g
                                for g in gens]}
        ck.check("procyclic_vanishing", rep.hypothesis, dict(datum, h_dims=list(rep.h_dims)))
        ck.check("koszul_vanishing", rep.conclusion, dict(datum, gamma_dims=rep.gamma_dims))
        ck.check("implication_holds", rep.implication_holds, datum)
        rows.extend([k, "H", q, x] for q, x in enumerate(rep.h_dims))
        rows.extend([k, "Gamma", q, x] for q, x in enumerate(rep.gamma_dims))
        if len(specs) == 1:
            res.payload["report"] = rep.to_json()
    res.payload["specs"] = len(specs)


# -- Lie algebra suites -------------------------------------------------------

KOSTANT_DEFAULT = [("sl2", (w,)) for w in range(5)] + \
    [("sl3", w) for w in ((0, 0), (1, 0), (0, 1), (1, 1))]


@suite("lie-kostant", algebra=None, weight=None)
def lie_kostant_suite(prm, res):
    """dim H^i(n, V_lambda) against Weyl group length counts."""
    ck = res.checks
    if prm.get("instances"):
        inst = [(x["algebra"], _parse_int_list(x["weight"])) for x in prm["instances"]]
    elif prm.get("algebra"):
        w = _parse_int_list(prm.get("weight")) or ([0] if prm["algebra"] == "sl2" else [0, 0])
        inst = [(prm["algebra"], w)]
    else:
        inst = KOSTANT_DEFAULT
    rows = res.table("dims", ["algebra", "weight", "degree", "dim", "weyl_count"])
    plot_x, dims_s, weyl_s = [], [], []
    for alg, w in inst:
        rep = kostant_check(alg, tuple(w))
        wname = ",".join(str(x) for x in rep.weight)
        datum = {"algebra": alg, "weight": list(rep.weight), "dims": rep.dims,
                 "weyl_counts": rep.weyl_counts}
        ck.check("module_dimension_is_weyl_dimension", rep.module_dim == rep.weyl_dimension,
                 dict(datum, module_dim=rep.module_dim))
        ck.check("dims_equal_weyl_length_counts", rep.matches, datum)
        ck.check("cohomology_nonzero", rep.nonzero, datum)
        for q, (x, c) in enumerate(zip(rep.dims, rep.weyl_counts)):
            rows.append([alg, wname, q, x, c])
        res.payload.setdefault("instances", []).append(rep.to_json())
        plot_x.append(f"{alg}({wname})")
        dims_s.append(sum(rep.dims))
        weyl_s.append(sum(rep.weyl_counts))
    if len(inst) == 1:
        res.payload["dims"] = res.payload["instances"][0]["dims"]
    res.plots["total_dims"] = {"kind": "bar", "title": "Total dim H(n, V) against |W|",
                               "xlabel": "instance", "ylabel": "dimension", "x": plot_x,
                               "series": {"sum dim H^i": dims_s, "|W|": weyl_s}}


HS_DEFAULT = [("sl2", "borel", "nilradical", "trivial"), ("sl2", "borel", "nilradical", "adjoint"),
              ("heisenberg", None, "center", "trivial"), ("heisenberg", None, "center", "adjoint"),
              ("sl3", "borel", "nilradical", "trivial"), ("sl3", "borel", "nilradical", "adjoint"),
              ("heisenberg", None, "all", "adjoint")]


def _custom_lie(prm):
    from fractions import Fraction
    c = [[[Fraction(x) for x in cij] for cij in ci] for ci in prm["structure_constants"]]
    g = LieAlgebra(len(c), c, name="custom")
    if prm.get("module_matrices"):
        M = LieModule(g, [[[Fraction(x) for x in row] for row in m]
                          for m in prm["module_matrices"]], "custom")
    elif prm.get("rep", "trivial") == "adjoint":
        M = adjoint_module(g)
    else:
        M = trivial_module(g)
    h = [[Fraction(x) for x in v] for v in prm.get("h_basis", [])]
    return g, h, M


def _hs_instance(base, part, sub, rep):
    """g = base (or its ``part`` subalgebra), h = ``sub`` inside base, M restricted to g."""
    g0, hb0, M0 = catalog_instance(base, sub, rep)
    if part is None:
        return g0, hb0, M0
    from .lie import restrict, subalgebra, linalg as la
    gb = sub_basis(g0, SUBALGEBRAS[(base, part)])
    g = subalgebra(g0, gb, f"{base}-{part}")
    M = restrict(M0, g0, gb, g)
    # M here is the restriction of the base module; the adjoint of g itself is also of interest
    if rep == "adjoint":
        M = adjoint_module(g)
    hb = [la.solve(gb, v) for v in hb0]
    return g, hb, M


def _lie_instances(prm, default):
    if prm.get("structure_constants"):
        return [("custom", None, None, prm.get("rep") or "custom")], True
    if prm.get("instances"):
        return [(x["algebra"], x.get("part"), x.get("subalgebra"), x.get("rep", "trivial"))
                for x in prm["instances"]], False
    if prm.get("algebra"):
        base, _, part = prm["algebra"].partition("-")
        return [(base, part or None, prm.get("subalgebra"), prm.get("rep") or "trivial")], False
    return default, False


@suite("lie-hs", algebra=None, subalgebra=None, rep=None)
def lie_hs_suite(prm, res):
    """E_2 of Hochschild-Serre against H(g, M): Euler characteristic and degree-wise bound."""
    ck = res.checks
    inst, custom = _lie_instances(prm, HS_DEFAULT)
    rows = res.table("e2", ["instance", "p", "q", "dim"])
    arows = res.table("abutment", ["instance", "degree", "dim", "e2_diagonal_sum"])
    first = None
    for k, (base, part, sub, rep) in enumerate(inst):
        if custom:
            g, hb, M = _custom_lie(prm)
        else:
            if sub is None:
                raise ValueError("lie-hs needs a subalgebra (ideal) name")
            g, hb, M = _hs_instance(base, part, sub, rep)
        name = "custom" if custom else f"{base}{'-' + part if part else ''}/{sub}/{rep}"
        e2 = hs_e2_page(g, hb, M)
        datum = {"instance": name, "table": e2.table, "abutment": e2.abutment}
        ck.check("euler_equality", e2.euler_equal, datum)
        ck.check("degreewise_inequality", e2.inequality_holds, dict(datum, inequality=e2.inequality))
        ck.check("action_on_cohomology_well_defined", e2.well_defined, datum)
        for p_, row in enumerate(e2.table):
            rows.extend([name, p_, q, x] for q, x in enumerate(row))
        for n, a, s in e2.inequality:
            arows.append([name, n, a, s])
        res.payload.setdefault("instances", []).append(dict(e2.to_json(), instance=name))
        if first is None:
            first = (name, e2.table)
    if first:
        name, table = first
        res.plots["e2_page"] = {"kind": "grid", "title": f"E2 page, {name}", "xlabel": "p",
                                "ylabel": "q", "grid": table}


CONJ_DEFAULT = [("sl2", None, "cartan", "1"), ("sl2", None, "cartan", "3"),
                ("sl2", None, "cartan", "2"), ("sl2", None, "nilradical", "2"),
                ("sl3", None, "cartan", "1,0"), ("sl3", None, "cartan", "0,1"),
                ("sl3", None, "nilradical", "trivial"), ("heisenberg", None, "center", "adjoint")]


@suite("lie-conjecture", algebra=None, subalgebra=None, rep=None)
def lie_conjecture_suite(prm, res):
    """Both implications of the nilpotent-subalgebra statement on catalog instances."""
    ck = res.checks
    inst, custom = _lie_instances(prm, CONJ_DEFAULT)
    rows = res.table("dims", ["instance", "space", "degree", "dim"])
    for base, part, sub, rep in inst:
        if custom:
            g, hb, M = _custom_lie(prm)
            name = "custom"
        else:
            g, hb, M = _hs_instance(base, part, sub, rep)
            name = f"{base}{'-' + part if part else ''}/{sub}/{rep}"
        cr = conjecture_lie_experiment(g, hb, M)
        datum = dict(cr.to_json(), instance=name)
        ck.check("vanishing_transfers", cr.implication_a != "fails", datum)
        ck.check("finiteness_transfers", cr.implication_b != "fails", datum)
        rows.extend([name, "h", q, x] for q, x in enumerate(cr.h_dims))
        rows.extend([name, "g", q, x] for q, x in enumerate(cr.g_dims))
        res.payload.setdefault("instances", []).append(datum)
    res.payload["nonvacuous"] = sum(1 for x in res.payload.get("instances", [])
                                    if x["implication_a"] != "vacuous")

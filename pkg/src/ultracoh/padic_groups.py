"""Congruence subgroups Gamma_j = 1 + p^j M_n(Z_p), computed modulo p^N.

Matrices are tuples of row tuples of ints in ``[0, p**N)``.  The coordinate
chart is the affine one, ``pi(X) = 1 + X``; truncated log/exp give the
exponential chart for comparison.
"""

from __future__ import annotations

import random
from dataclasses import dataclass


class DomainError(ValueError):
    """Input lies outside the range where a series or refinement is valid."""


def vp(x, p):
    """p-adic valuation of a nonzero integer."""
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def min_level(p):
    """Smallest level on which log, exp and p-th roots are all integral."""
    return 2 if p == 2 else 1


# -- matrices mod p^N ------------------------------------------------------

def mat_identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a, b, mod):
    n = len(a)
    m = len(b[0])
    k = len(b)
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(k)) % mod for j in range(m))
                 for i in range(n))


def mat_add(a, b, mod):
    return tuple(tuple((x + y) % mod for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b, mod):
    return tuple(tuple((x - y) % mod for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a, c, mod):
    return tuple(tuple((c * x) % mod for x in row) for row in a)


def mat_inv(a, p, mod):
    """Inverse mod ``mod = p**N`` by Gauss-Jordan with unit pivots."""
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] % p), None)
        if piv is None:
            raise ValueError("matrix is not invertible mod p")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, mod)
        aug[c] = [(x * inv) % mod for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % mod for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def mat_pow(a, k, p, mod):
    if k < 0:
        a, k = mat_inv(a, p, mod), -k
    result = mat_identity(len(a))
    while k:
        if k & 1:
            result = mat_mul(result, a, mod)
        a = mat_mul(a, a, mod)
        k >>= 1
    return result


def level(a, p, N):
    """Largest j <= N with ``a == 1 mod p^j``."""
    best = N
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            d = (x - (i == j)) % p**N
            if d:
                best = min(best, vp(d, p))
    return best


def matrix_valuation(a, p, N):
    best = N
    for row in a:
        for x in row:
            if x % p**N:
                best = min(best, vp(x % p**N, p))
    return best


# -- group elements ---------------------------------------------------------

@dataclass(frozen=True)
class CongruenceElement:
    n: int
    j: int
    p: int
    N: int
    entries: tuple

    def __post_init__(self):
        mod = self.p**self.N
        entries = tuple(tuple(int(x) % mod for x in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.n or any(len(r) != self.n for r in entries):
            raise ValueError("entries must be an n x n matrix")
        if level(entries, self.p, self.N) < self.j:
            raise ValueError(f"element is not congruent to 1 mod p^{self.j}")
        if self.j == 0:
            mat_inv(entries, self.p, mod)

    @property
    def mod(self):
        return self.p**self.N

    def level(self):
        return level(self.entries, self.p, self.N)

    def _wrap(self, entries, j=None):
        if j is None:
            j = level(entries, self.p, self.N)
        return CongruenceElement(self.n, min(j, self.N), self.p, self.N, entries)

    def __mul__(self, other):
        _check_compatible(self, other)
        return self._wrap(mat_mul(self.entries, other.entries, self.mod),
                          min(self.j, other.j))

    def inverse(self):
        return self._wrap(mat_inv(self.entries, self.p, self.mod), self.j)

    def __pow__(self, k):
        return self._wrap(mat_pow(self.entries, k, self.p, self.mod))

    def is_identity(self):
        return self.entries == mat_identity(self.n)

    def to_json(self):
        return {"n": self.n, "j": self.j, "p": self.p, "N": self.N,
                "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["n"], obj["j"], obj["p"], obj["N"], tuple(map(tuple, obj["entries"])))


def _check_compatible(a, b):
    if (a.n, a.p, a.N) != (b.n, b.p, b.N):
        raise ValueError("incompatible group elements")


def identity_element(n, p, N, j=0):
    return CongruenceElement(n, j, p, N, mat_identity(n))


def group_op(a, b, op):
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "commutator":
        return commutator(a, b)
    raise ValueError(f"unknown operation {op!r}")


def commutator(a, b):
    """``a^-1 b^-1 a b``."""
    _check_compatible(a, b)
    mod = a.mod
    ai = mat_inv(a.entries, a.p, mod)
    bi = mat_inv(b.entries, a.p, mod)
    c = mat_mul(mat_mul(ai, bi, mod), mat_mul(a.entries, b.entries, mod), mod)
    return a._wrap(c)


# -- chart -------------------------------------------------------------------

@dataclass(frozen=True)
class Chart:
    """Affine chart ``pi(X) = 1 + X`` on Gamma_j, coordinates (p^j Z_p)^(n^2)."""

    n: int
    j: int
    p: int
    N: int

    def to_group(self, coords):
        mod = self.p**self.N
        X = _as_matrix(coords, self.n)
        for row in X:
            for x in row:
                if x % mod and vp(x % mod, self.p) < self.j:
                    raise ValueError(f"coordinates are not divisible by p^{self.j}")
        return CongruenceElement(self.n, self.j, self.p, self.N,
                                 mat_add(mat_identity(self.n), X, mod))

    def to_coords(self, g):
        return tuple(x for row in mat_sub(g.entries, mat_identity(self.n), self.p**self.N)
                     for x in row)

    def random_coords(self, rng, level=None):
        lv = self.j if level is None else level
        mod = self.p**self.N
        return tuple((self.p**lv * rng.randrange(mod)) % mod for _ in range(self.n * self.n))

    def random_element(self, rng, level=None):
        return self.to_group(self.random_coords(rng, level))


def _as_matrix(coords, n):
    if len(coords) == n and all(isinstance(r, (tuple, list)) for r in coords):
        return tuple(tuple(r) for r in coords)
    coords = tuple(coords)
    return tuple(coords[i * n:(i + 1) * n] for i in range(n))


def chart_map(chart, x, direction):
    if direction == "to_group":
        return chart.to_group(x)
    if direction == "to_coords":
        return chart.to_coords(x)
    raise ValueError(f"unknown direction {direction!r}")


# -- log / exp ------------------------------------------------------------

def _div_exact(mat, k, p, N):
    """``mat / k`` mod p^N where mat's entries are exact integer lifts."""
    mod = p**N
    v = vp(k, p)
    u = k // p**v
    uinv = pow(u, -1, mod)
    out = []
    for row in mat:
        new = []
        for x in row:
            if x % p**v:
                raise DomainError(f"entry not divisible by p^{v}")
            new.append(((x // p**v) * uinv) % mod)
        out.append(tuple(new))
    return tuple(out)


def _int_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n))
                 for i in range(n))


def _vp_factorial(k, p):
    s, q = 0, p
    while q <= k:
        s += k // q
        q *= p
    return s


def log(g):
    """Truncated matrix logarithm of ``g`` in Gamma_j, j >= 1 (j >= 2 if p = 2)."""
    p, N, n = g.p, g.N, g.n
    mod = p**N
    j = g.level()
    if j < min_level(p):
        raise DomainError(f"log needs level >= {min_level(p)} for p = {p}, got {j}")
    X = mat_sub(g.entries, mat_identity(n), mod)
    total = tuple((0,) * n for _ in range(n))
    power = X
    k = 1
    while True:
        if k * j - vp(k, p) < N:
            term = _div_exact(power, k, p, N)
            total = mat_add(total, term, mod) if k % 2 else mat_sub(total, term, mod)
        elif k * j - _log_floor(k, p) >= N:
            break
        k += 1
        power = _int_mul(power, X)
    return total


def _log_floor(k, p):
    e, q = 0, p
    while q <= k:
        q *= p
        e += 1
    return e


def exp(Y, p, N, j=None):
    """Truncated matrix exponential of ``Y`` with ``Y == 0 mod p^j``."""
    n = len(Y)
    mod = p**N
    Y = tuple(tuple(int(x) % mod for x in row) for row in Y)
    jy = matrix_valuation(Y, p, N)
    if jy < min_level(p):
        raise DomainError(f"exp needs divisibility by p^{min_level(p)} for p = {p}, got p^{jy}")
    if jy >= N:
        return CongruenceElement(n, N, p, N, mat_identity(n))
    total = mat_identity(n)
    power = mat_identity(n)
    k = 0
    while True:
        k += 1
        power = _int_mul(power, Y)
        vf = _vp_factorial(k, p)
        if k * jy - vf < N:
            fact = 1
            for i in range(2, k + 1):
                fact *= i
            total = mat_add(total, _div_exact(power, fact, p, N), mod)
        elif k * (jy - 1 / (p - 1)) >= N + 1:
            break
    return CongruenceElement(n, j if j is not None else jy, p, N, total)


def log_exp(x, direction, p=None, N=None):
    if direction == "log":
        return log(x)
    if direction == "exp":
        return exp(x, p, N)
    raise ValueError(f"unknown direction {direction!r}")


# -- p-th roots ----------------------------------------------------------------

def pth_root(g, max_steps=None):
    """``eta`` in Gamma_(j-1) with ``eta**p == g``, by successive refinement.

    Start from ``1 + (g - 1)/p`` and repeatedly multiply by
    ``1 + (eta^-p g - 1)/p``; each step gains at least one p-adic digit.
    """
    p, N, n = g.p, g.N, g.n
    mod = p**N
    j = g.level()
    need = min_level(p) + 1
    if j < need:
        raise DomainError(f"p-th root needs level >= {need} for p = {p}, got {j}")
    if g.is_identity():
        return CongruenceElement(n, max(g.j - 1, 0), p, N, g.entries)
    X = mat_sub(g.entries, mat_identity(n), mod)
    eta = mat_add(mat_identity(n), _div_exact(X, p, p, N), mod)
    steps = max_steps if max_steps is not None else N + 1
    for _ in range(steps):
        etap = mat_pow(eta, p, p, mod)
        if etap == g.entries:
            return CongruenceElement(n, max(g.j - 1, 0), p, N, eta)
        delta = mat_sub(mat_mul(mat_inv(etap, p, mod), g.entries, mod), mat_identity(n), mod)
        if matrix_valuation(delta, p, N) < 1:
            raise DomainError("refinement diverged")
        corr = mat_add(mat_identity(n), _div_exact(delta, p, p, N), mod)
        eta = mat_mul(eta, corr, mod)
    raise DomainError("p-th root refinement did not converge")


# -- verification sweeps -----------------------------------------------------

def multiplication_series_check(n, p, N, j, samples, seed=0):
    """Group law in chart coordinates agrees with addition mod p^(2j).

    Checks the affine chart (deviation ``xy``) and the exponential chart
    (deviation ``log(exp x exp y) - x - y``, agreement mod p^(2j-1) when
    p = 2); for ``(p x, p y)`` the affine deviation scales by exactly
    ``p^2`` and the exponential one obeys the bound at level ``j + 1``.
    """
    rng = random.Random(seed)
    mod = p**N
    chart = Chart(n, j, p, N)
    failures = []
    exp_ok = j >= min_level(p)
    min_dev = {"affine": N, "exp": N}
    for s in range(samples):
        x = _as_matrix(chart.random_coords(rng), n)
        y = _as_matrix(chart.random_coords(rng), n)
        gx, gy = chart.to_group(x), chart.to_group(y)
        sxy = mat_add(x, y, mod)
        dev = mat_sub(_as_matrix(chart.to_coords(gx * gy), n), sxy, mod)
        v = matrix_valuation(dev, p, N)
        min_dev["affine"] = min(min_dev["affine"], v)
        if v < min(2 * j, N):
            failures.append({"sample": s, "chart": "affine", "valuation": v})
        px, py = mat_scale(x, p, mod), mat_scale(y, p, mod)
        dev_p = mat_sub(mat_mul(px, py, mod), mat_scale(dev, p * p, mod), mod)
        if matrix_valuation(dev_p, p, N) < N:
            failures.append({"sample": s, "chart": "affine-scaling"})
        if exp_ok:
            prod = exp(x, p, N) * exp(y, p, N)
            dev_e = mat_sub(log(prod), sxy, mod)
            ve = matrix_valuation(dev_e, p, N)
            min_dev["exp"] = min(min_dev["exp"], ve)
            # the quadratic BCH term is [x, y]/2
            if ve < min(2 * j - (1 if p == 2 else 0), N):
                failures.append({"sample": s, "chart": "exp", "valuation": ve})
            prod_p = exp(px, p, N) * exp(py, p, N)
            dev_ep = mat_sub(log(prod_p), mat_add(px, py, mod), mod)
            # (px, py) lie one level deeper, so the level-(j+1) bound applies
            if matrix_valuation(dev_ep, p, N) < min(2 * (j + 1) - (1 if p == 2 else 0), N):
                failures.append({"sample": s, "chart": "exp-scaling"})
    return {"n": n, "p": p, "N": N, "j": j, "samples": samples, "seed": seed,
            "min_deviation_valuation": min_dev if exp_ok else {"affine": min_dev["affine"]},
            "failures": failures, "passed": not failures}


def quotient_check(n, p, N, j):
    """Exhaustive structure of Gamma_j / Gamma_(j+1)."""
    mod = p**N
    size = n * n
    reps = []
    for idx in range(p**size):
        digits = [(idx // p**k) % p for k in range(size)]
        X = tuple(tuple(p**j * digits[r * n + c] for c in range(n)) for r in range(n))
        reps.append((tuple(digits), CongruenceElement(n, j, p, N, mat_add(mat_identity(n), X, mod))))

    def cls(g):
        X = mat_sub(g.entries, mat_identity(n), mod)
        return tuple((X[r][c] // p**j) % p for r in range(n) for c in range(n))

    failures = []
    classes = {cls(g) for _, g in reps}
    if len(classes) != p**size:
        failures.append({"check": "order", "found": len(classes)})
    for d, g in reps:
        if g.level() < j:
            failures.append({"check": "level", "rep": d})
        gp = g ** p
        if gp.level() < j + 1:
            failures.append({"check": "exponent", "rep": d})
        if any(d) and g.level() >= j + 1:
            failures.append({"check": "order-p", "rep": d})
    for d1, g1 in reps:
        for d2, g2 in reps:
            want = tuple((a + b) % p for a, b in zip(d1, d2))
            prod = g1 * g2
            if prod.level() < j or cls(prod) != want:
                failures.append({"check": "homomorphism", "reps": [d1, d2]})
    return {"order": len(classes), "expected_order": p**size, "exponent": p,
            "failures": failures, "passed": not failures}


def telescoping_check(g1, g2):
    """``g1^-1 g2 g1`` equals ``g2 xi (eta^-1 xi eta) ... (eta^(1-p) xi eta^(p-1))``."""
    p, mod = g1.p, g1.mod
    eta = pth_root(g1)
    e = eta.entries
    ei = mat_inv(e, p, mod)
    g2e = g2.entries
    xi = mat_mul(mat_mul(mat_inv(g2e, p, mod), ei, mod), mat_mul(g2e, e, mod), mod)
    prod = g2e
    conj_l, conj_r = mat_identity(g1.n), mat_identity(g1.n)
    for _ in range(p):
        prod = mat_mul(prod, mat_mul(mat_mul(conj_l, xi, mod), conj_r, mod), mod)
        conj_l = mat_mul(conj_l, ei, mod)
        conj_r = mat_mul(e, conj_r, mod)
    lhs = mat_mul(mat_mul(mat_inv(g1.entries, p, mod), g2e, mod), g1.entries, mod)
    return lhs == prod


def verify_commutator_lemma(n, p, N, j, samples, seed=0, spread=3):
    """Sampled (a) closure, exhaustive (b) quotient structure, sampled (c) commutators."""
    rng = random.Random(seed)
    chart = Chart(n, j, p, N)
    report = {"n": n, "p": p, "N": N, "j": j, "samples": samples, "seed": seed}

    fail_a = []
    for s in range(samples):
        a = chart.random_element(rng)
        b = chart.random_element(rng)
        if (a * b).level() < j or a.inverse().level() < j:
            fail_a.append({"sample": s, "a": a.to_json()["entries"], "b": b.to_json()["entries"]})
    report["a"] = {"failures": fail_a, "passed": not fail_a}

    report["b"] = quotient_check(n, p, N, j)

    fail_c = []
    levels = []
    tele_fail = []
    for s in range(samples):
        j1 = rng.randint(j, j + spread)
        j2 = rng.randint(j, j + spread)
        g1 = chart.random_element(rng, j1)
        g2 = chart.random_element(rng, j2)
        lv = commutator(g1, g2).level()
        levels.append(lv)
        stated = min(j1 + j2 - j, N)
        sharp = min(j1 + j2, N)
        if lv < stated or lv < sharp:
            fail_c.append({"sample": s, "j1": j1, "j2": j2, "level": lv,
                           "g1": [list(r) for r in g1.entries],
                           "g2": [list(r) for r in g2.entries]})
        if g1.level() >= min_level(p) + 1 and s % 10 == 0:
            if not telescoping_check(g1, g2):
                tele_fail.append({"sample": s})
    report["c"] = {"failures": fail_c, "passed": not fail_c,
                   "bound": "level([g1, g2]) >= min(j1 + j2, N) (chart normalized to j = 0)",
                   "level_histogram": _histogram(levels)}
    report["telescoping"] = {"failures": tele_fail, "passed": not tele_fail}
    report["passed"] = all(report[k]["passed"] for k in ("a", "b", "c", "telescoping"))
    return report


def _histogram(values):
    out = {}
    for v in values:
        out[str(v)] = out.get(str(v), 0) + 1
    return dict(sorted(out.items(), key=lambda kv: int(kv[0])))

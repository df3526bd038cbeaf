"""Inhomogeneous cochains Q^n -> K^r on a level window, and the differential.

A :class:`Cochain` is a function on tuples of window elements, memoized, so a
differential or a homotopy is evaluated lazily on exactly the points that are
asked for.  ``table()`` materializes the dense table.
"""

from __future__ import annotations

import itertools
import random

from ..scalars import TruncSeries


def vec_add(u, v):
    return [x + y for x, y in zip(u, v)]


def vec_sub(u, v):
    return [x - y for x, y in zip(u, v)]


def vec_neg(u):
    return [-x for x in u]


def vec_is_zero(u):
    return all(x.is_zero() for x in u)


def vec_valuation(u):
    return min((x.valuation() for x in u), default=float("inf"))


class Cochain:
    """Degree-n cochain on a window, given by ``func(*args) -> vector``."""

    def __init__(self, window, degree, func, name=""):
        if degree < 0:
            raise ValueError("degree must be >= 0")
        self.window = window
        self.degree = degree
        self._func = func
        self._memo = {}
        self.name = name

    def __call__(self, *args):
        if len(args) != self.degree:
            raise ValueError(f"degree-{self.degree} cochain called with {len(args)} arguments")
        val = self._memo.get(args)
        if val is None:
            val = self._func(*args)
            self._memo[args] = val
        return val

    def points(self):
        return itertools.product(self.window.elements, repeat=self.degree)

    def table(self):
        return {args: self(*args) for args in self.points()}

    @classmethod
    def from_table(cls, window, degree, table, name=""):
        table = dict(table)

        def func(*args):
            return table[args]

        return cls(window, degree, func, name)

    @classmethod
    def constant(cls, window, degree, vec, name=""):
        return cls(window, degree, lambda *args: vec, name)

    @classmethod
    def zero(cls, window, degree):
        return cls.constant(window, degree, window.zero_vector(), "0")

    def __add__(self, other):
        _check_same(self, other)
        return Cochain(self.window, self.degree, lambda *a: vec_add(self(*a), other(*a)))

    def __sub__(self, other):
        _check_same(self, other)
        return Cochain(self.window, self.degree, lambda *a: vec_sub(self(*a), other(*a)))

    def __neg__(self):
        return Cochain(self.window, self.degree, lambda *a: vec_neg(self(*a)))

    def __repr__(self):
        return f"Cochain(degree={self.degree}, |Q|={self.window.order}{', ' + self.name if self.name else ''})"


def _check_same(f, g):
    if f.window is not g.window or f.degree != g.degree:
        raise ValueError("cochains live on different windows or degrees")


def differential(f, window=None):
    """(df)(g_1..g_{n+1}) = g_1 f(g_2..) + sum_j (-1)^j f(..g_j g_{j+1}..) + (-1)^{n+1} f(g_1..g_n)."""
    Q = f.window
    if window is not None and window is not Q:
        raise ValueError("level mismatch: cochain and action live on different windows")
    n = f.degree

    def df(*g):
        out = Q.act(g[0], f(*g[1:]))
        for j in range(1, n + 1):
            args = g[: j - 1] + (Q.mul(g[j - 1], g[j]),) + g[j + 1:]
            term = f(*args)
            out = vec_sub(out, term) if j % 2 else vec_add(out, term)
        last = f(*g[:n])
        return vec_sub(out, last) if (n + 1) % 2 else vec_add(out, last)

    return Cochain(Q, n + 1, df, f"d({f.name})" if f.name else "")


def random_vector(window, rng, digits=3, min_val=0):
    """Random vector whose entries are polynomials with ``digits`` t-adic digits."""
    p, prec = window.p, window.prec
    return [TruncSeries(p, min_val, [rng.randrange(p) for _ in range(digits)], prec)
            for _ in range(window.rank)]


def random_cochain(window, degree, rng, digits=3, min_val=0, lazy=False):
    """Random table; values are short polynomials so arithmetic stays cheap.

    With ``lazy=True`` values are drawn on demand from a generator seeded by
    the argument tuple, which keeps large windows affordable and is still
    deterministic.
    """
    if lazy:
        seed = rng.getrandbits(64)

        def func(*args):
            return random_vector(window, random.Random(f"{seed}:{args!r}"), digits, min_val)

        return Cochain(window, degree, func, "random")
    table = {args: random_vector(window, rng, digits, min_val)
             for args in itertools.product(window.elements, repeat=degree)}
    return Cochain.from_table(window, degree, table, "random")


def coboundary_of_vector(window, vec):
    """The crossed homomorphism gamma -> gamma v - v."""
    return differential(Cochain.constant(window, 0, vec))


def cochains_equal(f, g, points=None):
    pts = f.points() if points is None else points
    return all(vec_is_zero(vec_sub(f(*a), g(*a))) for a in pts)

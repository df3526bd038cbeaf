"""Finite level windows Q = Gamma_l / Gamma_(l+m) together with an action on K^r.

Two flavours:

* :class:`AbelianWindow` for Gamma = Z_p^d acting through commuting generator
  matrices; an element is a tuple of chart coordinates in ``p^l Z / p^(l+m)``.
* :class:`CongruenceWindow` for a congruence subgroup of GL_n(Z_p), whose
  elements are integer matrices mod ``p^(l+m)``; the action is supplied as a
  function from such matrices to K-matrices.

The action is evaluated on canonical representatives.  It is a homomorphism
on Q only when Gamma_(l+m) acts trivially to the working precision; that is
what :meth:`Window.is_faithful` checks.
"""

from __future__ import annotations

import itertools

from .. import banach
from ..padic_groups import level as _mat_level
from ..padic_groups import mat_identity, mat_mul as _int_mat_mul, mat_pow as _int_mat_pow
from ..padic_groups import vp
from ..scalars import TruncSeries


class Window:
    """Common interface: elements, multiplication, levels, action matrices."""

    abelian = False

    def __init__(self, p, l, m, rank, prec):
        if l < 0 or m < 1:
            raise ValueError("need l >= 0 and m >= 1")
        self.p, self.l, self.m = p, l, m
        self.rank, self.prec = rank, prec
        self.mod = p ** (l + m)
        self._actions = {}
        self._elements = None
        self._index = None

    # subclasses provide: _enumerate, mul, inv, identity, level_of, coset_key,
    # eta_power and _compute_action

    @property
    def elements(self):
        if self._elements is None:
            self._elements = list(self._enumerate())
            self._index = {a: k for k, a in enumerate(self._elements)}
        return self._elements

    @property
    def order(self):
        return len(self.elements)

    def index(self, a):
        self.elements
        return self._index[a]

    def action(self, a):
        mat = self._actions.get(a)
        if mat is None:
            mat = self._compute_action(a)
            self._actions[a] = mat
        return mat

    def act(self, a, vec):
        return banach.mat_vec(self.action(a), vec, self.p, self.prec)

    def mult_table(self):
        els = self.elements
        return [[self.index(self.mul(a, b)) for b in els] for a in els]

    def is_faithful(self):
        """action(ab) == action(a) action(b) for all a, b in Q."""
        p, prec = self.p, self.prec
        for a in self.elements:
            for b in self.elements:
                lhs = self.action(self.mul(a, b))
                rhs = banach.mat_mul(self.action(a), self.action(b), p, prec)
                if not banach.is_zero_matrix(banach.mat_sub(lhs, rhs)):
                    return False
        return True

    def zero_vector(self):
        return [TruncSeries.zero(self.p, self.prec)] * self.rank


def _as_entries(g, p, prec):
    if isinstance(g, banach.BoundedMap):
        return g.entries
    return [[banach._as_series(x, p, prec) for x in row] for row in g]


class AbelianWindow(Window):
    """Q = p^l Z_p^d / p^(l+m) Z_p^d acting via commuting matrices gamma_k."""

    abelian = True

    def __init__(self, p, generators, l, m, prec):
        gens = [_as_entries(g, p, prec) for g in generators]
        if not gens:
            raise ValueError("need at least one generator")
        super().__init__(p, l, m, len(gens[0]), prec)
        self.generators = gens
        self.d = len(gens)
        self._powers = {}

    def _enumerate(self):
        step = self.p**self.l
        coords = [u * step for u in range(self.p**self.m)]
        return itertools.product(coords, repeat=self.d)

    @property
    def identity(self):
        return (0,) * self.d

    def mul(self, a, b):
        return tuple((x + y) % self.mod for x, y in zip(a, b))

    def inv(self, a):
        return tuple((-x) % self.mod for x in a)

    def level_of(self, a):
        top = self.l + self.m
        return min((vp(x, self.p) if x else top for x in a), default=top)

    def coset_key(self, a, i):
        q = self.p**i
        return tuple(x % q for x in a)

    def eta_power(self, i):
        """Image of eta^(p^i), eta the first chart generator."""
        if not self.l <= i < self.l + self.m:
            raise ValueError(f"eta^(p^{i}) is not a nontrivial element of the window "
                             f"Gamma_{self.l}/Gamma_{self.l + self.m}")
        return (self.p**i,) + (0,) * (self.d - 1)

    def _gen_power(self, k, e):
        key = (k, e)
        mat = self._powers.get(key)
        if mat is None:
            mat = _mat_power(self.generators[k], e, self.p, self.prec)
            self._powers[key] = mat
        return mat

    def _compute_action(self, a):
        p, prec = self.p, self.prec
        out = banach.identity(self.rank, p, prec)
        for k, e in enumerate(a):
            if e:
                out = banach.mat_mul(out, self._gen_power(k, e), p, prec)
        return out


def _mat_power(a, e, p, prec):
    out = banach.identity(len(a), p, prec)
    base = a
    while e:
        if e & 1:
            out = banach.mat_mul(out, base, p, prec)
        e >>= 1
        if e:
            base = banach.mat_mul(base, base, p, prec)
    return out


class CongruenceWindow(Window):
    """Gamma_l / Gamma_(l+m) inside GL_n(Z_p), acting through ``representation``.

    ``representation`` maps an integer matrix mod p^(l+m) to an r x r matrix
    of series; it must be constant on cosets of Gamma_(l+m).
    """

    def __init__(self, n, p, l, m, representation, rank, prec, eta=None):
        super().__init__(p, l, m, rank, prec)
        self.n = n
        self.representation = representation
        if eta is None:
            # first chart coordinate of Gamma_l: the (1,1) entry
            base = max(l, 1)
            eta = tuple(tuple((p**base if (i, j) == (0, 0) else 0) + (i == j)
                              for j in range(n)) for i in range(n))
        # eta may lie outside Gamma_l (Gamma_l is normal); only its p^i-th
        # powers have to land in the window
        self.eta = tuple(tuple(x % self.mod for x in row) for row in eta)
        _int_mat_pow(self.eta, -1, p, self.mod)

    def _enumerate(self):
        p, l, n = self.p, self.l, self.n
        step = p**l
        idm = mat_identity(n)
        for xs in itertools.product(range(p**self.m), repeat=n * n):
            yield tuple(tuple((idm[i][j] + step * xs[i * n + j]) % self.mod for j in range(n))
                        for i in range(n))

    @property
    def identity(self):
        return mat_identity(self.n)

    def mul(self, a, b):
        return _int_mat_mul(a, b, self.mod)

    def inv(self, a):
        return _int_mat_pow(a, -1, self.p, self.mod)

    def level_of(self, a):
        return _mat_level(a, self.p, self.l + self.m)

    def coset_key(self, a, i):
        # congruence subgroups are normal, so a Gamma_i is "a mod p^i"
        q = self.p**i
        return tuple(tuple(x % q for x in row) for row in a)

    def eta_power(self, i):
        out = _int_mat_pow(self.eta, self.p**i, self.p, self.mod)
        lev = _mat_level(out, self.p, self.l + self.m)
        if lev < self.l or out == self.identity:
            raise ValueError(f"eta^(p^{i}) is not a nontrivial element of the window "
                             f"Gamma_{self.l}/Gamma_{self.l + self.m} (level {lev})")
        return out

    def _compute_action(self, a):
        return _as_entries(self.representation(a), self.p, self.prec)


def orbit_representation(n, p, L, prec, base=None):
    """Permutation representation of Gamma_1 mod p^L on the orbit of ``base``.

    Returns ``(rep, rank, points)``; rep sends a matrix (mod any multiple of
    p^L) to the K-matrix permuting the orbit points.  The action on the
    orbit factors through Gamma_L, so windows with l + m >= L are faithful.
    """
    mod = p**L
    if base is None:
        base = (1,) + (0,) * (n - 1)

    def move(a, v):
        return tuple(sum(a[i][k] * v[k] for k in range(n)) % mod for i in range(n))

    # the Gamma_1-orbit of v is everything congruent to v mod p
    points = {tuple((base[i] + p * x[i]) % mod for i in range(n))
              for x in itertools.product(range(p ** (L - 1)), repeat=n)}
    points = sorted(points)
    where = {v: k for k, v in enumerate(points)}
    one = TruncSeries.from_int(p, 1, prec)
    zero = TruncSeries.zero(p, prec)
    r = len(points)

    def rep(a):
        out = [[zero] * r for _ in range(r)]
        for k, v in enumerate(points):
            out[where[move(a, v)]][k] = one
        return out

    return rep, r, points

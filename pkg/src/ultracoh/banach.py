"""Finite-rank Banach spaces over F_p((t)) with orthonormal bases.

Vectors are lists of :class:`~ultracoh.scalars.TruncSeries`; a map is a
row-major matrix (target rank x source rank).  The norm of a vector is the
max of its coordinate norms, so its valuation is the min coordinate
valuation, and the operator valuation of a matrix is its min entry valuation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .scalars import INF, PrecisionError, TruncSeries


@dataclass(frozen=True)
class NormedModule:
    rank: int
    basis_labels: tuple = ()

    def __post_init__(self):
        if not self.basis_labels:
            object.__setattr__(self, "basis_labels", tuple(f"e{i}" for i in range(self.rank)))
        if len(self.basis_labels) != self.rank:
            raise ValueError("one label per basis vector")


class BoundedMap:
    """K-linear map between finite-rank orthonormal-basis modules."""

    def __init__(self, entries, p, prec, source=None, target=None):
        self.entries = [list(row) for row in entries]
        self.p = p
        self.prec = prec
        nrows = len(self.entries)
        ncols = len(self.entries[0]) if nrows else (source.rank if source else 0)
        self.source = source or NormedModule(ncols)
        self.target = target or NormedModule(nrows)
        if nrows != self.target.rank or any(len(r) != self.source.rank for r in self.entries):
            raise ValueError("matrix shape does not match source/target ranks")

    @classmethod
    def from_rows(cls, rows, p, prec):
        rows = [[_as_series(x, p, prec) for x in row] for row in rows]
        return cls(rows, p, prec)

    @classmethod
    def zero(cls, nrows, ncols, p, prec):
        z = TruncSeries.zero(p, prec)
        return cls([[z] * ncols for _ in range(nrows)], p, prec,
                   NormedModule(ncols), NormedModule(nrows))

    @classmethod
    def identity(cls, n, p, prec):
        return cls(identity(n, p, prec), p, prec)

    @property
    def shape(self):
        return self.target.rank, self.source.rank

    def valuation(self):
        return operator_valuation(self)

    def __matmul__(self, other):
        return BoundedMap(mat_mul(self.entries, other.entries, self.p, self.prec),
                          self.p, self.prec, other.source, self.target)

    def __sub__(self, other):
        return BoundedMap(mat_sub(self.entries, other.entries), self.p, self.prec,
                          self.source, self.target)

    def __add__(self, other):
        return BoundedMap(mat_add(self.entries, other.entries), self.p, self.prec,
                          self.source, self.target)

    def apply(self, vec):
        return mat_vec(self.entries, vec, self.p, self.prec)

    def to_json(self):
        return [[x.to_json() for x in row] for row in self.entries]

    def __repr__(self):
        return f"BoundedMap({self.shape[0]}x{self.shape[1]}, p={self.p})"


def _as_series(x, p, prec):
    if isinstance(x, TruncSeries):
        return x
    if isinstance(x, dict):
        return TruncSeries.from_json(x)
    return TruncSeries.from_int(p, x, prec)


# -- plain matrix helpers ------------------------------------------------

def identity(n, p, prec):
    one = TruncSeries.from_int(p, 1, prec)
    zero = TruncSeries.zero(p, prec)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(nrows, ncols, p, prec):
    zero = TruncSeries.zero(p, prec)
    return [[zero] * ncols for _ in range(nrows)]


def _dot(row, col, p, prec):
    # zero terms only lower the precision, so they are folded into a cap
    s = None
    cap = None
    for x, y in zip(row, col):
        if x.coeffs and y.coeffs:
            term = x * y
            s = term if s is None else s + term
        else:
            c = min(x.prec + y.lead, y.prec + x.lead)
            if cap is None or c < cap:
                cap = c
    if s is None:
        return TruncSeries.zero(p, prec if cap is None else cap)
    if cap is not None and cap < s.prec:
        s = s.truncate(cap)
    return s


def mat_mul(a, b, p, prec):
    if not a:
        return []
    if not b:
        return [[] for _ in a]
    cols = transpose(b)
    return [[_dot(row, col, p, prec) for col in cols] for row in a]


def mat_vec(a, v, p, prec):
    return [_dot(row, v, p, prec) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def is_zero_matrix(a):
    return all(x.is_zero() for row in a for x in row)


def operator_valuation(f):
    entries = f.entries if isinstance(f, BoundedMap) else f
    return min((x.valuation() for row in entries for x in row), default=INF)


def vector_valuation(v):
    return min((x.valuation() for x in v), default=INF)


# -- elimination -------------------------------------------------------

def _pivots(a):
    """Full pivoting on minimal-valuation entries; returns [(row, col), ...].

    Ties go to the lowest row, then the lowest column.  A pivot of valuation
    ``v`` is only accepted if every active entry that reads as zero is known
    to precision at least ``v``; otherwise a smaller-valuation entry could be
    hiding below the precision and :class:`PrecisionError` is raised.
    """
    m = [list(row) for row in a]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rows = list(range(nrows))
    cols = list(range(ncols))
    pivots = []
    while rows and cols:
        best = None
        for i in rows:
            mi = m[i]
            for j in cols:
                x = mi[j]
                if x.coeffs and (best is None or x.lead < best[0]):
                    best = (x.lead, i, j)
        if best is None:
            break
        v, pi, pj = best
        for i in rows:
            for j in cols:
                x = m[i][j]
                if not x.coeffs and x.prec < v:
                    raise PrecisionError(
                        f"pivot valuation {v} not certified: entry ({i},{j}) "
                        f"is only known modulo t^{x.prec}")
        pivots.append((pi, pj))
        rows.remove(pi)
        cols.remove(pj)
        inv = m[pi][pj].inverse()
        prow = m[pi]
        for i in rows:
            x = m[i][pj]
            if not x.coeffs:
                continue
            factor = x * inv
            mi = m[i]
            for j in cols:
                y = prow[j]
                mi[j] = mi[j] - factor * y
            mi[pj] = TruncSeries.zero(x.p, x.prec)
    return pivots


def _invert_square(a):
    """Inverse of an invertible square matrix via Gauss-Jordan."""
    n = len(a)
    if n == 0:
        return []
    p = a[0][0].p
    prec = max(x.prec for row in a for x in row)
    aug = [list(row) + e for row, e in zip(a, identity(n, p, prec))]
    used = set()
    done_cols = set()
    order = []
    for _ in range(n):
        best = None
        for i in range(n):
            if i in used:
                continue
            for j in range(n):
                if j in done_cols:
                    continue
                x = aug[i][j]
                if x.coeffs and (best is None or x.lead < best[0]):
                    best = (x.lead, i, j)
        if best is None:
            raise ZeroDivisionError("matrix is singular to the available precision")
        _, pi, pj = best
        used.add(pi)
        done_cols.add(pj)
        order.append((pi, pj))
        inv = aug[pi][pj].inverse()
        aug[pi] = [x * inv for x in aug[pi]]
        for i in range(n):
            if i == pi:
                continue
            x = aug[i][pj]
            if x.coeffs:
                aug[i] = [y - x * z for y, z in zip(aug[i], aug[pi])]
    # row pi now carries the unit vector in column pj: inverse row pj = aug[pi][n:]
    inv_rows = [None] * n
    for pi, pj in order:
        inv_rows[pj] = aug[pi][n:]
    return inv_rows


def inverse(f):
    """Inverse of a square invertible map (matrix or :class:`BoundedMap`)."""
    if isinstance(f, BoundedMap):
        return BoundedMap(_invert_square(f.entries), f.p, f.prec, f.target, f.source)
    return _invert_square(f)


@dataclass
class Decomposition:
    rank: int
    pivots: list
    kernel_basis: list
    image_basis: list
    cokernel_basis: list
    section: BoundedMap
    section_valuation: float

    @property
    def dim_kernel(self):
        return len(self.kernel_basis)

    @property
    def dim_cokernel(self):
        return len(self.cokernel_basis)


def decompose(f: BoundedMap) -> Decomposition:
    a = f.entries
    nrows, ncols = f.shape
    p, prec = f.p, f.prec
    pivots = _pivots(a)
    R = [i for i, _ in pivots]
    C = [j for _, j in pivots]
    minor = [[a[i][j] for j in C] for i in R]
    minv = _invert_square(minor)
    zero = TruncSeries.zero(p, prec)
    one = TruncSeries.from_int(p, 1, prec)

    sec = [[zero] * nrows for _ in range(ncols)]
    for ia, c in enumerate(C):
        for ib, r in enumerate(R):
            sec[c][r] = minv[ia][ib]
    section = BoundedMap(sec, p, prec, f.target, f.source)

    kernel = []
    pivot_cols = set(C)
    for c in range(ncols):
        if c in pivot_cols:
            continue
        rhs = [a[r][c] for r in R]
        sol = mat_vec(minv, rhs, p, prec) if R else []
        x = [zero] * ncols
        for ia, cc in enumerate(C):
            x[cc] = -sol[ia]
        x[c] = one
        kernel.append(x)
    image = [[a[i][c] for i in range(nrows)] for c in C]
    pivot_rows = set(R)
    coker = [[one if i == k else zero for i in range(nrows)]
             for k in range(nrows) if k not in pivot_rows]
    return Decomposition(
        rank=len(pivots),
        pivots=pivots,
        kernel_basis=kernel,
        image_basis=image,
        cokernel_basis=coker,
        section=section,
        section_valuation=operator_valuation(section) if pivots else INF,
    )


def rank(f):
    if not isinstance(f, BoundedMap):
        raise TypeError("rank expects a BoundedMap")
    if f.shape[0] == 0 or f.shape[1] == 0:
        return 0
    return len(_pivots(f.entries))


# -- splittings and quasi-inverses ---------------------------------------

@dataclass
class Splitting:
    complement_basis: list
    change_of_basis: BoundedMap
    inverse_valuation: float


def split_subspace(v0_basis, V: NormedModule, p, prec) -> Splitting:
    """Complement V1 of span(v0_basis) spanned by standard basis vectors.

    The complement vectors are the standard vectors outside the pivot rows of
    the basis matrix; they have norm 1, which is the finite-rank form of
    lifting quotient basis vectors with controlled norm.
    """
    n = V.rank
    k = len(v0_basis)
    if k == 0:
        comp = identity(n, p, prec)
        return Splitting(comp, BoundedMap(comp, p, prec), 0 if n else INF)
    cols = transpose(v0_basis)
    B = BoundedMap(cols, p, prec, NormedModule(k), V)
    dec = decompose(B)
    if dec.rank < k:
        raise ValueError("input vectors are linearly dependent")
    comp = dec.cokernel_basis
    full = transpose(list(v0_basis) + comp)
    change = BoundedMap(full, p, prec)
    inv = _invert_square(full)
    return Splitting(comp, change, operator_valuation(inv))


@dataclass
class QuasiInverse:
    g: BoundedMap
    fg_defect_rank: int
    gf_defect_rank: int
    dim_kernel: int
    dim_cokernel: int

    @property
    def within_bounds(self):
        return (self.fg_defect_rank <= self.dim_cokernel
                and self.gf_defect_rank <= self.dim_kernel + self.dim_cokernel)


def quasi_inverse(f: BoundedMap) -> QuasiInverse:
    """g with f g - 1 and g f - 1 of finite (here: measured) rank.

    g is the section of the decomposition: it projects the target onto
    image(f) along the standard complement and lifts into the complement
    of ker(f) spanned by the pivot columns.
    """
    dec = decompose(f)
    g = dec.section
    m, n = f.shape
    p, prec = f.p, f.prec
    fg = f @ g
    gf = g @ f
    fg_defect = fg - BoundedMap(identity(m, p, prec), p, prec, f.target, f.target)
    gf_defect = gf - BoundedMap(identity(n, p, prec), p, prec, f.source, f.source)
    return QuasiInverse(g, rank(fg_defect) if m else 0, rank(gf_defect) if n else 0,
                        dec.dim_kernel, dec.dim_cokernel)


# -- base change to an unramified extension ------------------------------

def _poly_mod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = (a[-1] * inv) % p
        shift = len(a) - len(b)
        for k, bk in enumerate(b):
            a[shift + k] = (a[shift + k] - c * bk) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def irreducible_poly(p, e):
    """Lexicographically first monic irreducible of degree ``e`` over F_p (low degree first)."""
    if e == 1:
        return [0, 1]
    for tail in itertools.product(range(p), repeat=e):
        f = list(tail) + [1]
        if f[0] == 0:
            continue
        ok = True
        for d in range(1, e // 2 + 1):
            for gt in itertools.product(range(p), repeat=d):
                g = list(gt) + [1]
                if not _poly_mod(f, g, p):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return f
    raise ValueError(f"no irreducible polynomial of degree {e} over F_{p}")


class UnramifiedExtension:
    """K' = K[x]/(phi) with phi irreducible over F_p, as K-matrices.

    An element of K' is a list of ``e`` elements of K (coefficients of
    1, x, ..., x^(e-1)); ``mult_matrix`` gives the K-linear map of
    multiplication by it, so a K'-matrix restricts to a K-matrix of e x e blocks.
    """

    def __init__(self, p, e, prec):
        self.p, self.e, self.prec = p, e, prec
        self.phi = irreducible_poly(p, e)
        comp = [[0] * e for _ in range(e)]
        for i in range(1, e):
            comp[i][i - 1] = 1
        for i in range(e):
            comp[i][e - 1] = (-self.phi[i]) % p
        self.companion_powers = [_int_mat_pow(comp, k, p) for k in range(e)]

    def mult_matrix(self, elem):
        e, p, prec = self.e, self.p, self.prec
        out = zeros(e, e, p, prec)
        for k, a in enumerate(elem):
            if a.is_zero():
                continue
            ck = self.companion_powers[k]
            for i in range(e):
                for j in range(e):
                    if ck[i][j]:
                        out[i][j] = out[i][j] + a * ck[i][j]
        return out

    def restrict(self, mat):
        """K-matrix of a K'-matrix given as nested lists of K'-elements."""
        e = self.e
        nrows = len(mat)
        ncols = len(mat[0]) if nrows else 0
        out = zeros(nrows * e, ncols * e, self.p, self.prec)
        for i in range(nrows):
            for j in range(ncols):
                block = self.mult_matrix(mat[i][j])
                for a in range(e):
                    for b in range(e):
                        out[i * e + a][j * e + b] = block[a][b]
        return out

    def scalar(self, x):
        zero = TruncSeries.zero(self.p, self.prec)
        return [x] + [zero] * (self.e - 1)

    def random_unit(self, rng):
        """Random element of O_K' that is nonzero mod t (a unit)."""
        while True:
            digits = [rng.randrange(self.p) for _ in range(self.e)]
            if any(digits):
                break
        return [TruncSeries.from_coeffs(self.p, [d] + [rng.randrange(self.p) for _ in range(2)], self.prec)
                for d in digits]

    def random_integral(self, rng):
        return [TruncSeries.from_coeffs(self.p, [rng.randrange(self.p) for _ in range(3)], self.prec)
                for _ in range(self.e)]

    def random_invertible(self, n, rng):
        """L U with unit diagonals drawn from K', so invertible exactly."""
        zero = [TruncSeries.zero(self.p, self.prec)] * self.e
        one = self.scalar(TruncSeries.from_int(self.p, 1, self.prec))
        L = [[self.random_integral(rng) if j < i else (one if i == j else zero) for j in range(n)]
             for i in range(n)]
        U = [[self.random_integral(rng) if j > i else (self.random_unit(rng) if i == j else zero)
              for j in range(n)] for i in range(n)]
        Lr, Ur = self.restrict(L), self.restrict(U)
        return mat_mul(Lr, Ur, self.p, self.prec)


def _int_mat_pow(m, k, p):
    n = len(m)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = [[sum(out[i][t] * m[t][j] for t in range(n)) % p for j in range(n)] for i in range(n)]
    return out


def _extend_scalars(ext, a):
    """Block-diagonal restriction of f (x) 1 for a K-matrix ``a``."""
    return ext.restrict([[ext.scalar(x) for x in row] for row in a])


def base_change_check(f: BoundedMap, e: int, seed=0, complex_maps=None) -> dict:
    """Compare ker/coker (and complex cohomology) dims before and after K -> K'.

    After extending scalars, f is conjugated by random invertible K'-matrices
    whose entries are not K-rational, so the elimination genuinely runs over
    K'; dimensions over K' are K-dimensions of the restriction divided by e.
    """
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    rng = random.Random(seed)
    p, prec = f.p, f.prec
    ext = UnramifiedExtension(p, e, prec)
    m, n = f.shape
    dec = decompose(f)
    P = ext.random_invertible(m, rng)
    Q = ext.random_invertible(n, rng)
    fe = mat_mul(mat_mul(P, _extend_scalars(ext, f.entries), p, prec), Q, p, prec)
    dec_e = decompose(BoundedMap(fe, p, prec, NormedModule(n * e), NormedModule(m * e)))
    report = {
        "extension_degree": e,
        "phi": ext.phi,
        "dim_kernel": dec.dim_kernel,
        "dim_kernel_extended": _divide(dec_e.dim_kernel, e),
        "dim_cokernel": dec.dim_cokernel,
        "dim_cokernel_extended": _divide(dec_e.dim_cokernel, e),
    }
    ok = (report["dim_kernel"] == report["dim_kernel_extended"]
          and report["dim_cokernel"] == report["dim_cokernel_extended"])
    if complex_maps is not None:
        before = complex_cohomology(complex_maps)
        ranks = _complex_ranks(complex_maps)
        changes = [ext.random_invertible(r, rng) for r in ranks]
        ext_maps = []
        for i, d in enumerate(complex_maps):
            src_inv = _invert_square(changes[i])
            de = mat_mul(mat_mul(changes[i + 1], _extend_scalars(ext, d.entries), p, prec),
                         src_inv, p, prec)
            ext_maps.append(BoundedMap(de, p, prec, NormedModule(ranks[i] * e),
                                       NormedModule(ranks[i + 1] * e)))
        after = complex_cohomology(ext_maps, ranks=[r * e for r in ranks])
        report["cohomology_dims"] = before.dims
        report["cohomology_dims_extended"] = [_divide(d, e) for d in after.dims]
        ok = ok and report["cohomology_dims"] == report["cohomology_dims_extended"]
    report["invariant"] = ok
    return report


def _divide(a, e):
    return a // e if a % e == 0 else a / e


# -- complexes -----------------------------------------------------------

@dataclass
class ComplexCohomology:
    dims: list
    ranks: list
    section_valuations: list
    strict: list = field(default_factory=list)

    @property
    def euler_characteristic(self):
        return sum((-1) ** i * d for i, d in enumerate(self.dims))


def _complex_ranks(maps):
    ranks = [maps[0].source.rank]
    for d in maps:
        ranks.append(d.target.rank)
    return ranks


def complex_cohomology(maps, ranks=None) -> ComplexCohomology:
    """Cohomology of ``V^0 -> V^1 -> ...`` with differentials ``maps``.

    ``ranks`` gives the module ranks when ``maps`` is empty or to override.
    Every finite-rank differential is strict; the section valuation is
    reported as the quantitative content.
    """
    if ranks is None:
        if not maps:
            raise ValueError("need ranks for an empty complex")
        ranks = _complex_ranks(maps)
    if len(ranks) != len(maps) + 1:
        raise ValueError("need one more module than differentials")
    for i, d in enumerate(maps):
        if d.shape != (ranks[i + 1], ranks[i]):
            raise ValueError(f"differential {i} has the wrong shape")
    for i in range(len(maps) - 1):
        comp = mat_mul(maps[i + 1].entries, maps[i].entries, maps[i].p, maps[i].prec)
        if not is_zero_matrix(comp):
            raise ValueError(f"not a complex: d^{i + 1} o d^{i} != 0")
    dranks, secvals = [], []
    for d in maps:
        if d.shape[0] == 0 or d.shape[1] == 0:
            dranks.append(0)
            secvals.append(INF)
            continue
        dec = decompose(d)
        dranks.append(dec.rank)
        secvals.append(dec.section_valuation)
    dims = []
    for i, r in enumerate(ranks):
        out_rank = dranks[i] if i < len(dranks) else 0
        in_rank = dranks[i - 1] if i >= 1 else 0
        dims.append(r - out_rank - in_rank)
    return ComplexCohomology(dims, dranks, secvals, [True] * len(maps))

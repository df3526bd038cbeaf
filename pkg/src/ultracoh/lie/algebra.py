"""Lie algebras by structure constants over Q, their modules, and a small catalog."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la


@dataclass
class LieAlgebra:
    """[x_i, x_j] = sum_k c[i][j][k] x_k."""

    dim: int
    c: list
    labels: tuple = ()
    name: str = ""

    def __post_init__(self):
        self.c = [[[Fraction(x) for x in cij] for cij in ci] for ci in self.c]
        if not self.labels:
            self.labels = tuple(f"x{i}" for i in range(self.dim))
        if len(self.c) != self.dim or any(len(ci) != self.dim for ci in self.c):
            raise ValueError("structure constants must be dim x dim x dim")

    def bracket(self, u, v):
        """Bracket of coordinate vectors."""
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, x in enumerate(self.c[i][j]):
                    if x:
                        out[k] += ab * x
        return out

    def basis_vector(self, i):
        return [Fraction(int(k == i)) for k in range(self.dim)]

    def ad(self, u):
        """Matrix of ad(u) on the basis."""
        cols = [self.bracket(u, self.basis_vector(j)) for j in range(self.dim)]
        return la.transpose(cols, self.dim)

    def to_json(self):
        return {"name": self.name, "dim": self.dim, "labels": list(self.labels),
                "c": [[[_qjson(x) for x in cij] for cij in ci] for ci in self.c]}


def _qjson(x):
    return [x.numerator, x.denominator]


@dataclass
class LieModule:
    """rho(x_i) as dim x dim rational matrices."""

    algebra: LieAlgebra
    mats: list
    name: str = ""
    dim: int = field(init=False)

    def __post_init__(self):
        self.mats = [[[Fraction(x) for x in row] for row in m] for m in self.mats]
        if len(self.mats) != self.algebra.dim:
            raise ValueError("one action matrix per basis element")
        self.dim = len(self.mats[0]) if self.mats else 0
        if any(len(m) != self.dim or any(len(r) != self.dim for r in m) for m in self.mats):
            raise ValueError("action matrices must be square of equal size")

    def rho(self, u):
        out = la.zeros(self.dim, self.dim)
        for i, a in enumerate(u):
            if a:
                out = la.add(out, la.scale(self.mats[i], a))
        return out

    def to_json(self):
        return {"name": self.name, "dim": self.dim,
                "mats": [[[_qjson(x) for x in row] for row in m] for m in self.mats]}


# -- validation --------------------------------------------------------------

@dataclass
class ValidationReport:
    antisymmetry: list
    jacobi: list
    module: list

    @property
    def valid(self):
        return not (self.antisymmetry or self.jacobi or self.module)

    def to_json(self):
        return {"valid": self.valid, "antisymmetry": self.antisymmetry,
                "jacobi": self.jacobi, "module": self.module}


def validate_structures(g, M=None):
    """Antisymmetry, Jacobi and rho([x,y]) = [rho x, rho y], exactly."""
    n = g.dim
    anti, jac, mod = [], [], []
    for i in range(n):
        for j in range(n):
            if any(a + b for a, b in zip(g.c[i][j], g.c[j][i])):
                anti.append([i, j])
    e = [g.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                t = [a + b + c for a, b, c in zip(g.bracket(e[i], g.bracket(e[j], e[k])),
                                                  g.bracket(e[j], g.bracket(e[k], e[i])),
                                                  g.bracket(e[k], g.bracket(e[i], e[j])))]
                if any(t):
                    jac.append([i, j, k])
    if M is not None:
        for i in range(n):
            for j in range(i + 1, n):
                lhs = M.rho(g.bracket(e[i], e[j]))
                rhs = la.sub(la.matmul(M.mats[i], M.mats[j]), la.matmul(M.mats[j], M.mats[i]))
                if not la.is_zero(la.sub(lhs, rhs)):
                    mod.append([i, j])
    return ValidationReport(anti, jac, mod)


# -- constructions -----------------------------------------------------------

def from_matrices(mats, labels=(), name=""):
    """Lie algebra spanned by the given square matrices (closed under commutators)."""
    mats = [[[Fraction(x) for x in row] for row in m] for m in mats]
    flat = [[x for row in m for x in row] for m in mats]
    n = len(mats)
    c = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            comm = la.sub(la.matmul(mats[i], mats[j]), la.matmul(mats[j], mats[i]))
            coords = la.solve(flat, [x for row in comm for x in row])
            if coords is None:
                raise ValueError("matrices do not span a Lie algebra")
            c[i][j] = coords
    return LieAlgebra(n, c, tuple(labels), name)


def adjoint_module(g):
    return LieModule(g, [g.ad(g.basis_vector(i)) for i in range(g.dim)], "adjoint")


def trivial_module(g, dim=1):
    return LieModule(g, [la.zeros(dim, dim) for _ in range(g.dim)], "trivial")


def abelian(n):
    return LieAlgebra(n, [[[0] * n for _ in range(n)] for _ in range(n)], name=f"abelian{n}")


def subalgebra(g, basis, name=""):
    """Subalgebra spanned by coordinate vectors ``basis`` (checked closed)."""
    k = len(basis)
    c = [[None] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            coords = la.solve(basis, g.bracket(basis[a], basis[b]))
            if coords is None:
                raise ValueError("span is not closed under the bracket")
            c[a][b] = coords
    return LieAlgebra(k, c, name=name)


def restrict(M, g, basis, h=None):
    """M as a module over the subalgebra spanned by ``basis``."""
    if h is None:
        h = subalgebra(g, basis)
    return LieModule(h, [M.rho(v) for v in basis], M.name)


def is_ideal(g, basis):
    return all(la.solve(basis, g.bracket(g.basis_vector(i), v)) is not None
               for i in range(g.dim) for v in basis)


def lower_central_series(g, limit=None):
    """Dimensions of g, [g,g], [g,[g,g]], ... until it stabilizes."""
    cur = [g.basis_vector(i) for i in range(g.dim)]
    dims = [len(cur)]
    for _ in range(limit or g.dim + 1):
        span = [g.bracket(g.basis_vector(i), v) for i in range(g.dim) for v in cur]
        nxt = la.row_basis(span) if span else []
        nxt = [v for v in nxt if any(v)]
        dims.append(len(nxt))
        if len(nxt) == len(cur):
            break
        cur = nxt
        if not cur:
            break
    return dims


def is_nilpotent(g):
    return g.dim == 0 or lower_central_series(g)[-1] == 0


# -- catalog -------------------------------------------------------------------

def _E(n, i, j):
    m = [[0] * n for _ in range(n)]
    m[i][j] = 1
    return m


def _H(n, i):
    m = [[0] * n for _ in range(n)]
    m[i][i], m[i + 1][i + 1] = 1, -1
    return m


def sl2_matrices():
    return [_E(2, 0, 1), _H(2, 0), _E(2, 1, 0)], ("e", "h", "f")


def sl3_matrices():
    mats = [_E(3, 0, 1), _E(3, 0, 2), _E(3, 1, 2), _H(3, 0), _H(3, 1),
            _E(3, 1, 0), _E(3, 2, 0), _E(3, 2, 1)]
    labels = ("E12", "E13", "E23", "H1", "H2", "E21", "E31", "E32")
    return mats, labels


def sl2():
    mats, labels = sl2_matrices()
    return from_matrices(mats, labels, "sl2")


def sl3():
    mats, labels = sl3_matrices()
    return from_matrices(mats, labels, "sl3")


def heisenberg():
    return from_matrices([_E(3, 0, 1), _E(3, 1, 2), _E(3, 0, 2)], ("x", "y", "z"), "heisenberg")


# subalgebras of the catalog algebras, as index lists into their bases
SUBALGEBRAS = {
    ("sl2", "borel"): [0, 1],
    ("sl2", "nilradical"): [0],
    ("sl2", "cartan"): [1],
    ("sl3", "borel"): [0, 1, 2, 3, 4],
    ("sl3", "nilradical"): [0, 1, 2],
    ("sl3", "cartan"): [3, 4],
    ("heisenberg", "center"): [2],
    ("heisenberg", "all"): [0, 1, 2],
}


def catalog_algebra(name):
    if name == "sl2":
        return sl2()
    if name == "sl3":
        return sl3()
    if name == "heisenberg":
        return heisenberg()
    if name.startswith("abelian"):
        return abelian(int(name[len("abelian"):] or 1))
    if "-" in name:
        base, part = name.split("-", 1)
        g = catalog_algebra(base)
        basis = sub_basis(g, SUBALGEBRAS[(base, part)])
        return subalgebra(g, basis, name)
    raise ValueError(f"unknown algebra {name!r}")


def sub_basis(g, indices):
    return [g.basis_vector(i) for i in indices]

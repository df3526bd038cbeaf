"""E_2 page of the Hochschild-Serre spectral sequence for an ideal h of g.

E_2^{p,q} = H^p(g/h, H^q(h, M)).  The g/h-module H^q(h, M) is built from the
action of g on the cochains of h,

    (x.f)(y_1..y_q) = x f(y_1..y_q) - sum_s f(y_1..[x, y_s]..y_q),

which commutes with d; h acts trivially on cohomology, so representatives
of g/h act on cocycle representatives modulo coboundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .algebra import LieAlgebra, LieModule, is_ideal, restrict, subalgebra, validate_structures
from .ce import ce_complex, cohomology_basis, cohomology_dims, euler_characteristic


def _cochain_action(cx_h, h_basis, g, M, x):
    """Matrix of x in g acting on C^q(h, M) for every q."""
    m = M.dim
    rho_x = M.rho(x)
    bracket_coords = []
    for y in h_basis:
        coords = la.solve(h_basis, g.bracket(x, y))
        if coords is None:
            raise ValueError("h is not normal in g")
        bracket_coords.append(coords)
    mats = []
    for q, subsets in enumerate(cx_h.subsets):
        where = {S: i for i, S in enumerate(subsets)}
        size = len(subsets) * m
        A = la.zeros(size, size)
        for ti, T in enumerate(subsets):
            for b in range(m):
                for a in range(m):
                    if rho_x[b][a]:
                        A[ti * m + b][ti * m + a] += rho_x[b][a]
            for s, ys in enumerate(T):
                for bb, coef in enumerate(bracket_coords[ys]):
                    if not coef:
                        continue
                    U = T[:s] + (bb,) + T[s + 1:]
                    if len(set(U)) < len(U):
                        continue
                    S = tuple(sorted(U))
                    sign = _perm_sign(U)
                    si = where[S]
                    for a in range(m):
                        A[ti * m + a][si * m + a] -= sign * coef
        mats.append(A)
    return mats


def _perm_sign(U):
    inv = sum(1 for i in range(len(U)) for j in range(i + 1, len(U)) if U[i] > U[j])
    return -1 if inv % 2 else 1


@dataclass
class E2Page:
    table: list                  # table[p][q]
    p_max: int
    q_max: int
    abutment: list               # dims of H^n(g, M)
    euler_e2: int
    euler_abutment: int
    euler_equal: bool
    inequality: list             # (n, dim H^n, sum_{p+q=n} E2) per n
    inequality_holds: bool
    well_defined: bool
    module_checks: list = field(default_factory=list)

    def diagonal_sums(self):
        sums = [0] * (self.p_max + self.q_max + 1)
        for p in range(self.p_max + 1):
            for q in range(self.q_max + 1):
                sums[p + q] += self.table[p][q]
        return sums

    def to_json(self):
        return {"table": self.table, "abutment": self.abutment, "euler_e2": self.euler_e2,
                "euler_abutment": self.euler_abutment, "euler_equal": self.euler_equal,
                "inequality": self.inequality, "inequality_holds": self.inequality_holds,
                "well_defined": self.well_defined}


def hs_e2_page(g, h_basis, M):
    """E_2 page and the Euler/inequality checks against H^*(g, M)."""
    h_basis = [[Fraction(x) for x in v] for v in h_basis]
    if h_basis and la.rank(h_basis) < len(h_basis):
        raise ValueError("h basis vectors are dependent")
    if not is_ideal(g, h_basis):
        raise ValueError("h is not normal in g")
    h = subalgebra(g, h_basis) if h_basis else LieAlgebra(0, [])
    Mh = restrict(M, g, h_basis, h) if h_basis else LieModule(h, [])
    if not h_basis:
        Mh.dim = M.dim
    cx_h = ce_complex(h, Mh)

    std = [g.basis_vector(i) for i in range(g.dim)]
    comp = la.complement_in(h_basis, std)
    full = h_basis + comp
    k = len(h_basis)
    qc = [[None] * len(comp) for _ in comp]
    for a, u in enumerate(comp):
        for b, v in enumerate(comp):
            qc[a][b] = la.solve(full, g.bracket(u, v))[k:]
    quotient = LieAlgebra(len(comp), qc, name="g/h")

    actions_comp = [_cochain_action(cx_h, h_basis, g, M, x) for x in comp]
    actions_h = [_cochain_action(cx_h, h_basis, g, M, y) for y in h_basis]

    well_defined = True
    table = []
    module_checks = []
    q_max = h.dim
    modules = []
    for q in range(q_max + 1):
        cb = cohomology_basis(cx_h, q)
        dimH = len(cb.reps)
        mats = []
        for A in actions_comp:
            cols = [cb.coordinates(la.matvec(A[q], z)) for z in cb.reps]
            mats.append(la.transpose(cols, dimH) if dimH else [])
            # coboundaries must map to coboundaries
            for b in cb.coboundaries:
                if any(cb.coordinates(la.matvec(A[q], b))):
                    well_defined = False
        for A in actions_h:
            # h acts trivially on cohomology: representatives differing by h agree
            for z in cb.reps:
                if any(cb.coordinates(la.matvec(A[q], z))):
                    well_defined = False
        if dimH == 0:
            mats = [[] for _ in comp]
        Hq = LieModule(quotient, mats, f"H^{q}(h,M)") if comp else None
        if Hq is not None:
            Hq.dim = dimH
            module_checks.append(validate_structures(quotient, Hq).valid)
        modules.append((dimH, Hq))

    p_max = quotient.dim
    table = [[0] * (q_max + 1) for _ in range(p_max + 1)]
    for q, (dimH, Hq) in enumerate(modules):
        if p_max == 0:
            table[0][q] = dimH
            continue
        dims = cohomology_dims(ce_complex(quotient, Hq)) if dimH else [0] * (p_max + 1)
        for p in range(p_max + 1):
            table[p][q] = dims[p]

    abut = cohomology_dims(ce_complex(g, M))
    e2_euler = sum((-1) ** (p + q) * table[p][q]
                   for p in range(p_max + 1) for q in range(q_max + 1))
    ab_euler = euler_characteristic(abut)
    sums = [0] * (p_max + q_max + 1)
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            sums[p + q] += table[p][q]
    ineq = [(n, abut[n], sums[n]) for n in range(len(abut))]
    return E2Page(
        table=table, p_max=p_max, q_max=q_max, abutment=abut, euler_e2=e2_euler,
        euler_abutment=ab_euler, euler_equal=e2_euler == ab_euler, inequality=ineq,
        inequality_holds=all(a <= s for _, a, s in ineq),
        well_defined=well_defined and all(module_checks), module_checks=module_checks)

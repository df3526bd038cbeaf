"""Dense numpy path for cochains with values in the lattice O^r / t^N O^r.

An element of O/t^N is its digit vector in F_p^N, so O^r/t^N is F_p^D with
D = r N and an integral K-matrix acts as a D x D matrix over F_p (block
lower-triangular Toeplitz).  Cochain tables become arrays of shape
``(q,) * n + (D,)`` and the differential is a handful of gathers and one
matrix product per leading argument.  Tables are int16 digit arrays; the
matrix product runs in float32, exact because every partial sum is a small
integer.
"""

from __future__ import annotations

import numpy as np


def lattice_matrix(mat, N):
    """F_p matrix of an integral r x r series matrix acting on O^r / t^N."""
    r = len(mat)
    out = np.zeros((r * N, r * N))
    for i in range(r):
        for j in range(r):
            x = mat[i][j]
            if x.is_zero():
                continue
            if x.valuation() < 0:
                raise ValueError("action matrix is not integral; no lattice model")
            if x.prec < N:
                raise ValueError(f"entry known only mod t^{x.prec}, need t^{N}")
            for k in range(N):
                for u in range(k + 1):
                    c = x.digit(k - u)
                    if c:
                        out[i * N + k, j * N + u] = c
    return out


class LatticeWindow:
    """Multiplication table plus lattice action matrices of a window."""

    def __init__(self, window, N=None):
        self.window = window
        self.p = window.p
        self.N = window.prec if N is None else N
        self.rank = window.rank
        self.D = self.rank * self.N
        els = window.elements
        self.q = len(els)
        self.mult = np.array(window.mult_table(), dtype=np.intp)
        self.mats = np.stack([lattice_matrix(window.action(a), self.N)
                              for a in els]).astype(np.float32)
        self.identity_index = window.index(window.identity)

    def is_faithful(self):
        """Exhaustive check that a -> mats[a] is a homomorphism mod p."""
        p = self.p
        for a in range(self.q):
            prod = np.mod(self.mats[a] @ self.mats, p)   # mats[a] mats[b] for all b
            if not np.array_equal(prod, self.mats[self.mult[a]]):
                return False
        return True

    def random_table(self, degree, rng):
        return rng.integers(0, self.p, size=(self.q,) * degree + (self.D,)).astype(np.int16)

    def to_array(self, f):
        """Dense array of an object-path cochain (values must be integral)."""
        out = np.zeros((self.q,) * f.degree + (self.D,), dtype=np.int16)
        for args in f.points():
            idx = tuple(self.window.index(a) for a in args)
            for i, x in enumerate(f(*args)):
                for k in range(self.N):
                    out[idx + (i * self.N + k,)] = x.digit(k)
        return out

    # -- the differential -------------------------------------------------

    def _act(self, a, F):
        # partial sums are at most D (p-1)^2, so the float32 product is exact
        flat = F.reshape(-1, self.D).astype(np.float32) @ self.mats[a].T
        return flat.astype(np.int16).reshape(F.shape)

    def differential_slice(self, F, n, a):
        """(dF)(a, g_2, ..., g_{n+1}) as an array of shape (q,)*n + (D,).

        Terms are accumulated with an offset that keeps everything
        nonnegative, then reduced mod p once (reducing negatives is slow).
        """
        p = self.p
        out = self._act(a, F)
        if n == 0:
            out += p - F
            out %= p
            return out
        out += (n + 2) * p
        out -= F[self.mult[a]]
        Fa = F[a]
        for j in range(2, n + 1):
            term = np.take(Fa, self.mult, axis=j - 2)
            if j % 2:
                out -= term
            else:
                out += term
        last = np.broadcast_to(Fa[..., None, :], out.shape)
        if (n + 1) % 2:
            out -= last
        else:
            out += last
        out %= p
        return out

    def differential(self, F, n):
        return np.stack([self.differential_slice(F, n, a) for a in range(self.q)])

    def dd_zero(self, F, n):
        """Exhaustive d(dF) == 0 over all of Q^(n+2), one leading argument at a time."""
        dF = self.differential(F, n)
        bad = 0
        for a in range(self.q):
            block = self.differential_slice(dF, n + 1, a)
            bad += int(np.count_nonzero(block))
        return bad == 0, bad, self.q ** (n + 2)

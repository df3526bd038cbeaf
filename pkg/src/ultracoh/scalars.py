"""Exact scalars: truncated Laurent series over F_p and exact rationals.

A :class:`TruncSeries` is an element of F_p((t)) known modulo ``t**prec``.
Norms are never materialized; everything is carried as a valuation, an
``int`` or ``math.inf``.
"""

from __future__ import annotations

import math
from fractions import Fraction

INF = math.inf

# Exact rationals for the characteristic-zero side.
Rat = Fraction


class PrecisionError(ArithmeticError):
    """Raised when a decision needs more t-adic digits than are known."""


def _check_prime(p):
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not a prime")


class TruncSeries:
    """``t**lead * (c0 + c1 t + ...) + O(t**prec)`` with digits mod ``p``.

    Canonical form: ``coeffs[0] != 0``, ``len(coeffs) == prec - lead``; the
    zero element has ``lead == prec`` and no digits.
    """

    __slots__ = ("p", "lead", "coeffs", "prec")

    def __init__(self, p: int, lead: int, coeffs, prec: int):
        coeffs = [c % p for c in coeffs][: max(prec - lead, 0)]
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        if k == len(coeffs):
            lead, coeffs = prec, []
        else:
            lead += k
            coeffs = coeffs[k:]
            coeffs += [0] * (prec - lead - len(coeffs))
        self.p = p
        self.lead = lead
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, p, prec):
        return _make(p, prec, (), prec)

    @classmethod
    def from_int(cls, p, n, prec):
        return cls(p, 0, (n,), prec)

    @classmethod
    def monomial(cls, p, k, prec, c=1):
        return cls(p, k, (c,), prec)

    @classmethod
    def from_coeffs(cls, p, coeffs, prec, lead=0):
        return cls(p, lead, coeffs, prec)

    @classmethod
    def from_json(cls, obj):
        return cls(obj["p"], obj["lead"], obj["coeffs"], obj["prec"])

    def to_json(self):
        return {"p": self.p, "lead": self.lead, "coeffs": list(self.coeffs),
                "prec": self.prec}

    # -- basic queries ------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def valuation(self):
        return INF if not self.coeffs else self.lead

    def digit(self, k):
        """Coefficient of ``t**k``; raises if ``k`` is beyond the precision."""
        if k >= self.prec:
            raise PrecisionError(f"digit {k} unknown at precision {self.prec}")
        if k < self.lead:
            return 0
        return self.coeffs[k - self.lead]

    def truncate(self, prec):
        """Forget digits at and beyond ``t**prec``."""
        return TruncSeries(self.p, self.lead, self.coeffs, min(prec, self.prec))

    def with_prec(self, prec):
        """Reinterpret with a different precision (new digits are zero)."""
        return TruncSeries(self.p, self.lead, self.coeffs, prec)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            if other.p != self.p:
                raise ValueError(f"mismatched primes {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return TruncSeries(self.p, 0, (other,), self.prec)
        return NotImplemented

    def __add__(self, other):
        if other.__class__ is not TruncSeries:
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        elif other.p != self.p:
            raise ValueError(f"mismatched primes {self.p} and {other.p}")
        p = self.p
        prec = self.prec if self.prec < other.prec else other.prec
        if not other.coeffs:
            return self if self.prec == prec else self.truncate(prec)
        if not self.coeffs:
            return other if other.prec == prec else other.truncate(prec)
        lead = self.lead if self.lead < other.lead else other.lead
        if lead >= prec:
            return _make(p, prec, (), prec)
        out = [0] * (prec - lead)
        off = self.lead - lead
        for k, c in enumerate(self.coeffs[: max(prec - self.lead, 0)]):
            out[off + k] = c
        off = other.lead - lead
        for k, c in enumerate(other.coeffs[: max(prec - other.lead, 0)]):
            out[off + k] += c
        out = [c % p for c in out]
        if out[0]:
            return _make(p, lead, tuple(out), prec)
        return TruncSeries(p, lead, out, prec)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return _make(p, self.lead, tuple((-c) % p for c in self.coeffs), self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if other.__class__ is not TruncSeries:
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        elif other.p != self.p:
            raise ValueError(f"mismatched primes {self.p} and {other.p}")
        p = self.p
        a, b = self.coeffs, other.coeffs
        prec = min(self.prec + other.lead, other.prec + self.lead)
        if not a or not b:
            return _make(p, prec, (), prec)
        r = min(len(a), len(b))
        if r == 1:
            return _make(p, self.lead + other.lead, ((a[0] * b[0]) % p,), prec)
        # skip trailing zero digits; exact polynomials are common
        la = r
        while a[la - 1] == 0:
            la -= 1
        lb = r
        while b[lb - 1] == 0:
            lb -= 1
        out = [0] * r
        for i in range(la):
            ai = a[i]
            if ai:
                for j in range(min(lb, r - i)):
                    out[i + j] += ai * b[j]
        # F_p has no zero divisors, so the leading digit a0*b0 is nonzero
        return _make(p, self.lead + other.lead, tuple(c % p for c in out), prec)

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a series that is zero to its precision")
        p = self.p
        u = self.coeffs
        r = len(u)
        v0 = pow(u[0], -1, p)
        v = [v0]
        for k in range(1, r):
            s = 0
            for i in range(1, k + 1):
                s += u[i] * v[k - i]
            v.append((-v0 * s) % p)
        return TruncSeries(p, -self.lead, v, -self.lead + r)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return TruncSeries(self.p, 0, (1,), self.prec) if result is None else result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        if not self.coeffs:
            return f"O(t^{self.prec})"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                e = self.lead + k
                mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
                if not mono:
                    terms.append(str(c))
                else:
                    terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) + f" + O(t^{self.prec})"


def _make(p, lead, coeffs, prec):
    # trusted constructor: ``coeffs`` is already canonical
    x = object.__new__(TruncSeries)
    x.p = p
    x.lead = lead
    x.coeffs = coeffs
    x.prec = prec
    return x


def val(x):
    """Valuation of a series; ``inf`` for zero."""
    return x.valuation()


def arith(x, y, op):
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def invert(x):
    return x.inverse()


def normalize(x):
    return TruncSeries(x.p, x.lead, x.coeffs, x.prec)


class LaurentField:
    """Convenience factory for F_p((t)) at a default precision."""

    def __init__(self, p: int, prec: int = 8):
        _check_prime(p)
        self.p = p
        self.prec = prec

    def __call__(self, n):
        if isinstance(n, TruncSeries):
            return n
        return TruncSeries.from_int(self.p, n, self.prec)

    @property
    def zero(self):
        return TruncSeries.zero(self.p, self.prec)

    @property
    def one(self):
        return TruncSeries.from_int(self.p, 1, self.prec)

    @property
    def t(self):
        return TruncSeries.monomial(self.p, 1, self.prec)

    def monomial(self, k, c=1):
        return TruncSeries.monomial(self.p, k, self.prec, c)

    def poly(self, coeffs, lead=0):
        return TruncSeries.from_coeffs(self.p, coeffs, self.prec, lead)

    def random(self, rng, min_val=0, max_val=None, zero_prob=0.0):
        """Random element with valuation in ``[min_val, max_val]``."""
        if zero_prob and rng.random() < zero_prob:
            return self.zero
        if max_val is None:
            max_val = min_val
        v = rng.randint(min_val, max_val)
        n = max(self.prec - v, 0)
        if n == 0:
            return self.zero
        digits = [rng.randrange(1, self.p)] + [rng.randrange(self.p) for _ in range(n - 1)]
        return TruncSeries(self.p, v, digits, self.prec)

"""Exact arithmetic in the dimension symbol d.

Every traced coefficient in this package is a rational function of the
spacetime dimension with integer coefficients.  ``DimRational`` stores a
reduced numerator/denominator pair of integer polynomials (coefficient
tuples, lowest degree first) and supports the handful of field operations
the engine needs, plus evaluation and the d -> infinity limit.

No floating point enters here; the numeric oracle lives elsewhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Union


class ZeroDenominatorError(ZeroDivisionError):
    """Division by a polynomial that is identically zero."""


class DimensionPoleError(ValueError):
    """Evaluation of a rational function at a pole of its denominator."""

    def __init__(self, at, message=None):
        self.at = at
        super().__init__(message or f"pole at d = {at}")


# ---------------------------------------------------------------------------
# integer polynomial helpers (tuples, lowest degree first, no trailing zeros)
# ---------------------------------------------------------------------------

ZERO = (0,)
ONE = (1,)


def ptrim(c: list) -> tuple:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(a, b):
    n = max(len(a), len(b))
    return ptrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def pneg(a):
    return tuple(-x for x in a)


def pmul(a, b):
    if a == ZERO or b == ZERO:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return ptrim(out)


def pscale(a, k: int):
    if k == 0:
        return ZERO
    return tuple(x * k for x in a)


def pcontent(a) -> int:
    g = 0
    for x in a:
        g = gcd(g, abs(x))
    return g or 1


def pdegree(a) -> int:
    return len(a) - 1 if a != ZERO else -1


def peval(a, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pderive(a):
    if len(a) == 1:
        return ZERO
    return ptrim([i * a[i] for i in range(1, len(a))])


def pdivmod_exact(a, b):
    """Polynomial divmod over Q; returns (quotient, remainder) as Fraction tuples."""
    if b == ZERO:
        raise ZeroDenominatorError("polynomial division by zero")
    rem = [Fraction(x) for x in a]
    qlen = len(a) - len(b) + 1
    if qlen <= 0:
        return (ZERO, tuple(rem))
    quo = [Fraction(0)] * qlen
    blc = Fraction(b[-1])
    for k in range(qlen - 1, -1, -1):
        if len(rem) < len(b) + k:
            continue
        coef = rem[len(b) + k - 1] / blc
        quo[k] = coef
        if coef:
            for j, y in enumerate(b):
                rem[k + j] -= coef * y
        rem.pop()
    while len(rem) > 1 and rem[-1] == 0:
        rem.pop()
    return (tuple(quo), tuple(rem))


def pgcd(a, b):
    """Monic gcd over Q, returned as a primitive integer tuple."""
    fa, fb = a, b
    if fa == ZERO:
        g = fb
    elif fb == ZERO:
        g = fa
    else:
        x = tuple(Fraction(c) for c in fa)
        y = tuple(Fraction(c) for c in fb)
        while y != ZERO and any(y):
            _, r = pdivmod_exact(x, y)
            x, y = y, r if any(r) else ZERO
        g = x
    if g == ZERO:
        return ZERO
    # clear denominators, make primitive with positive leading coefficient
    den = 1
    for c in g:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ig = [int(Fraction(c) * den) for c in g]
    cont = 0
    for c in ig:
        cont = gcd(cont, abs(c))
    cont = cont or 1
    ig = [c // cont for c in ig]
    if ig[-1] < 0:
        ig = [-c for c in ig]
    return ptrim(ig)


def psyndiv(a, r: Fraction):
    """Quotient of a by (x - r), assuming r is a root (remainder discarded)."""
    n = len(a)
    quo = [Fraction(0)] * (n - 1)
    carry = Fraction(a[-1])
    for i in range(n - 2, -1, -1):
        quo[i] = carry
        carry = Fraction(a[i]) + r * carry
    return tuple(quo)


def pdiv_exact_int(a, b):
    """Exact division of integer polynomials (raises if not exact)."""
    q, r = pdivmod_exact(a, b)
    if any(r):
        raise ValueError("inexact polynomial division")
    out = []
    for c in q:
        f = Fraction(c)
        if f.denominator != 1:
            raise ValueError("inexact polynomial division")
        out.append(int(f))
    return ptrim(out or [0])


Number = Union[int, Fraction, "DimRational"]


class DimRational:
    """A rational function of the dimension symbol d with integer coefficients.

    Invariants: numerator and denominator are coprime, the denominator has a
    positive leading coefficient, and the pair carries no common integer
    content.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE, _normalized=False):
        if isinstance(num, int):
            num = (num,)
        if isinstance(den, int):
            den = (den,)
        num = ptrim(list(num))
        den = ptrim(list(den))
        if den == ZERO:
            raise ZeroDenominatorError("zero denominator polynomial")
        if not _normalized:
            num, den = self._reduce(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _reduce(num, den):
        if num == ZERO:
            return ZERO, ONE
        g = pgcd(num, den)
        if pdegree(g) > 0 or g != ONE:
            num = pdiv_exact_int(num, g)
            den = pdiv_exact_int(den, g)
        c = gcd(pcontent(num), pcontent(den))
        if c > 1:
            num = tuple(x // c for x in num)
            den = tuple(x // c for x in den)
        if den[-1] < 0:
            num = pneg(num)
            den = pneg(den)
        return num, den

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_fraction(f: Fraction) -> "DimRational":
        return DimRational((f.numerator,), (f.denominator,), _normalized=True)

    @staticmethod
    def coerce(x: Number) -> "DimRational":
        if isinstance(x, DimRational):
            return x
        if isinstance(x, int):
            return DimRational((x,), ONE, _normalized=True)
        if isinstance(x, Fraction):
            return DimRational.from_fraction(x)
        raise TypeError(f"cannot coerce {x!r} to DimRational")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num == ZERO

    def is_constant(self) -> bool:
        return len(self.num) == 1 and len(self.den) == 1

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return Fraction(self.num[0], self.den[0])

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = DimRational.coerce(other)
        if len(self.num) == 1 == len(self.den) and len(o.num) == 1 == len(o.den):
            a, b, c, d = self.num[0], self.den[0], o.num[0], o.den[0]
            n, m = a * d + c * b, b * d
            g = gcd(abs(n), m) or 1
            return DimRational((n // g,), (m // g,), _normalized=True)
        num = padd(pmul(self.num, o.den), pmul(o.num, self.den))
        return DimRational(num, pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return DimRational(pneg(self.num), self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-DimRational.coerce(other))

    def __rsub__(self, other):
        return DimRational.coerce(other) + (-self)

    def __mul__(self, other):
        o = DimRational.coerce(other)
        if len(self.num) == 1 == len(self.den) and len(o.num) == 1 == len(o.den):
            n, m = self.num[0] * o.num[0], self.den[0] * o.den[0]
            if n == 0:
                return DR_ZERO
            g = gcd(abs(n), m) or 1
            n, m = n // g, m // g
            if m < 0:
                n, m = -n, -m
            return DimRational((n,), (m,), _normalized=True)
        return DimRational(pmul(self.num, o.num), pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = DimRational.coerce(other)
        if o.num == ZERO:
            raise ZeroDenominatorError("division by zero rational function")
        return DimRational(pmul(self.num, o.den), pmul(self.den, o.num))

    def __rtruediv__(self, other):
        return DimRational.coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, DimRational)):
            o = DimRational.coerce(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return self.num != ZERO

    # -- analysis -----------------------------------------------------------

    def eval_at(self, d0) -> Fraction:
        d0 = Fraction(d0)
        den = peval(self.den, d0)
        if den == 0:
            num = peval(self.num, d0)
            raise DimensionPoleError(d0, f"{'0/0' if num == 0 else 'pole'} at d = {d0}")
        return peval(self.num, d0) / den

    def limit_at_infinity(self):
        """Limit as d -> infinity: a Fraction, or None if divergent."""
        dn, dd = pdegree(self.num), pdegree(self.den)
        if self.num == ZERO or dn < dd:
            return Fraction(0)
        if dn == dd:
            return Fraction(self.num[-1], self.den[-1])
        return None

    def derivative(self) -> "DimRational":
        num = padd(pmul(pderive(self.num), self.den), pneg(pmul(self.num, pderive(self.den))))
        return DimRational(num, pmul(self.den, self.den))

    def pole_order_at(self, d0) -> int:
        """Multiplicity of (d - d0) in the reduced denominator."""
        d0 = Fraction(d0)
        k, den = 0, tuple(Fraction(c) for c in self.den)
        while len(den) > 1 and peval(den, d0) == 0:
            den = psyndiv(den, d0)
            k += 1
        return k

    # -- formatting ---------------------------------------------------------

    @staticmethod
    def _poly_str(p) -> str:
        if p == ZERO:
            return "0"
        parts = []
        for i in range(len(p) - 1, -1, -1):
            c = p[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c:+d}")
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                var = "d" if i == 1 else f"d^{i}"
                parts.append(("+" if c > 0 else "-") + mag + var)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    def __repr__(self):
        return f"DimRational({self})"

    def __str__(self):
        ns = self._poly_str(self.num)
        if self.den == ONE:
            return ns
        ds = self._poly_str(self.den)
        if len(self.num) > 1 or self.num[0] < 0:
            ns = f"({ns})"
        if len(self.den) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"


DR_ZERO = DimRational((0,), ONE, _normalized=True)
DR_ONE = DimRational((1,), ONE, _normalized=True)
D = DimRational((0, 1), ONE, _normalized=True)  # the dimension symbol itself


def dr(p, q: int = 1) -> DimRational:
    """Shorthand for the constant p/q."""
    return DimRational.coerce(Fraction(p, q))

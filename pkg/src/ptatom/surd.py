"""Exact numbers of the form a + b*sqrt(d) with rational a, b."""

from __future__ import annotations

import re
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import gcd, isqrt
from numbers import Rational

_DECIMAL_PRECISION = 60


@lru_cache(maxsize=4096)
def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n = s*s*f`` and ``f`` squarefree.

    Primes up to the cube root of ``n`` are stripped by trial division; what is
    left has at most two prime factors, so it is squarefree unless it is a
    perfect square.
    """
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 0
    s, f = 1, 1
    rest = n
    p = 2
    while p * p * p <= n and rest > 1:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        s *= p ** (e // 2)
        f *= p ** (e % 2)
        p += 1 if p == 2 else 2
    r = isqrt(rest)
    if r * r == rest:
        s *= r
    else:
        f *= rest
    return s, f


def _fraction(x: Rational | int | str) -> Fraction:
    return Fraction(x)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sign_of_sum(a: Fraction, terms: list[tuple[Fraction, int]]) -> int:
    """Exact sign of ``a + sum(b * sqrt(d))`` for at most two surd terms.

    Uses repeated squaring so only rational comparisons are needed.
    """
    terms = [(Fraction(b), d) for b, d in terms if b and d]
    if not terms:
        return _sign(Fraction(a))
    if len(terms) == 1:
        (b, d), = terms
        sa, sb = _sign(a), _sign(b)
        if sa == 0 or sa == sb:
            return sb
        return sa * _sign(a * a - b * b * d)
    if len(terms) > 2:
        raise ValueError("at most two surd terms supported")
    (b, p), (c, q) = terms
    if p == q:
        return sign_of_sum(a, [(b + c, p)])
    # Sign of X = b*sqrt(p) + c*sqrt(q).
    if _sign(b) == _sign(c):
        sx = _sign(b)
    else:
        sx = _sign(b) * _sign(b * b * p - c * c * q)
    sa = _sign(a)
    if sx == 0:
        return sa
    if sa == 0 or sa == sx:
        return sx
    # Opposite signs: compare a^2 with X^2 = b^2 p + c^2 q + 2bc sqrt(pq).
    diff = sign_of_sum(a * a - b * b * p - c * c * q, [(-2 * b * c, p * q)])
    return sa if diff > 0 else (sx if diff < 0 else 0)


@total_ordering
class QuadraticSurd:
    """Exact ``a + b*sqrt(d)``, ``d`` squarefree; ``d == 0`` means rational.

    Arithmetic between surds with different nonzero radicands raises
    ``ValueError``; ordering works across radicands.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Rational | int | str = 0, b: Rational | int | str = 0, d: int = 0) -> None:
        a, b = _fraction(a), _fraction(b)
        if d < 0:
            raise ValueError("negative radicand")
        if b and d:
            s, f = squarefree_decomposition(d)
            b *= s
            d = f
            if d == 1:
                a, b, d = a + b, Fraction(0), 0
        else:
            b, d = Fraction(0), 0
        self.a, self.b, self.d = a, b, d

    @classmethod
    def coerce(cls, x: QuadraticSurd | Rational | int) -> QuadraticSurd:
        if isinstance(x, QuadraticSurd):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot interpret {x!r} as a quadratic surd")

    @classmethod
    def sqrt(cls, x: Rational | int) -> QuadraticSurd:
        """Exact square root of a nonnegative rational."""
        x = _fraction(x)
        if x < 0:
            raise ValueError("square root of a negative number")
        s1, f1 = squarefree_decomposition(x.numerator)
        s2, f2 = squarefree_decomposition(x.denominator)
        # sqrt(f1/f2) = sqrt(f1 f2)/f2, and f1 f2 = g^2 (f1/g)(f2/g) with g = gcd.
        g = gcd(f1, f2)
        return cls(0, Fraction(s1 * g, s2 * f2), (f1 // g) * (f2 // g))

    def is_rational(self) -> bool:
        return self.d == 0

    def rational(self) -> Fraction:
        if self.d:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> QuadraticSurd:
        return QuadraticSurd(self.a, -self.b, self.d)

    def _common(self, other: QuadraticSurd) -> int:
        if self.d and other.d and self.d != other.d:
            raise ValueError(f"incompatible radicands {self.d} and {other.d}")
        return self.d or other.d

    def __add__(self, other: QuadraticSurd | Rational | int) -> QuadraticSurd:
        try:
            o = QuadraticSurd.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticSurd(self.a + o.a, self.b + o.b, self._common(o))

    __radd__ = __add__

    def __neg__(self) -> QuadraticSurd:
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other: QuadraticSurd | Rational | int) -> QuadraticSurd:
        try:
            o = QuadraticSurd.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Rational | int) -> QuadraticSurd:
        return (-self) + other

    def __mul__(self, other: QuadraticSurd | Rational | int) -> QuadraticSurd:
        try:
            o = QuadraticSurd.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common(o)
        return QuadraticSurd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other: QuadraticSurd | Rational | int) -> QuadraticSurd:
        try:
            o = QuadraticSurd.coerce(other)
        except TypeError:
            return NotImplemented
        denom = o.a * o.a - o.b * o.b * o.d
        if denom == 0:
            raise ZeroDivisionError("division by zero surd")
        return (self * o.conjugate()).scale(1 / denom)

    def __rtruediv__(self, other: Rational | int) -> QuadraticSurd:
        return QuadraticSurd.coerce(other) / self

    def scale(self, k: Rational | int) -> QuadraticSurd:
        return QuadraticSurd(self.a * k, self.b * k, self.d)

    def sign(self) -> int:
        return sign_of_sum(self.a, [(self.b, self.d)])

    def __abs__(self) -> QuadraticSurd:
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadraticSurd(other)
        if not isinstance(other, QuadraticSurd):
            return NotImplemented
        return (self.a, self.b, self.d) == (other.a, other.b, other.d)

    def __lt__(self, other: QuadraticSurd | Rational | int) -> bool:
        o = QuadraticSurd.coerce(other)
        return sign_of_sum(self.a - o.a, [(self.b, self.d), (-o.b, o.d)]) < 0

    def __hash__(self) -> int:
        return hash(self.a) if not self.d else hash((self.a, self.b, self.d))

    def to_decimal(self, precision: int = _DECIMAL_PRECISION) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = precision
            value = Decimal(self.a.numerator) / Decimal(self.a.denominator)
            if self.d:
                value += Decimal(self.b.numerator) / Decimal(self.b.denominator) * Decimal(self.d).sqrt()
            return +value

    def __float__(self) -> float:
        return float(self.to_decimal())

    def __repr__(self) -> str:
        return f"QuadraticSurd({self.a!s}, {self.b!s}, {self.d})"

    def __str__(self) -> str:
        if not self.d:
            return str(self.a)
        surd = f"{abs(self.b)}*sqrt({self.d})"
        if not self.a:
            return surd if self.b > 0 else f"-{surd}"
        return f"{self.a} {'+' if self.b > 0 else '-'} {surd}"

    _PATTERN = re.compile(
        r"^\s*(?:(?P<a>-?\d+(?:/\d+)?)\s*(?P<op>[+-])\s*)?"
        r"(?P<neg>-)?(?P<b>\d+(?:/\d+)?)\*sqrt\((?P<d>\d+)\)\s*$"
    )

    @classmethod
    def parse(cls, text: str) -> QuadraticSurd:
        """Inverse of ``str``: ``"p/q"``, ``"r/s*sqrt(d)"`` or ``"p/q + r/s*sqrt(d)"``."""
        t = text.strip()
        if re.fullmatch(r"-?\d+(?:/\d+)?", t):
            return cls(Fraction(t))
        m = cls._PATTERN.match(t)
        if not m:
            raise ValueError(f"cannot parse surd {text!r}")
        b = Fraction(m["b"])
        if m["neg"]:
            b = -b
        if m["op"] == "-":
            b = -b
        a = Fraction(m["a"]) if m["a"] else Fraction(0)
        return cls(a, b, int(m["d"]))


class ScaledSurd:
    """``sqrt(root) * (a + b*sqrt(d))``, used for resonance coefficients."""

    __slots__ = ("root", "surd")

    def __init__(self, root: int, surd: QuadraticSurd) -> None:
        s, f = squarefree_decomposition(root)
        if s == 0:
            root, surd = 1, QuadraticSurd(0)
        else:
            root, surd = f, surd.scale(s)
        self.root, self.surd = root, surd

    def sign(self) -> int:
        return self.surd.sign()

    def square(self) -> QuadraticSurd:
        return (self.surd * self.surd).scale(self.root)

    def to_decimal(self, precision: int = _DECIMAL_PRECISION) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = precision
            return +(Decimal(self.root).sqrt() * self.surd.to_decimal(precision))

    def __float__(self) -> float:
        return float(self.to_decimal())

    def __neg__(self) -> ScaledSurd:
        return ScaledSurd(self.root, -self.surd)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScaledSurd):
            return NotImplemented
        return (self.root, self.surd) == (other.root, other.surd)

    def __hash__(self) -> int:
        return hash((self.root, self.surd))

    def __repr__(self) -> str:
        return f"ScaledSurd({self.root}, {self.surd!r})"

    def __str__(self) -> str:
        if self.root == 1:
            return str(self.surd)
        return f"sqrt({self.root})*({self.surd})"

"""Two-electron repulsion integrals over the hydrogenic 1s, 2s and 2p orbitals.

Symbols ``(ab|cd)`` use chemists' notation with spatial labels
1=1s, 2=2s, 3=2p3, 4=2p1, 5=2p2.  All integrals are linear in the nuclear
charge Z; the table stores the coefficient of Z.

Three independent sources of the values live here:

* ``INTEGRAL_TABLE``: the eleven coefficients as literal fractions;
* ``derived_value``: exact evaluation from the Fourier transforms of orbital
  products, reducing the radial integral by partial fractions;
* ``oracle_value``: the same Fourier integrand integrated numerically.
"""

from __future__ import annotations

import csv
import io
import math
import re
import warnings
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import NamedTuple

from scipy import integrate

P_LABELS = (3, 4, 5)
# Cartesian axis index (0, 1, 2 for k1, k2, k3) of each p label.
_AXIS = {3: 2, 4: 0, 5: 1}


class UnknownIntegralError(KeyError):
    """An integral symbol outside the closed n <= 2 table was requested."""


class QuadratureError(RuntimeError):
    """The numerical oracle failed to reach its accuracy target."""


class IntegralSymbol(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    def __str__(self) -> str:
        return f"({self.a}{self.b}|{self.c}{self.d})"

    @classmethod
    def parse(cls, text: str) -> IntegralSymbol:
        m = re.fullmatch(r"\s*\(([1-5])([1-5])\|([1-5])([1-5])\)\s*", text)
        if not m:
            raise ValueError(f"cannot parse integral symbol {text!r}")
        return cls(*(int(g) for g in m.groups()))

    def variants(self) -> Iterator[IntegralSymbol]:
        """All symbols related by the real-orbital symmetries and p-axis relabelings."""
        a, b, c, d = self
        for perm in permutations(P_LABELS):
            relabel = dict(zip(P_LABELS, perm))
            w, x, y, z = (relabel.get(v, v) for v in (a, b, c, d))
            for first, second in (((w, x), (y, z)), ((y, z), (w, x))):
                for p, q in (first, first[::-1]):
                    for r, s in (second, second[::-1]):
                        yield IntegralSymbol(p, q, r, s)

    def canonical(self) -> IntegralSymbol:
        """Lexicographically smallest equivalent, displayed in exchange form.

        The minimum of an exchange class has the shape ``(ab|ab)``; it is
        rewritten as the equal ``(ab|ba)`` so exchange integrals print in the
        customary way.
        """
        m = min(self.variants())
        if m.a != m.b and (m.a, m.b) == (m.c, m.d):
            return IntegralSymbol(m.a, m.b, m.b, m.a)
        return m

    def vanishes_by_symmetry(self) -> bool:
        """True when the orbital product is odd under reflection of some axis."""
        return any(sum(1 for v in self if v == p) % 2 for p in P_LABELS)


_TABLE_ENTRIES = (
    ("(11|11)", Fraction(5, 8)),
    ("(11|22)", Fraction(17, 81)),
    ("(12|21)", Fraction(16, 729)),
    ("(22|22)", Fraction(77, 512)),
    ("(11|33)", Fraction(59, 243)),
    ("(13|31)", Fraction(112, 6561)),
    ("(22|33)", Fraction(83, 512)),
    ("(23|32)", Fraction(15, 512)),
    ("(33|33)", Fraction(501, 2560)),
    ("(33|44)", Fraction(447, 2560)),
    ("(34|43)", Fraction(27, 2560)),
)

INTEGRAL_TABLE: dict[IntegralSymbol, Fraction] = {
    IntegralSymbol.parse(s): v for s, v in _TABLE_ENTRIES
}

# Order used when printing symbolic expressions.
DISPLAY_ORDER: tuple[IntegralSymbol, ...] = tuple(
    IntegralSymbol.parse(s)
    for s in (
        "(11|11)", "(11|22)", "(12|21)", "(11|33)", "(13|31)", "(22|22)",
        "(22|33)", "(23|32)", "(33|33)", "(33|44)", "(34|43)",
    )
)


def canonical_symbol(sym: IntegralSymbol | str) -> IntegralSymbol:
    if isinstance(sym, str):
        sym = IntegralSymbol.parse(sym)
    return IntegralSymbol(*sym).canonical()


def is_exchange(sym: IntegralSymbol) -> bool:
    s = canonical_symbol(sym)
    return s.a != s.b and (s.a, s.b) == (s.d, s.c)


def exact_value(sym: IntegralSymbol | str, Z: Fraction | int = 1) -> Fraction:
    """Exact value of ``sym`` at nuclear charge ``Z``."""
    if isinstance(sym, str):
        sym = IntegralSymbol.parse(sym)
    if sym.vanishes_by_symmetry():
        return Fraction(0)
    c = canonical_symbol(sym)
    try:
        return INTEGRAL_TABLE[c] * Fraction(Z)
    except KeyError:
        raise UnknownIntegralError(f"{sym} (canonical {c}) is not in the n<=2 integral table") from None


# ---------------------------------------------------------------------------
# Fourier transforms of orbital products.
#
# Each transform is a sum of terms
#     coeff * sqrt2**root2 * i**ipow * Z**zpow * k^monomial / ((lam*Z)^2 + |k|^2)**power
# with ``monomial`` an exponent triple on (k1, k2, k3).


@dataclass(frozen=True)
class FourierTerm:
    coeff: Fraction
    root2: int
    ipow: int
    zpow: int
    monomial: tuple[int, int, int]
    lam: Fraction
    power: int

    def evaluate(self, k: tuple[float, float, float], Z: float) -> complex:
        k2 = k[0] ** 2 + k[1] ** 2 + k[2] ** 2
        mono = k[0] ** self.monomial[0] * k[1] ** self.monomial[1] * k[2] ** self.monomial[2]
        scale = float(self.coeff) * math.sqrt(2) ** self.root2 * 1j ** self.ipow
        return scale * Z ** self.zpow * mono / ((float(self.lam) * Z) ** 2 + k2) ** self.power


@dataclass(frozen=True)
class FourierProduct:
    """Closed-form Fourier transform of a product of two orbitals."""

    pair: tuple[int, int]
    terms: tuple[FourierTerm, ...]

    def evaluate(self, k: tuple[float, float, float], Z: float = 1.0) -> complex:
        return sum((t.evaluate(k, Z) for t in self.terms), 0j)


def _unit(axis: int, power: int = 1) -> tuple[int, int, int]:
    m = [0, 0, 0]
    m[axis] += power
    return tuple(m)  # type: ignore[return-value]


def _pair_unit(ax1: int, ax2: int) -> tuple[int, int, int]:
    m = [0, 0, 0]
    m[ax1] += 1
    m[ax2] += 1
    return tuple(m)  # type: ignore[return-value]


@lru_cache(maxsize=None)
def fourier_product(pair: tuple[int, int]) -> FourierProduct:
    """Fourier transform of ``phi_a * phi_b`` for spatial labels ``(a, b)``."""
    a, b = sorted(pair)
    T = FourierTerm
    F = Fraction
    one, two, three_halves = F(1), F(2), F(3, 2)
    none = (0, 0, 0)
    if (a, b) == (1, 1):
        terms = (T(F(16), 0, 0, 4, none, two, 2),)
    elif (a, b) == (2, 2):
        terms = (
            T(F(2), 0, 0, 4, none, one, 2),
            T(F(-7), 0, 0, 6, none, one, 3),
            T(F(6), 0, 0, 8, none, one, 4),
        )
    elif (a, b) == (1, 2):
        terms = (
            T(F(4), 1, 0, 4, none, three_halves, 2),
            T(F(-9), 1, 0, 6, none, three_halves, 3),
        )
    elif a == 1:
        terms = (T(F(-6), 1, 1, 5, _unit(_AXIS[b]), three_halves, 3),)
    elif a == 2:
        j = _unit(_AXIS[b])
        terms = (T(F(6), 0, 1, 7, j, one, 4), T(F(-3), 0, 1, 5, j, one, 3))
    elif a == b:
        terms = (
            T(F(1), 0, 0, 6, none, one, 3),
            T(F(-6), 0, 0, 6, _unit(_AXIS[a], 2), one, 4),
        )
    else:
        terms = (T(F(-6), 0, 0, 6, _pair_unit(_AXIS[a], _AXIS[b]), one, 4),)
    return FourierProduct((a, b), terms)


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def sphere_moment(monomial: tuple[int, int, int]) -> Fraction:
    """``(1/4pi) * integral of x^a y^b z^c`` over the unit sphere."""
    if any(e % 2 for e in monomial):
        return Fraction(0)
    num = math.prod(_double_factorial(e - 1) for e in monomial)
    return Fraction(num, _double_factorial(sum(monomial) + 1))


@dataclass(frozen=True)
class RadialTerm:
    """``coeff * Z**zpow * k**kpow / ((l1 Z)^2+k^2)^n1 / ((l2 Z)^2+k^2)^n2``."""

    coeff: Fraction
    zpow: int
    kpow: int
    lam1: Fraction
    n1: int
    lam2: Fraction
    n2: int


def radial_integrand(sym: IntegralSymbol) -> list[RadialTerm]:
    """Radial terms of ``(2/pi) * integral_0^inf R(k) dk`` representing ``sym``.

    The angular integration over k is done exactly with sphere moments; the
    prefactor ``1/(2 pi^2)`` times the ``4 pi`` of the sphere gives ``2/pi``.
    """
    left = fourier_product((sym.a, sym.b))
    right = fourier_product((sym.c, sym.d))
    out = []
    for s in left.terms:
        for t in right.terms:
            mono = tuple(x + y for x, y in zip(s.monomial, t.monomial))
            moment = sphere_moment(mono)  # type: ignore[arg-type]
            if not moment:
                continue
            root2 = s.root2 + t.root2
            if root2 % 2:
                raise UnknownIntegralError(f"{sym} has an irrational Fourier weight")
            # Complex conjugate on the left factor.
            ipow = (t.ipow - s.ipow) % 4
            if ipow % 2:
                raise UnknownIntegralError(f"{sym} has an imaginary Fourier weight")
            sign = -1 if ipow == 2 else 1
            coeff = s.coeff * t.coeff * 2 ** (root2 // 2) * sign * moment
            out.append(RadialTerm(coeff, s.zpow + t.zpow, sum(mono), s.lam, s.power, t.lam, t.power))
    return out


def _inverse_power_integral(A: Fraction, m: int) -> Fraction:
    """``(2/pi) * integral_0^inf dk / (A + k^2)^m`` for a perfect-square ``A = a^2``."""
    a = Fraction(math.isqrt(A.numerator), math.isqrt(A.denominator))
    if a * a != A:
        raise ValueError(f"{A} is not a rational square")
    return Fraction(_double_factorial(2 * m - 3), _double_factorial(2 * m - 2)) / a ** (2 * m - 1)


def _partial_fractions(j: int, A: Fraction, n: int, B: Fraction, p: int) -> dict[tuple[Fraction, int], Fraction]:
    """Decompose ``u^j / ((u+A)^n (u+B)^p)`` into ``sum c / (u+X)^m``.

    Keys are ``(X, m)``.  Requires ``j < n + p``.
    """
    if j >= n + p:
        raise ValueError("integrand does not decay")
    out: dict[tuple[Fraction, int], Fraction] = {}
    if A == B:
        n, p = n + p, 0
    poles = [(A, n, B, p)] if p == 0 else [(A, n, B, p), (B, p, A, n)]
    for X, nx, Y, py in poles:
        # Around t = u + X = 0: u^j = (t - X)^j, 1/(t + Y - X)^py expanded in t.
        delta = Y - X
        for m in range(nx):  # coefficient of t^m gives 1/t^(nx-m)
            c = Fraction(0)
            for r in range(min(j, m) + 1):
                s = m - r
                num = math.comb(j, r) * (-X) ** (j - r)
                if py:
                    series = (-1) ** s * math.comb(py + s - 1, s) / delta ** (py + s)
                else:
                    series = Fraction(1) if s == 0 else Fraction(0)
                c += num * series
            if c:
                out[(X, nx - m)] = out.get((X, nx - m), Fraction(0)) + c
    return out


def derived_value(sym: IntegralSymbol | str, Z: Fraction | int = 1) -> Fraction:
    """Exact value obtained by integrating the Fourier representation in closed form."""
    if isinstance(sym, str):
        sym = IntegralSymbol.parse(sym)
    Z = Fraction(Z)
    total = Fraction(0)
    for t in radial_integrand(sym):
        if t.kpow % 2:
            raise ValueError("odd radial power")
        A, B = (t.lam1 * Z) ** 2, (t.lam2 * Z) ** 2
        decomposition = _partial_fractions(t.kpow // 2, A, t.n1, B, t.n2)
        radial = sum(
            (c * _inverse_power_integral(X, m) for (X, m), c in decomposition.items()), Fraction(0)
        )
        total += t.coeff * Z ** t.zpow * radial
    return total


def oracle_value(sym: IntegralSymbol | str, Z: float = 1.0, rel_tol: float = 1e-10) -> float:
    """Numerical value from one adaptive radial quadrature.

    Uses the substitution ``k = Z t / (1 - t)`` on ``t`` in [0, 1).  Raises
    ``QuadratureError`` when the estimated relative error exceeds ``rel_tol``.
    """
    if isinstance(sym, str):
        sym = IntegralSymbol.parse(sym)
    Z = float(Z)
    terms = [
        (float(t.coeff) * Z ** t.zpow, t.kpow, (float(t.lam1) * Z) ** 2, t.n1, (float(t.lam2) * Z) ** 2, t.n2)
        for t in radial_integrand(sym)
    ]
    if not terms:
        return 0.0

    def integrand(t: float) -> float:
        if t >= 1.0:
            return 0.0
        k = Z * t / (1.0 - t)
        jac = Z / (1.0 - t) ** 2
        k2 = k * k
        return jac * sum(c * k ** kp / ((A + k2) ** n1 * (B + k2) ** n2) for c, kp, A, n1, B, n2 in terms)

    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, err = integrate.quad(integrand, 0.0, 1.0, epsabs=0.0, epsrel=1e-13, limit=500)
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(f"quadrature for {sym} did not converge: {exc}") from None
    value *= 2.0 / math.pi
    err *= 2.0 / math.pi
    if value and err > rel_tol * abs(value):
        raise QuadratureError(f"quadrature for {sym}: error estimate {err:.3e} exceeds target")
    return value


def table_csv(Z: Fraction | int = 1) -> str:
    """CSV with columns ``symbol,value,decimal`` in table order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["symbol", "value", "decimal"])
    for sym in INTEGRAL_TABLE:
        v = exact_value(sym, Z)
        writer.writerow([str(sym), str(v), f"{float(v):.10f}"])
    return buf.getvalue()

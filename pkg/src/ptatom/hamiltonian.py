"""Projected Hamiltonian on the ground space: Slater-Condon elements and sector blocks."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .determinant_algebra import (
    DeterminantExpansion,
    annihilate,
    create,
    electron_count,
    is_up,
    occupied,
    spatial,
)
from .integrals import DISPLAY_ORDER, IntegralSymbol, exact_value
from .surd import QuadraticSurd, squarefree_decomposition
from .symmetry import (
    SymmetrySector,
    TermSymbol,
    check_electron_count,
    ground_space_basis,
    representative_sectors,
)

_DISPLAY_RANK = {s: i for i, s in enumerate(DISPLAY_ORDER)}


def _sort_key(sym: IntegralSymbol) -> tuple[int, IntegralSymbol]:
    return (_DISPLAY_RANK.get(sym, len(_DISPLAY_RANK)), sym)


def _coefficient_text(c: Fraction) -> str:
    return "" if c == 1 else str(c)


class SymbolicElement:
    """``sqrt(root) * sum_s coeff_s * (s)`` over canonical integral symbols.

    ``root`` is a squarefree positive integer; it is 1 for every element
    except normalized off-diagonal entries of two-dimensional blocks.
    """

    __slots__ = ("terms", "root")

    def __init__(self, terms: dict[IntegralSymbol, Fraction] | None = None, root: int = 1) -> None:
        acc: dict[IntegralSymbol, Fraction] = {}
        for sym, c in (terms or {}).items():
            if sym.vanishes_by_symmetry():
                continue
            key = sym.canonical()
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        self.terms = {s: c for s, c in sorted(acc.items(), key=lambda kv: _sort_key(kv[0])) if c}
        if root < 1:
            raise ValueError("root must be a positive integer")
        s, f = squarefree_decomposition(root)
        if s != 1:
            self.terms = {k: v * s for k, v in self.terms.items()}
        self.root = f if self.terms else 1

    @classmethod
    def symbol(cls, sym: IntegralSymbol | str, coeff: Fraction | int = 1) -> SymbolicElement:
        if isinstance(sym, str):
            sym = IntegralSymbol.parse(sym)
        return cls({sym: Fraction(coeff)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check_root(self, other: SymbolicElement) -> int:
        if self.terms and other.terms and self.root != other.root:
            raise ValueError("cannot add elements with different square-root factors")
        return self.root if self.terms else other.root

    def __add__(self, other: SymbolicElement) -> SymbolicElement:
        if not isinstance(other, SymbolicElement):
            return NotImplemented
        root = self._check_root(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return SymbolicElement(acc, root)

    def __neg__(self) -> SymbolicElement:
        return SymbolicElement({k: -v for k, v in self.terms.items()}, self.root)

    def __sub__(self, other: SymbolicElement) -> SymbolicElement:
        if not isinstance(other, SymbolicElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: Fraction | int) -> SymbolicElement:
        return SymbolicElement({s: v * k for s, v in self.terms.items()}, self.root)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, SymbolicElement):
            return NotImplemented
        return self.terms == other.terms and self.root == other.root

    def __hash__(self) -> int:
        return hash((frozenset(self.terms.items()), self.root))

    def rational_part(self, Z: Fraction | int = 1) -> Fraction:
        """``sum coeff * value`` without the square-root factor."""
        return sum((c * exact_value(s, Z) for s, c in self.terms.items()), Fraction(0))

    def evaluate(self, Z: Fraction | int = 1) -> QuadraticSurd:
        return QuadraticSurd(0, self.rational_part(Z), self.root) if self.root != 1 else QuadraticSurd(self.rational_part(Z))

    def _body(self) -> str:
        parts = []
        for i, (sym, c) in enumerate(self.terms.items()):
            sign = "-" if c < 0 else "+"
            text = f"{_coefficient_text(abs(c))}{sym}"
            if i == 0:
                parts.append(text if c > 0 else f"-{text}")
            else:
                parts.append(f" {sign} {text}")
        return "".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        if self.root == 1:
            return self._body()
        if len(self.terms) == 1:
            (sym, c), = self.terms.items()
            sign = "-" if c < 0 else ""
            return f"{sign}{_coefficient_text(abs(c))}sqrt({self.root}){sym}"
        return f"sqrt({self.root})[{self._body()}]"

    def __repr__(self) -> str:
        return f"SymbolicElement({str(self)!r})"

    _TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*(\([1-5]{2}\|[1-5]{2}\))")

    @classmethod
    def parse(cls, text: str) -> SymbolicElement:
        """Inverse of ``str``."""
        t = text.strip()
        if t == "0":
            return cls()
        root = 1
        outer = Fraction(1)
        m = re.fullmatch(r"(-)?(\d+(?:/\d+)?)?sqrt\((\d+)\)(.*)", t)
        if m:
            neg, coeff, r, rest = m.groups()
            root = int(r)
            outer = Fraction(coeff) if coeff else Fraction(1)
            if neg:
                outer = -outer
            rest = rest.strip()
            t = rest[1:-1] if rest.startswith("[") and rest.endswith("]") else rest
        terms: dict[IntegralSymbol, Fraction] = {}
        pos = 0
        while pos < len(t):
            mt = cls._TERM.match(t, pos)
            if not mt or mt.end() == pos:
                raise ValueError(f"cannot parse symbolic element {text!r}")
            sign, coeff, sym = mt.groups()
            c = Fraction(coeff) if coeff else Fraction(1)
            if sign == "-":
                c = -c
            key = IntegralSymbol.parse(sym)
            terms[key] = terms.get(key, Fraction(0)) + c * outer
            pos = mt.end()
        return cls(terms, root)


def _spin_symbol(a: int, b: int, c: int, d: int) -> IntegralSymbol | None:
    """Spatial symbol of the spin-orbital integral ``[ab|cd]``, or None if spins forbid it."""
    if is_up(a) != is_up(b) or is_up(c) != is_up(d):
        return None
    return IntegralSymbol(spatial(a) + 1, spatial(b) + 1, spatial(c) + 1, spatial(d) + 1)


def _accumulate(acc: dict[IntegralSymbol, Fraction], sym: IntegralSymbol | None, c: int) -> None:
    if sym is not None:
        acc[sym] = acc.get(sym, Fraction(0)) + c


@lru_cache(maxsize=1 << 16)
def slater_condon(d1: int, d2: int) -> SymbolicElement:
    """``<d1|V_ee|d2>`` for determinants given as occupation masks."""
    if electron_count(d1) != electron_count(d2):
        raise ValueError("determinants have different electron counts")
    only1 = occupied(d1 & ~d2)
    only2 = occupied(d2 & ~d1)
    acc: dict[IntegralSymbol, Fraction] = {}
    if not only1:
        occ = occupied(d1)
        for x, i in enumerate(occ):
            for j in occ[x + 1:]:
                _accumulate(acc, _spin_symbol(i, i, j, j), 1)
                _accumulate(acc, _spin_symbol(i, j, j, i), -1)
        return SymbolicElement(acc)
    if len(only1) == 1:
        (p,), (r,) = only1, only2
        m, s1 = annihilate(d2, r)  # type: ignore[misc]
        _, s2 = create(m, p)  # type: ignore[misc]
        phase = s1 * s2
        for n in occupied(d1 & d2):
            _accumulate(acc, _spin_symbol(p, r, n, n), phase)
            _accumulate(acc, _spin_symbol(p, n, n, r), -phase)
        return SymbolicElement(acc)
    if len(only1) == 2:
        p, q = only1
        r, s = only2
        m, s1 = annihilate(d2, r)  # type: ignore[misc]
        m, s2 = annihilate(m, s)  # type: ignore[misc]
        m, s3 = create(m, q)  # type: ignore[misc]
        _, s4 = create(m, p)  # type: ignore[misc]
        phase = s1 * s2 * s3 * s4
        _accumulate(acc, _spin_symbol(p, r, q, s), phase)
        _accumulate(acc, _spin_symbol(p, s, q, r), -phase)
        return SymbolicElement(acc)
    return SymbolicElement()


def expansion_matrix_element(u: DeterminantExpansion, v: DeterminantExpansion) -> SymbolicElement:
    """``<u|V_ee|v>`` for real expansions, summed determinant pair by pair."""
    acc: dict[IntegralSymbol, Fraction] = {}
    for a, ca in u.items():
        for b, cb in v.items():
            w = ca.real() * cb.real()
            for sym, c in slater_condon(a, b).terms.items():
                acc[sym] = acc.get(sym, Fraction(0)) + w * c
    return SymbolicElement(acc)


def h0_coefficient(n: int) -> Fraction:
    """Coefficient of Z² in the non-interacting ground energy."""
    check_electron_count(n)
    if n == 1:
        return Fraction(-1, 2)
    return Fraction(-1) - Fraction(n - 2, 8)


@dataclass(frozen=True)
class SectorBlock:
    """One- or two-dimensional block of the projected Hamiltonian.

    ``symbolic`` holds the electron-repulsion part over the normalized L₃ = 0
    vectors of a sector.  When ``Z`` is set, ``numeric`` holds the full
    entries ``h0 Z² δ + V_ee(Z)``; diagonal entries are rational and an
    off-diagonal entry is a rational multiple of a square root.
    """

    n: int
    term: TermSymbol
    vectors: tuple[DeterminantExpansion, ...]
    configs: tuple[int, ...]
    symbolic: tuple[tuple[SymbolicElement, ...], ...]
    h0: Fraction
    Z: Fraction | None = None
    numeric: tuple[tuple[QuadraticSurd, ...], ...] | None = None

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def norms2(self) -> tuple[Fraction, ...]:
        return tuple(v.norm2() for v in self.vectors)

    def at(self, Z: Fraction | int) -> SectorBlock:
        Z = Fraction(Z)
        if Z <= 0:
            raise ValueError("nuclear charge must be positive")
        rows = []
        for i, row in enumerate(self.symbolic):
            out = []
            for j, e in enumerate(row):
                value = e.evaluate(Z)
                if i == j:
                    value = value + self.h0 * Z * Z
                out.append(value)
            rows.append(tuple(out))
        return replace(self, Z=Z, numeric=tuple(rows))

    def diagonal(self) -> tuple[Fraction, ...]:
        if self.numeric is None:
            raise ValueError("block has not been evaluated at a nuclear charge")
        return tuple(self.numeric[i][i].rational() for i in range(self.dimension))

    def cross(self) -> QuadraticSurd | None:
        if self.numeric is None:
            raise ValueError("block has not been evaluated at a nuclear charge")
        return self.numeric[0][1] if self.dimension == 2 else None


def _check_even_differences(vectors: tuple[DeterminantExpansion, ...]) -> None:
    masks = sorted({m for v in vectors for m in v})
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if electron_count(a ^ b) % 4:
                raise AssertionError(
                    f"determinants {a:#012b} and {b:#012b} differ by an odd number of orbitals"
                )


@lru_cache(maxsize=None)
def _sector_block(sector: SymmetrySector) -> SectorBlock:
    vectors = sector.l3zero_basis
    if not vectors or len(vectors) > 2:
        raise AssertionError(f"sector {sector.term} has {len(vectors)} L3=0 vectors")
    _check_even_differences(vectors)
    norms = [v.norm2() for v in vectors]
    rows = []
    for i, u in enumerate(vectors):
        row = []
        for j, v in enumerate(vectors):
            raw = expansion_matrix_element(u, v)
            nn = norms[i] * norms[j]
            if i == j:
                row.append(raw * (1 / norms[i]))
                continue
            # raw / sqrt(nn) with nn = (p/q) -> raw * sqrt(p q) / p
            s, f = squarefree_decomposition(nn.numerator * nn.denominator)
            row.append(SymbolicElement((raw * Fraction(s, nn.numerator)).terms, f))
        rows.append(tuple(row))
    for i in range(len(rows)):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise AssertionError(f"sector {sector.term} block is not symmetric")
    return SectorBlock(
        sector.n, sector.term, vectors, sector.l3zero_configs, tuple(rows), h0_coefficient(sector.n)
    )


def sector_vee_matrix(sector: SymmetrySector) -> SectorBlock:
    """Symbolic electron-repulsion block of a sector with maximal S₃."""
    if sector.M_S != sector.S:
        raise ValueError("use the sector with maximal spin projection M_S = S")
    return _sector_block(sector)


def php_block(sector: SymmetrySector, n: int, Z: Fraction | int) -> SectorBlock:
    if sector.n != n:
        raise ValueError(f"sector belongs to N={sector.n}, not N={n}")
    return sector_vee_matrix(sector).at(Z)


def sector_blocks(n: int) -> tuple[SectorBlock, ...]:
    return tuple(sector_vee_matrix(s) for s in representative_sectors(n))


def php_matrix(n: int, Z: Fraction | int = 1) -> tuple[tuple[int, ...], list[list[Fraction]]]:
    """Dense projected Hamiltonian in the determinant basis of the ground space."""
    Z = Fraction(Z)
    basis = ground_space_basis(n)
    shift = h0_coefficient(n) * Z * Z
    rows = []
    for a in basis:
        row = []
        for b in basis:
            v = slater_condon(a, b).rational_part(Z)
            row.append(v + shift if a == b else v)
        rows.append(row)
    return basis, rows

"""Symmetry operators on the degenerate ground space and its joint eigenspaces.

The ground space of the non-interacting Hamiltonian for N electrons is spanned
by determinants with both 1s orbitals filled (N >= 3) and the remaining N-2
electrons spread over the eight n=2 spin-orbitals.  On it we build exact
matrices of total orbital and spin angular momentum and parity, then split the
space into joint eigenspaces by exact kernel computations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .determinant_algebra import (
    CORE_MASK,
    VALENCE_ORBITALS,
    DeterminantExpansion,
    GaussianRational,
    angular_component,
    apply_one_body,
    apply_parity,
    apply_two_body_product,
    electron_count,
    is_up,
    occupied,
    spin_component,
)
from .linalg import gram_schmidt, matmul, nullspace

OPERATOR_NAMES = ("L2", "S2", "L3", "S3", "R")
_ALIASES = {"L²": "L2", "S²": "S2", "L₃": "L3", "S₃": "S3", "R̂": "R", "parity": "R"}

P_MASK = 0b1111110000
TWO_S_MASK = 0b1100

LETTERS = "SPDFGH"
_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_FROM_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")


def check_electron_count(n: int) -> None:
    if not 1 <= n <= 10:
        raise ValueError(f"electron count must be in 1..10, got {n}")


def ground_space_basis(n: int) -> tuple[int, ...]:
    """Determinant masks spanning the ground space, in ascending mask order."""
    check_electron_count(n)
    if n <= 2:
        return tuple(sorted(sum(1 << o for o in c) for c in combinations((0, 1), n)))
    return tuple(CORE_MASK | m for m in valence_basis(n))


def valence_basis(n: int) -> tuple[int, ...]:
    if not 3 <= n <= 10:
        raise ValueError(f"valence reduction needs 3 <= N <= 10, got {n}")
    return tuple(sorted(sum(1 << o for o in c) for c in combinations(VALENCE_ORBITALS, n - 2)))


def ground_space_dimension(n: int) -> int:
    return len(ground_space_basis(n))


def spin_projection(mask: int) -> Fraction:
    ups = sum(1 for o in occupied(mask) if is_up(o))
    return Fraction(2 * ups - electron_count(mask), 2)


def parity_of(mask: int) -> int:
    return -1 if electron_count(mask & P_MASK) & 1 else 1


def two_s_occupation(mask: int) -> int:
    """Number of electrons in 2s; distinguishes the configurations."""
    return electron_count(mask & TWO_S_MASK)


def _apply(name: str, x: DeterminantExpansion) -> DeterminantExpansion:
    if name == "L2":
        out = DeterminantExpansion()
        for axis in (1, 2, 3):
            out = out + apply_two_body_product(angular_component(axis), x)
        return out
    if name == "S2":
        out = DeterminantExpansion()
        for axis in (1, 2, 3):
            out = out + apply_two_body_product(spin_component(axis), x)
        return out
    if name == "L3":
        return apply_one_body(angular_component(3), x)
    if name == "S3":
        return apply_one_body(spin_component(3), x)
    if name == "R":
        return apply_parity(x)
    raise ValueError(f"unknown operator {name!r}")


def canonical_operator_name(name: str) -> str:
    key = _ALIASES.get(name, name)
    if key not in OPERATOR_NAMES:
        raise ValueError(f"unknown operator {name!r}; expected one of {OPERATOR_NAMES}")
    return key


@dataclass(frozen=True)
class OperatorMatrix:
    """Exact matrix of a symmetry operator in a determinant basis.

    ``entries[i][j]`` is the coefficient of ``basis[i]`` in ``Op basis[j]``.
    """

    name: str
    n: int
    basis: tuple[int, ...]
    entries: tuple[tuple[GaussianRational, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def rational(self) -> list[list[Fraction]]:
        """Entries as Fractions; raises if any entry has an imaginary part."""
        return [[e.real() for e in row] for row in self.entries]

    def imaginary(self) -> list[list[Fraction]]:
        """Imaginary parts; raises if any entry has a real part."""
        out = []
        for row in self.entries:
            if any(e.re for e in row):
                raise ValueError(f"{self.name} is not purely imaginary")
            out.append([e.im for e in row])
        return out

    def is_hermitian(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i].conjugate()
            for i in range(self.dim)
            for j in range(i, self.dim)
        )

    def __matmul__(self, other: OperatorMatrix) -> list[list[GaussianRational]]:
        if self.basis != other.basis:
            raise ValueError("operators act on different bases")
        zero = GaussianRational(0)
        out = [[zero] * self.dim for _ in range(self.dim)]
        right = [[(j, e) for j, e in enumerate(row) if e] for row in other.entries]
        for i, row in enumerate(self.entries):
            target = out[i]
            for k, a in enumerate(row):
                if a:
                    for j, b in right[k]:
                        target[j] = target[j] + a * b
        return out

    def commutes_with(self, other: OperatorMatrix) -> bool:
        return (self @ other) == (other @ self)


@lru_cache(maxsize=None)
def _operator_entries(name: str, basis: tuple[int, ...]) -> tuple[tuple[GaussianRational, ...], ...]:
    index = {m: i for i, m in enumerate(basis)}
    zero = GaussianRational(0)
    rows = [[zero] * len(basis) for _ in basis]
    for j, mask in enumerate(basis):
        image = _apply(name, DeterminantExpansion.determinant(mask))
        for m, c in image.items():
            if m not in index:
                raise AssertionError(f"{name} leaves the basis span")
            rows[index[m]][j] = c
    return tuple(tuple(r) for r in rows)


def assemble_operator(name: str, n: int, valence: bool = False) -> OperatorMatrix:
    """Matrix of one of ``L2, S2, L3, S3, R`` on the N-electron ground space.

    With ``valence=True`` the matrix is built on the (N-2)-electron valence
    determinants, with the doubly occupied 1s shell dropped; the basis
    reported is still the full (lifted) one so both routes can be compared.
    """
    key = canonical_operator_name(name)
    check_electron_count(n)
    if valence:
        vb = valence_basis(n)
        return OperatorMatrix(key, n, tuple(CORE_MASK | m for m in vb), _operator_entries(key, vb))
    basis = ground_space_basis(n)
    return OperatorMatrix(key, n, basis, _operator_entries(key, basis))


@dataclass(frozen=True)
class ValenceSpace:
    """The N-electron ground space with the closed 1s shell factored out."""

    n: int
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def lift(self, mask: int) -> int:
        return mask | CORE_MASK

    def lift_expansion(self, x: DeterminantExpansion) -> DeterminantExpansion:
        # The core orbitals have the lowest indices, so no sign is picked up.
        return DeterminantExpansion({m | CORE_MASK: c for m, c in x.items()})


def eliminate_core(n: int) -> ValenceSpace:
    return ValenceSpace(n, valence_basis(n))


@dataclass(frozen=True, order=True)
class TermSymbol:
    """Spectroscopic label ``^{2S+1}X`` with an odd-parity mark."""

    L: int
    S: Fraction
    parity: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "S", Fraction(self.S))
        if self.L < 0 or self.L >= len(LETTERS):
            raise ValueError(f"L={self.L} out of range")
        if self.S < 0 or (2 * self.S).denominator != 1:
            raise ValueError(f"S={self.S} is not a nonnegative half-integer")
        if self.parity not in (1, -1):
            raise ValueError(f"parity must be +1 or -1, got {self.parity}")

    @property
    def multiplicity(self) -> int:
        return int(2 * self.S + 1)

    @property
    def letter(self) -> str:
        return LETTERS[self.L]

    @property
    def odd(self) -> bool:
        return self.parity == -1

    @property
    def degeneracy(self) -> int:
        return (2 * self.L + 1) * self.multiplicity

    def ascii(self) -> str:
        return f"{self.multiplicity}{self.letter}{'o' if self.odd else ''}"

    def __str__(self) -> str:
        return f"{str(self.multiplicity).translate(_SUPERSCRIPTS)}{self.letter}{'°' if self.odd else ''}"

    @classmethod
    def parse(cls, text: str) -> TermSymbol:
        """Accept ``"4So"``, ``"⁴S°"`` or ``"^4S^o"`` style labels."""
        t = text.strip().translate(_FROM_SUPERSCRIPTS).replace("^", "").replace("°", "o")
        m = re.fullmatch(r"(\d+)([SPDFGH])(o?)", t)
        if not m:
            raise ValueError(f"cannot parse term symbol {text!r}")
        mult, letter, odd = m.groups()
        return cls(LETTERS.index(letter), Fraction(int(mult) - 1, 2), -1 if odd else 1)


def term_symbol(L: int, S: Fraction | int, parity: int) -> TermSymbol:
    return TermSymbol(L, Fraction(S), parity)


@dataclass(frozen=True)
class SymmetrySector:
    """Joint eigenspace of L², S², S₃ and parity inside the ground space.

    ``basis`` spans the whole sector (all L₃ values); ``l3zero_basis`` spans
    its L₃ = 0 part.  Vectors are real, unnormalized, with coprime integer
    coefficients; ``l3zero_configs`` gives the 2s occupation of each
    L₃ = 0 vector, which are ordered with the 2s-richer configuration first.
    """

    n: int
    L: int
    S: Fraction
    M_S: Fraction
    parity: int
    basis: tuple[DeterminantExpansion, ...]
    l3zero_basis: tuple[DeterminantExpansion, ...]
    l3zero_configs: tuple[int, ...] = field(default=())

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def term(self) -> TermSymbol:
        return TermSymbol(self.L, self.S, self.parity)

    @property
    def label(self) -> tuple[int, Fraction, Fraction, int]:
        return (self.L, self.S, self.M_S, self.parity)

    def norms2(self) -> tuple[Fraction, ...]:
        return tuple(v.norm2() for v in self.l3zero_basis)


def _expansion(basis: tuple[int, ...], idx: list[int], vec: list[Fraction]) -> DeterminantExpansion:
    return DeterminantExpansion({basis[i]: v for i, v in zip(idx, vec) if v})


@lru_cache(maxsize=None)
def simultaneous_eigenspaces(n: int) -> tuple[SymmetrySector, ...]:
    """Split the N-electron ground space into joint symmetry eigenspaces.

    The space is first cut by S₃, parity and 2s occupation (all diagonal in
    the determinant basis and commuting with L² and S²).  Within each piece the
    kernels of ``L² - L(L+1)`` and ``S² - S(S+1)`` are intersected for every
    admissible L <= 3 and S <= N/2; a piece not exhausted by these kernels
    raises ``AssertionError``.
    """
    check_electron_count(n)
    use_valence = n >= 3
    L2 = assemble_operator("L2", n, valence=use_valence).rational()
    S2 = assemble_operator("S2", n, valence=use_valence).rational()
    L3 = assemble_operator("L3", n, valence=use_valence).imaginary()
    basis = ground_space_basis(n)

    groups: dict[tuple[Fraction, int, int], list[int]] = {}
    for i, m in enumerate(basis):
        key = (spin_projection(m), parity_of(m), two_s_occupation(m))
        groups.setdefault(key, []).append(i)

    pieces: dict[tuple[int, Fraction, Fraction, int], list[tuple[int, list, list]]] = {}
    for (m_s, parity, n2s), idx in groups.items():
        found = 0
        spins = [Fraction(s, 2) for s in range(n % 2, n + 1, 2) if Fraction(s, 2) >= abs(m_s)]
        for L in range(4):
            for S in spins:
                lval, sval = L * (L + 1), S * (S + 1)
                stacked = [
                    [L2[i][j] - (lval if i == j else 0) for j in idx] for i in idx
                ] + [[S2[i][j] - (sval if i == j else 0) for j in idx] for i in idx]
                kernel = nullspace(stacked, len(idx))
                if not kernel:
                    continue
                found += len(kernel)
                sector_vectors = gram_schmidt(kernel)
                # L₃ kernel inside this piece: solve L3 @ B @ y = 0.
                cols = [list(col) for col in zip(*kernel)]
                l3_sub = [[L3[i][j] for j in idx] for i in idx]
                coeffs = nullspace(matmul(l3_sub, cols), len(kernel))
                l3zero = [matmul(cols, [[c] for c in y]) for y in coeffs]
                l3zero_vectors = gram_schmidt([[row[0] for row in v] for v in l3zero]) if l3zero else []
                pieces.setdefault((L, S, m_s, parity), []).append(
                    (n2s, sector_vectors, l3zero_vectors, idx)
                )
        if found != len(idx):
            raise AssertionError(
                f"eigenspaces of N={n} block (M_S={m_s}, parity={parity}, 2s={n2s}) "
                f"cover {found} of {len(idx)} dimensions"
            )

    sectors = []
    for (L, S, m_s, parity), parts in pieces.items():
        parts.sort(key=lambda p: -p[0])
        sector_basis: list[DeterminantExpansion] = []
        l3_basis: list[DeterminantExpansion] = []
        configs: list[int] = []
        for n2s, vecs, l3vecs, idx in parts:
            sector_basis.extend(_expansion(basis, idx, v) for v in vecs)
            for v in l3vecs:
                l3_basis.append(_expansion(basis, idx, v))
                configs.append(n2s)
        sectors.append(
            SymmetrySector(
                n, L, S, m_s, parity, tuple(sector_basis), tuple(l3_basis), tuple(configs)
            )
        )
    sectors.sort(key=lambda s: (s.L, s.S, -s.parity, -s.M_S))
    return tuple(sectors)


def representative_sectors(n: int) -> tuple[SymmetrySector, ...]:
    """One sector per (L, S, parity): the one with maximal S₃ = S."""
    return tuple(s for s in simultaneous_eigenspaces(n) if s.M_S == s.S)


def sector(n: int, L: int, S: Fraction | int, parity: int, M_S: Fraction | int | None = None) -> SymmetrySector:
    S = Fraction(S)
    M_S = S if M_S is None else Fraction(M_S)
    for s in simultaneous_eigenspaces(n):
        if (s.L, s.S, s.M_S, s.parity) == (L, S, M_S, parity):
            return s
    raise KeyError(f"no sector L={L}, S={S}, M_S={M_S}, parity={parity} for N={n}")

"""Second-quantized algebra on determinants over the ten n <= 2 spin-orbitals.

A determinant is an ``int`` bitmask; bit ``o`` is set when spin-orbital ``o`` is
occupied.  The orbitals are always understood in ascending index order, so a
mask identifies a signed determinant unambiguously.

Spin-orbital indices::

    0 1s up    1 1s down
    2 2s up    3 2s down
    4 2p3 up   5 2p3 down
    6 2p1 up   7 2p1 down
    8 2p2 up   9 2p2 down

Spatial orbitals are numbered 0..4 (1s, 2s, 2p3, 2p1, 2p2); the printed labels
used throughout the package are ``spatial + 1``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Union

N_ORBITALS = 10
FULL_MASK = (1 << N_ORBITALS) - 1
CORE_MASK = 0b11
VALENCE_ORBITALS = tuple(range(2, N_ORBITALS))

# Cartesian axis (1, 2, 3) carried by each p spatial orbital, and the inverse.
AXIS_OF_SPATIAL = {2: 3, 3: 1, 4: 2}
SPATIAL_OF_AXIS = {3: 2, 1: 3, 2: 4}

ORBITAL_NAMES = ("1s", "2s", "2p3", "2p1", "2p2")


class DomainError(ValueError):
    """Raised when an operation is applied outside the space it is defined on."""


def spatial(o: int) -> int:
    return o >> 1


def is_up(o: int) -> bool:
    return o & 1 == 0


def spin_orbital(spatial_index: int, up: bool) -> int:
    return 2 * spatial_index + (0 if up else 1)


def occupied(mask: int) -> list[int]:
    """Occupied orbital indices of ``mask`` in ascending order."""
    out = []
    o = 0
    while mask:
        if mask & 1:
            out.append(o)
        mask >>= 1
        o += 1
    return out


def electron_count(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(orbitals: Iterable[int]) -> int:
    mask = 0
    for o in orbitals:
        if mask >> o & 1:
            raise ValueError(f"orbital {o} listed twice")
        mask |= 1 << o
    return mask


def format_determinant(mask: int) -> str:
    """Render a determinant with spatial labels, down spins overlined."""
    parts = []
    for o in occupied(mask):
        label = str(spatial(o) + 1)
        parts.append(label if is_up(o) else label + "̅")
    return "|" + " ".join(parts) + "⟩"


def _sign_below(mask: int, o: int) -> int:
    return -1 if electron_count(mask & ((1 << o) - 1)) & 1 else 1


def annihilate(mask: int, o: int) -> tuple[int, int] | None:
    """Remove orbital ``o``; ``None`` when it is not occupied."""
    if not mask >> o & 1:
        return None
    return mask & ~(1 << o), _sign_below(mask, o)


def create(mask: int, o: int) -> tuple[int, int] | None:
    """Insert orbital ``o``; ``None`` when it is already occupied."""
    if mask >> o & 1:
        return None
    return mask | (1 << o), _sign_below(mask, o)


Scalar = Union["GaussianRational", int, Fraction]


@total_ordering
class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational | int = 0, im: Rational | int = 0) -> None:
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value: Scalar) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def real(self) -> Fraction:
        """The value as a ``Fraction``; raises if the imaginary part is nonzero."""
        if self.im:
            raise ValueError(f"{self} is not real")
        return self.re

    def __add__(self, other: Scalar) -> GaussianRational:
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: Scalar) -> GaussianRational:
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Scalar) -> GaussianRational:
        return -self + other

    def __mul__(self, other: Scalar) -> GaussianRational:
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> GaussianRational:
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re / other, self.im / other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        n = other.norm2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * other.conjugate() / n

    def __rtruediv__(self, other: Scalar) -> GaussianRational:
        return GaussianRational.coerce(other) / self

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __lt__(self, other: GaussianRational) -> bool:
        # Lexicographic order, only so that collections sort deterministically.
        o = GaussianRational.coerce(other)
        return (self.re, self.im) < (o.re, o.im)

    def __hash__(self) -> int:
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re} {sign} {abs(self.im)}i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


class DeterminantExpansion(Mapping[int, GaussianRational]):
    """Finite linear combination of determinants with Gaussian-rational weights.

    Behaves as a read-only mapping ``mask -> coefficient`` without zero entries.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, GaussianRational] = {}
        for mask, c in items:
            c = GaussianRational.coerce(c)
            acc[mask] = acc[mask] + c if mask in acc else c
        self._terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def determinant(cls, mask: int, coefficient: Scalar = 1) -> DeterminantExpansion:
        return cls({mask: coefficient})

    def __getitem__(self, mask: int) -> GaussianRational:
        return self._terms.get(mask, ZERO)

    def __contains__(self, mask: object) -> bool:
        return mask in self._terms

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DeterminantExpansion):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: DeterminantExpansion) -> DeterminantExpansion:
        if not isinstance(other, DeterminantExpansion):
            return NotImplemented
        return DeterminantExpansion([*self._terms.items(), *other._terms.items()])

    def __neg__(self) -> DeterminantExpansion:
        return DeterminantExpansion({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: DeterminantExpansion) -> DeterminantExpansion:
        if not isinstance(other, DeterminantExpansion):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> DeterminantExpansion:
        s = GaussianRational.coerce(scalar)
        return DeterminantExpansion({m: c * s for m, c in self._terms.items()})

    __rmul__ = __mul__

    def conjugate(self) -> DeterminantExpansion:
        return DeterminantExpansion({m: c.conjugate() for m, c in self._terms.items()})

    def inner(self, other: DeterminantExpansion) -> GaussianRational:
        """``<self|other>``, antilinear in ``self``; distinct determinants are orthonormal."""
        small, large = (self, other) if len(self) <= len(other) else (other, self)
        total = ZERO
        for m in small._terms:
            if m in large._terms:
                total = total + self._terms[m].conjugate() * other._terms[m]
        return total

    def norm2(self) -> Fraction:
        return sum((c.norm2() for c in self._terms.values()), Fraction(0))

    def is_real(self) -> bool:
        return all(c.is_real() for c in self._terms.values())

    def leading(self) -> tuple[int, GaussianRational]:
        """The term with the smallest mask."""
        m = min(self._terms)
        return m, self._terms[m]

    def electron_counts(self) -> set[int]:
        return {electron_count(m) for m in self._terms}

    def __repr__(self) -> str:
        body = ", ".join(f"{m:#012b}: {c}" for m, c in sorted(self._terms.items()))
        return f"DeterminantExpansion({{{body}}})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in self:
            c = self._terms[m]
            parts.append(f"({c}){format_determinant(m)}")
        return " + ".join(parts)


class OrbitalMap:
    """Linear map on the ten spin-orbitals, stored column-sparse.

    ``columns[q]`` lists ``(p, b_pq)`` so that ``b|q> = sum_p b_pq |p>``.
    """

    __slots__ = ("columns",)

    def __init__(self, columns: Mapping[int, Mapping[int, Scalar]]) -> None:
        cols: list[tuple[tuple[int, GaussianRational], ...]] = []
        for q in range(N_ORBITALS):
            entries = columns.get(q, {})
            col = []
            for p in sorted(entries):
                c = GaussianRational.coerce(entries[p])
                if c:
                    col.append((p, c))
            cols.append(tuple(col))
        self.columns = tuple(cols)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[Scalar]]) -> OrbitalMap:
        """Build from a dense 10x10 matrix indexed ``[row p][column q]``."""
        if len(matrix) != N_ORBITALS or any(len(row) != N_ORBITALS for row in matrix):
            raise ValueError("orbital maps are 10x10")
        return cls({q: {p: matrix[p][q] for p in range(N_ORBITALS)} for q in range(N_ORBITALS)})

    @classmethod
    def identity(cls) -> OrbitalMap:
        return cls({q: {q: 1} for q in range(N_ORBITALS)})

    @classmethod
    def zero(cls) -> OrbitalMap:
        return cls({})

    def matrix(self) -> list[list[GaussianRational]]:
        out = [[ZERO] * N_ORBITALS for _ in range(N_ORBITALS)]
        for q, col in enumerate(self.columns):
            for p, c in col:
                out[p][q] = c
        return out

    def __matmul__(self, other: OrbitalMap) -> OrbitalMap:
        """Composition ``self o other``."""
        cols: dict[int, dict[int, GaussianRational]] = {}
        for q, col in enumerate(other.columns):
            acc: dict[int, GaussianRational] = {}
            for r, c in col:
                for p, d in self.columns[r]:
                    acc[p] = acc.get(p, ZERO) + d * c
            cols[q] = acc
        return OrbitalMap(cols)

    def __add__(self, other: OrbitalMap) -> OrbitalMap:
        cols: dict[int, dict[int, GaussianRational]] = {}
        for q in range(N_ORBITALS):
            acc: dict[int, GaussianRational] = {}
            for p, c in (*self.columns[q], *other.columns[q]):
                acc[p] = acc.get(p, ZERO) + c
            cols[q] = acc
        return OrbitalMap(cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrbitalMap):
            return NotImplemented
        return self.columns == other.columns

    def __hash__(self) -> int:
        return hash(self.columns)


def spin_component(axis: int) -> OrbitalMap:
    """One-electron spin operator ``s_axis`` (half the Pauli matrix)."""
    half = Fraction(1, 2)
    cols: dict[int, dict[int, GaussianRational]] = {}
    for k in range(5):
        up, down = spin_orbital(k, True), spin_orbital(k, False)
        if axis == 1:
            cols[up] = {down: GaussianRational(half)}
            cols[down] = {up: GaussianRational(half)}
        elif axis == 2:
            cols[up] = {down: GaussianRational(0, half)}
            cols[down] = {up: GaussianRational(0, -half)}
        elif axis == 3:
            cols[up] = {up: GaussianRational(half)}
            cols[down] = {down: GaussianRational(-half)}
        else:
            raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    return OrbitalMap(cols)


def angular_component(axis: int) -> OrbitalMap:
    """One-electron orbital angular momentum ``l_axis`` on the real p orbitals.

    ``l_{j+1} p_j = -i p_{j-1}`` and ``l_{j-1} p_j = i p_{j+1}`` (axes cyclic),
    ``l_j p_j = 0``; s orbitals are annihilated.
    """
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")

    def cyc(j: int) -> int:
        return (j - 1) % 3 + 1

    cols: dict[int, dict[int, GaussianRational]] = {}
    for j in (1, 2, 3):
        if axis == cyc(j + 1):
            target, coeff = cyc(j - 1), GaussianRational(0, -1)
        elif axis == cyc(j - 1):
            target, coeff = cyc(j + 1), GaussianRational(0, 1)
        else:
            continue
        for up in (True, False):
            src = spin_orbital(SPATIAL_OF_AXIS[j], up)
            cols[src] = {spin_orbital(SPATIAL_OF_AXIS[target], up): coeff}
    return OrbitalMap(cols)


def _single_substitutions(b: OrbitalMap, mask: int) -> Iterator[tuple[int, GaussianRational]]:
    for q in occupied(mask):
        for p, c in b.columns[q]:
            if p == q:
                yield mask, c
                continue
            hole = annihilate(mask, q)
            assert hole is not None
            particle = create(hole[0], p)
            if particle is None:
                continue
            yield particle[0], c * (hole[1] * particle[1])


def apply_one_body(b: OrbitalMap, x: DeterminantExpansion) -> DeterminantExpansion:
    """Apply ``sum_i b(i)``, the one-body operator induced by ``b``."""
    out: list[tuple[int, GaussianRational]] = []
    for mask, coeff in x.items():
        for new, c in _single_substitutions(b, mask):
            out.append((new, coeff * c))
    return DeterminantExpansion(out)


def apply_two_body_product(b: OrbitalMap, x: DeterminantExpansion) -> DeterminantExpansion:
    """Apply ``(sum_i b(i))^2 = sum_i b(i)^2 + 2 sum_{i<j} b(i) b(j)``.

    The pair part is evaluated as ``sum b_pq b_rs a+_p a+_r a_s a_q`` over ordered
    pairs of distinct occupied orbitals ``q != s``, which counts each unordered
    pair twice.
    """
    out = list(apply_one_body(b @ b, x).items())
    for mask, coeff in x.items():
        occ = occupied(mask)
        for q in occ:
            m1, s1 = annihilate(mask, q)  # type: ignore[misc]
            for s in occ:
                if s == q:
                    continue
                m2, s2 = annihilate(m1, s)  # type: ignore[misc]
                for r, c_rs in b.columns[s]:
                    step = create(m2, r)
                    if step is None:
                        continue
                    m3, s3 = step
                    for p, c_pq in b.columns[q]:
                        last = create(m3, p)
                        if last is None:
                            continue
                        sign = s1 * s2 * s3 * last[1]
                        out.append((last[0], coeff * c_pq * c_rs * sign))
    return DeterminantExpansion(out)


def apply_parity(x: DeterminantExpansion) -> DeterminantExpansion:
    """Spatial inversion: each occupied p orbital contributes a factor -1."""
    p_mask = 0b1111110000
    return DeterminantExpansion(
        {m: (-c if electron_count(m & p_mask) & 1 else c) for m, c in x.items()}
    )


def dual(x: DeterminantExpansion) -> DeterminantExpansion:
    """Particle-hole dual, mapping the (N)-electron space onto the (12-N)-electron one.

    Each determinant with valence orbitals ``i1 < ... < ik`` is sent to
    ``a(i_k) ... a(i_1)`` applied to the fully occupied determinant, and the
    coefficient is conjugated.
    """
    out: list[tuple[int, GaussianRational]] = []
    for mask, coeff in x.items():
        if mask & CORE_MASK != CORE_MASK:
            raise DomainError(f"{format_determinant(mask)} does not occupy both 1s orbitals")
        image, sign = FULL_MASK, 1
        for o in occupied(mask & ~CORE_MASK):
            image, s = annihilate(image, o)  # type: ignore[misc]
            sign *= s
        out.append((image, coeff.conjugate() * sign))
    return DeterminantExpansion(out)

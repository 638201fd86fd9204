"""Closed-form spectra of the projected Hamiltonian and derived reports."""

from __future__ import annotations

import csv
import os
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from importlib import resources
from pathlib import Path

from .determinant_algebra import DeterminantExpansion, format_determinant
from .hamiltonian import SectorBlock, SymbolicElement, h0_coefficient, sector_blocks
from .surd import QuadraticSurd, ScaledSurd
from .symmetry import TermSymbol, check_electron_count, ground_space_dimension

DATA_DIR_ENV = "PTATOM_DATA_DIR"
EXPERIMENT_FILE = "experiment.csv"
EXPERIMENT_HEADER = ("N", "Z", "term", "energy_hartree", "source")


class DataFileError(ValueError):
    """A reference data file is missing or malformed."""


@dataclass(frozen=True)
class Eigenpair:
    """Eigenvalue of a sector block and its eigenvector.

    For two-dimensional blocks the eigenvector is ``(Psi1 + c Psi2)/sqrt(1+c^2)``
    over the block's normalized vectors, with ``c`` stored in ``mixing``.
    A block with vanishing coupling yields pure states with ``component`` set.
    """

    value: QuadraticSurd
    mixing: ScaledSurd | None = None
    component: int | None = None


def symmetric_eigenpairs(e1: Fraction, e2: Fraction, cross: QuadraticSurd) -> list[Eigenpair]:
    """Eigenpairs of ``[[e1, x], [x, e2]]`` with ``x = q*sqrt(m)``, lowest first."""
    if not cross:
        pairs = [Eigenpair(QuadraticSurd(e1), component=0), Eigenpair(QuadraticSurd(e2), component=1)]
        return pairs if e1 <= e2 else pairs[::-1]
    q, m = (cross.b, cross.d) if cross.d else (cross.a, 1)
    half_gap = (e2 - e1) / 2
    radius = QuadraticSurd.sqrt(half_gap * half_gap + q * q * m)
    mean = (e1 + e2) / 2
    out = []
    for sign in (-1, 1):
        # c = (half_gap + sign*radius) / (q sqrt(m)) = sqrt(m) (half_gap + sign*radius) / (q m)
        c = ScaledSurd(m, (radius.scale(sign) + half_gap).scale(1 / (q * m)))
        out.append(Eigenpair(radius.scale(sign) + mean, mixing=c))
    return out


def diagonalize_block(block: SectorBlock) -> list[Eigenpair]:
    """Exact eigenpairs of an evaluated 1x1 or 2x2 block, lowest first."""
    if block.numeric is None:
        raise ValueError("evaluate the block at a nuclear charge first")
    if block.dimension == 1:
        return [Eigenpair(block.numeric[0][0], component=0)]
    if block.dimension != 2:
        raise ValueError(f"blocks have dimension 1 or 2, got {block.dimension}")
    e1, e2 = block.diagonal()
    return symmetric_eigenpairs(e1, e2, block.cross())


@dataclass(frozen=True)
class EnergyLevel:
    """A level ``E(Z) = quadratic Z² + linear Z`` of the N-electron model."""

    n: int
    term: TermSymbol
    quadratic: Fraction
    linear: QuadraticSurd
    block: SectorBlock = field(repr=False, compare=False)
    mixing: ScaledSurd | None = None
    component: int | None = None

    @property
    def degeneracy(self) -> int:
        return self.term.degeneracy

    def energy(self, Z: Fraction | int) -> QuadraticSurd:
        Z = Fraction(Z)
        return self.linear.scale(Z) + self.quadratic * Z * Z

    def energy_decimal(self, Z: Fraction | int, places: int = 4) -> Decimal:
        return round(self.energy(Z).to_decimal(), places)

    def exact_string(self) -> str:
        """Energy as ``-a*Z^2 + b*Z``, with ``b`` parenthesized when irrational."""
        lin = f"({self.linear})" if self.linear.d else str(self.linear)
        sign = "-" if self.quadratic < 0 else ""
        return f"{sign}{abs(self.quadratic)}*Z^2 + {lin}*Z"

    def eigenvector(self) -> str:
        vecs = self.block.vectors
        if self.mixing is None:
            idx = self.component or 0
            return describe_vector(vecs[idx])
        return (
            f"([{describe_vector(vecs[0])}] + c[{describe_vector(vecs[1])}])/sqrt(1 + c^2), "
            f"c = {self.mixing}"
        )


def describe_vector(v: DeterminantExpansion) -> str:
    """Normalized vector in determinant notation, e.g. ``1/sqrt(2)(|..> - |..>)``."""
    norm2 = v.norm2()
    parts = []
    for i, mask in enumerate(v):
        c = v[mask].real()
        sign = "-" if c < 0 else "+"
        coeff = "" if abs(c) == 1 else str(abs(c))
        body = f"{coeff}{format_determinant(mask)}"
        parts.append((f"-{body}" if c < 0 else body) if i == 0 else f" {sign} {body}")
    body = "".join(parts)
    if norm2 == 1:
        return body
    root = QuadraticSurd.sqrt(norm2)
    return f"1/{root.a}({body})" if root.is_rational() else f"1/sqrt({norm2})({body})"


def _compare_levels(x: EnergyLevel, y: EnergyLevel) -> int:
    if x.linear < y.linear:
        return -1
    if y.linear < x.linear:
        return 1
    return (str(x.term) > str(y.term)) - (str(x.term) < str(y.term))


@lru_cache(maxsize=None)
def _levels(n: int) -> tuple[EnergyLevel, ...]:
    h0 = h0_coefficient(n)
    out = []
    for block in sector_blocks(n):
        for pair in diagonalize_block(block.at(1)):
            out.append(
                EnergyLevel(n, block.term, h0, pair.value - h0, block, pair.mixing, pair.component)
            )
    out.sort(key=cmp_to_key(_compare_levels))
    return tuple(out)


def level_list(n: int, Z: Fraction | int | None = None) -> list[EnergyLevel]:
    """All levels of the N-electron model in ascending order.

    The quadratic coefficient is shared by every level of a given N, so the
    order is that of the linear coefficients and holds for every Z > 0.
    """
    check_electron_count(n)
    if Z is not None and Fraction(Z) <= 0:
        raise ValueError("nuclear charge must be positive")
    return list(_levels(n))


@dataclass(frozen=True)
class GroundStateReport:
    n: int
    term: TermSymbol
    degeneracy: int
    level: EnergyLevel

    @property
    def mixing(self) -> ScaledSurd | None:
        return self.level.mixing

    def description(self) -> str:
        return self.level.eigenvector()


def ground_state_report(n: int) -> GroundStateReport:
    ground = level_list(n)[0]
    return GroundStateReport(n, ground.term, ground.degeneracy, ground)


def level_labels(levels: Sequence[EnergyLevel]) -> list[str]:
    """Term labels with ``#k`` appended to repeated terms (k counted from 2)."""
    seen: dict[TermSymbol, int] = {}
    out = []
    for lv in levels:
        seen[lv.term] = seen.get(lv.term, 0) + 1
        k = seen[lv.term]
        out.append(str(lv.term) if k == 1 else f"{lv.term}#{k}")
    return out


@dataclass(frozen=True)
class GapPoint:
    inv_Z: Fraction
    label: str
    reduced_gap: Decimal


def gap_curves(n: int, Z_values: Iterable[Fraction | int], places: int = 12) -> list[GapPoint]:
    """``(E_j - E_1)/Z²`` for every excited level j at each Z.

    The gap coefficients are exact; two different square roots may appear in
    one difference, so the value is rendered through high-precision decimals.
    """
    levels = level_list(n)
    labels = level_labels(levels)
    ground = levels[0]
    out = []
    for Z in Z_values:
        Z = Fraction(Z)
        if Z <= 0:
            raise ValueError("nuclear charge must be positive")
        for lv, label in zip(levels[1:], labels[1:]):
            with localcontext() as ctx:
                ctx.prec = 60
                gap = (lv.linear.to_decimal() - ground.linear.to_decimal()) / (
                    Decimal(Z.numerator) / Decimal(Z.denominator)
                )
            out.append(GapPoint(1 / Z, label, round(gap, places)))
    return out


@dataclass(frozen=True)
class HundReport:
    """Energy difference between the ³S° and ¹D° levels of six electrons."""

    symbolic: SymbolicElement
    coefficient: Fraction  # of Z
    from_levels: Fraction

    @property
    def sign(self) -> int:
        return (self.coefficient > 0) - (self.coefficient < 0)


def hund_counterexample_report(n: int = 6) -> HundReport:
    if n != 6:
        raise ValueError("the ³S°/¹D° comparison concerns six electrons")
    triplet, singlet = TermSymbol.parse("3So"), TermSymbol.parse("1Do")
    blocks = {b.term: b for b in sector_blocks(n)}
    symbolic = blocks[triplet].symbolic[0][0] - blocks[singlet].symbolic[0][0]
    levels = {lv.term: lv for lv in level_list(n)}
    difference = levels[triplet].linear - levels[singlet].linear
    return HundReport(symbolic, symbolic.rational_part(1), difference.rational())


@dataclass(frozen=True)
class ExperimentRecord:
    n: int
    Z: int
    term: TermSymbol
    energy: Fraction
    source: str


def data_dir() -> Path:
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("ptatom") / "data"))


def load_experiment(path: str | os.PathLike | None = None) -> list[ExperimentRecord]:
    """Read reference energies; raises ``DataFileError`` on any malformed row."""
    p = Path(path) if path is not None else data_dir() / EXPERIMENT_FILE
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataFileError(f"cannot read {p}: {exc}") from None
    rows = [r for r in csv.reader(line for line in text.splitlines() if line and not line.startswith("#"))]
    if not rows or tuple(h.strip() for h in rows[0]) != EXPERIMENT_HEADER:
        raise DataFileError(f"{p}: header must be {','.join(EXPERIMENT_HEADER)}")
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(EXPERIMENT_HEADER):
            raise DataFileError(f"{p}:{lineno}: expected {len(EXPERIMENT_HEADER)} fields")
        try:
            n, Z = int(row[0]), int(row[1])
            term = TermSymbol.parse(row[2])
            energy = Fraction(row[3].strip())
        except ValueError as exc:
            raise DataFileError(f"{p}:{lineno}: {exc}") from None
        source = row[4].strip()
        if not source:
            raise DataFileError(f"{p}:{lineno}: source is required")
        out.append(ExperimentRecord(n, Z, term, energy, source))
    return out


@dataclass(frozen=True)
class ComparisonRow:
    term: TermSymbol
    pt_energy: QuadraticSurd
    exp_energy: Fraction | None
    source: str | None

    @property
    def relative_error(self) -> Decimal | None:
        """Percentage deviation of the model energy from the reference."""
        if self.exp_energy is None:
            return None
        with localcontext() as ctx:
            ctx.prec = 40
            exp = Decimal(self.exp_energy.numerator) / Decimal(self.exp_energy.denominator)
            return abs(self.pt_energy.to_decimal() - exp) / abs(exp) * 100


@dataclass(frozen=True)
class Comparison:
    n: int
    Z: Fraction
    rows: tuple[ComparisonRow, ...]
    inversions: tuple[tuple[TermSymbol, TermSymbol], ...]
    missing: tuple[TermSymbol, ...]


def compare_experiment(records: Sequence[ExperimentRecord], n: int, Z: Fraction | int | None = None) -> Comparison:
    """Join model levels with reference energies by term.

    Only the lowest model level of each term is matched.  An inversion
    ``(a, b)`` means the model puts ``a`` below ``b`` while the reference
    puts ``b`` below ``a``.
    """
    Z = Fraction(n if Z is None else Z)
    refs = {r.term: r for r in records if r.n == n and r.Z == Z}
    first: dict[TermSymbol, EnergyLevel] = {}
    for lv in level_list(n):
        first.setdefault(lv.term, lv)
    rows = []
    missing = []
    for term, lv in first.items():
        ref = refs.get(term)
        if ref is None:
            missing.append(term)
        rows.append(ComparisonRow(term, lv.energy(Z), ref.energy if ref else None, ref.source if ref else None))
    matched = [r for r in rows if r.exp_energy is not None]
    inversions = []
    for i, a in enumerate(matched):
        for b in matched[i + 1:]:
            if a.pt_energy < b.pt_energy and b.exp_energy < a.exp_energy:
                inversions.append((a.term, b.term))
    return Comparison(n, Z, tuple(rows), tuple(inversions), tuple(missing))


def degeneracy_total(n: int) -> int:
    return sum(lv.degeneracy for lv in level_list(n))


def check_degeneracies(n: int) -> bool:
    return degeneracy_total(n) == ground_space_dimension(n)

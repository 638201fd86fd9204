import json
import random
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptatom.determinant_algebra import annihilate, create, is_up, occupied, spatial
from ptatom.hamiltonian import (
    SymbolicElement,
    expansion_matrix_element,
    h0_coefficient,
    php_matrix,
    sector_blocks,
    sector_vee_matrix,
    slater_condon,
)
from ptatom.integrals import DISPLAY_ORDER, IntegralSymbol, exact_value
from ptatom.symmetry import assemble_operator, ground_space_basis, representative_sectors, sector

DATA = Path(__file__).parent / "data"


@lru_cache(maxsize=None)
def _integral(p: int, q: int, r: int, s: int) -> Fraction:
    return exact_value(IntegralSymbol(spatial(p) + 1, spatial(q) + 1, spatial(r) + 1, spatial(s) + 1))


def brute_force_vee(mask: int, target: frozenset[int]) -> dict[int, Fraction]:
    """``(1/2) sum (pq|rs) a+_p a+_r a_s a_q`` applied to one determinant and projected onto ``target``, at Z = 1."""
    out: dict[int, Fraction] = {}
    occ = occupied(mask)
    for q in occ:
        m1, s1 = annihilate(mask, q)
        for s in occ:
            if s == q:
                continue
            m2, s2 = annihilate(m1, s)
            for r in range(10):
                if is_up(r) != is_up(s):
                    continue
                step = create(m2, r)
                if step is None:
                    continue
                m3, s3 = step
                for p in range(10):
                    if is_up(p) != is_up(q):
                        continue
                    last = create(m3, p)
                    if last is None or last[0] not in target:
                        continue
                    value = _integral(p, q, r, s)
                    if value:
                        sign = s1 * s2 * s3 * last[1]
                        out[last[0]] = out.get(last[0], Fraction(0)) + Fraction(sign, 2) * value
    return out


def _commutator_vanishes(h: list[list[Fraction]], op) -> bool:
    n = len(h)
    entries = op.entries
    nz_op = [[(j, e) for j, e in enumerate(row) if e] for row in entries]
    nz_h = [[(j, e) for j, e in enumerate(row) if e] for row in h]
    for i in range(n):
        left = {}
        for k, a in nz_h[i]:
            for j, b in nz_op[k]:
                left[j] = left.get(j, 0) + b * a
        right = {}
        for k, a in nz_op[i]:
            for j, b in nz_h[k]:
                right[j] = right.get(j, 0) + a * b
        keys = set(left) | set(right)
        if any(left.get(j, 0) != right.get(j, 0) for j in keys):
            return False
    return True


class TestSlaterCondon:
    def test_lithium_diagonal(self):
        assert str(slater_condon(0b111, 0b111)) == "(11|11) + 2(11|22) - (12|21)"

    def test_neon_diagonal(self):
        text = str(slater_condon(0b1111111111, 0b1111111111))
        assert text == (
            "(11|11) + 4(11|22) - 2(12|21) + 12(11|33) - 6(13|31) + (22|22) + 12(22|33)"
            " - 6(23|32) + 3(33|33) + 12(33|44) - 6(34|43)"
        )

    def test_three_differences_vanish(self):
        a = 0b0000010111  # 1s up, 1s down, 2s up, 2p3 up
        b = 0b1101000011  # 1s up, 1s down, 2p1 up, 2p2 up, 2p2 down
        assert not slater_condon(a | 0b1000, b)

    def test_hermitian(self):
        basis = ground_space_basis(5)
        for a in basis[:20]:
            for b in basis[:20]:
                assert slater_condon(a, b) == slater_condon(b, a)

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 10])
    def test_matches_second_quantized_operator(self, n):
        basis = ground_space_basis(n)
        rng = random.Random(n)
        kets = basis if len(basis) <= 28 else rng.sample(basis, 20)
        for ket in kets:
            image = brute_force_vee(ket, frozenset(basis))
            for bra in basis:
                assert slater_condon(bra, ket).rational_part(1) == image.get(bra, 0), (bra, ket)


class TestSymbolicElement:
    def test_canonicalizes_symbols(self):
        x = SymbolicElement.symbol("(24|42)") - SymbolicElement.symbol("(34|43)") * 3
        assert str(x) == "(23|32) - 3(34|43)"
        assert x.rational_part(1) == Fraction(15, 512) - Fraction(81, 2560)

    def test_drops_vanishing_terms(self):
        assert not SymbolicElement.symbol("(13|11)")

    @given(st.lists(st.tuples(st.sampled_from(DISPLAY_ORDER), st.integers(-12, 12)), max_size=6),
           st.sampled_from([1, 2, 3, 6]))
    def test_str_parse_round_trip(self, terms, root):
        acc = {}
        for sym, c in terms:
            acc[sym] = acc.get(sym, 0) + Fraction(c)
        x = SymbolicElement(acc, root)
        assert SymbolicElement.parse(str(x)) == x

    def test_evaluate_with_root(self):
        x = SymbolicElement.parse("sqrt(3)(23|32)")
        v = x.evaluate(2)
        assert (v * v).rational() == 3 * (Fraction(15, 256)) ** 2


class TestSectorBlocks:
    def test_h0_coefficients(self):
        assert [h0_coefficient(n) for n in range(1, 11)] == [
            Fraction(-1, 2), -1, Fraction(-9, 8), Fraction(-5, 4), Fraction(-11, 8),
            Fraction(-3, 2), Fraction(-13, 8), Fraction(-7, 4), Fraction(-15, 8), -2,
        ]

    def test_beryllium_cross(self):
        block = sector_vee_matrix(sector(4, 0, 0, 1))
        assert str(block.symbolic[0][1]) == "sqrt(3)(23|32)"

    def test_carbon_triplet_p_cross(self):
        block = sector_vee_matrix(sector(6, 1, 1, 1))
        assert str(block.symbolic[0][1]) == "(23|32)"

    def test_nitrogen_quartet_diagonal(self):
        block = sector_vee_matrix(sector(7, 0, Fraction(3, 2), -1))
        assert str(block.symbolic[0][0]) == (
            "(11|11) + 4(11|22) - 2(12|21) + 6(11|33) - 3(13|31) + (22|22) + 6(22|33)"
            " - 3(23|32) + 3(33|44) - 3(34|43)"
        )

    def test_requires_maximal_spin_projection(self):
        with pytest.raises(ValueError):
            sector_vee_matrix(sector(4, 1, 1, 1, M_S=0))

    def test_neon_block(self):
        (block,) = sector_blocks(10)
        value = block.at(10).numeric[0][0]
        assert value == -2 * 100 + Fraction(2455271, 279936) * 10

    def test_lithium_value(self):
        block = sector_vee_matrix(sector(3, 0, Fraction(1, 2), 1)).at(3)
        assert block.numeric[0][0] == Fraction(-9, 8) * 9 + Fraction(5965, 5832) * 3
        assert round(float(block.numeric[0][0]), 4) == -7.0566

    @pytest.mark.parametrize("n", range(3, 11))
    def test_blocks_are_rational_up_to_one_root(self, n):
        for block in sector_blocks(n):
            evaluated = block.at(1)
            assert all(isinstance(x, Fraction) for x in evaluated.diagonal())
            if block.dimension == 2:
                cross = evaluated.cross()
                assert cross.a == 0 or cross.d == 0
                assert block.symbolic[0][1] == block.symbolic[1][0]

    @pytest.mark.parametrize("n", range(3, 11))
    def test_sector_route_matches_direct_route(self, n):
        Z = Fraction(7, 2)
        basis, h = php_matrix(n, Z)
        index = {m: i for i, m in enumerate(basis)}
        shift = h0_coefficient(n) * Z * Z
        for s in representative_sectors(n):
            block = sector_vee_matrix(s).at(Z)
            vecs = s.l3zero_basis
            for i, u in enumerate(vecs):
                for j, v in enumerate(vecs):
                    direct = sum(
                        u[a].real() * h[index[a]][index[b]] * v[b].real() for a in u for b in v
                    )
                    raw = expansion_matrix_element(u, v).rational_part(Z)
                    if i == j:
                        raw += shift * u.norm2()
                    assert direct == raw
                    normalized = block.numeric[i][j]
                    expected_sq = direct * direct / (u.norm2() * v.norm2())
                    assert (normalized * normalized).rational() == expected_sq
                    assert normalized.sign() == (direct > 0) - (direct < 0)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_php_commutes_with_symmetries(self, n):
        _, h = php_matrix(n, 5)
        for name in ("L2", "S2", "L3", "S3", "R"):
            assert _commutator_vanishes(h, assemble_operator(name, n)), name

    def test_php_is_symmetric(self):
        _, h = php_matrix(6, 1)
        assert all(h[i][j] == h[j][i] for i in range(70) for j in range(70))


def _load_transcripts():
    return json.loads((DATA / "vee_tables.json").read_text(encoding="utf-8"))


class TestTranscripts:
    """Symbolic blocks against transcribed tables; cross terms are compared up to sign."""

    @pytest.mark.parametrize("n", range(3, 11))
    def test_sector_inventory(self, n):
        rows = [r for r in _load_transcripts() if r["N"] == n]
        expected = Counter((r["L2"], Fraction(r["S2"]), r["R"]) for r in rows)
        actual = Counter(
            (b.term.L * (b.term.L + 1), b.term.S * (b.term.S + 1), b.term.parity) for b in sector_blocks(n)
        )
        assert actual == expected

    @pytest.mark.parametrize("row", _load_transcripts(), ids=lambda r: f"N{r['N']}-L{r['L2']}-S{r['S2']}-R{r['R']}")
    def test_entries(self, row):
        blocks = {
            (b.term.L * (b.term.L + 1), b.term.S * (b.term.S + 1), b.term.parity): b
            for b in sector_blocks(row["N"])
        }
        block = blocks[(row["L2"], Fraction(row["S2"]), row["R"])]
        diag = [str(block.symbolic[i][i]) for i in range(block.dimension)]
        assert sorted(diag) == sorted(row["diagonal"])
        if row["cross"] is None:
            assert block.dimension == 1
        else:
            cross = block.symbolic[0][1]
            printed = SymbolicElement.parse(row["cross"])
            assert cross in (printed, -printed)

import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate
from scipy.special import spherical_jn

from ptatom.integrals import (
    INTEGRAL_TABLE,
    IntegralSymbol,
    UnknownIntegralError,
    canonical_symbol,
    derived_value,
    exact_value,
    fourier_product,
    is_exchange,
    oracle_value,
    sphere_moment,
    table_csv,
)

# Reference values of the eleven integrals, in table order.
PRINTED = [
    ("(11|11)", "5/8"),
    ("(11|22)", "17/81"),
    ("(12|21)", "16/729"),
    ("(22|22)", "77/512"),
    ("(11|33)", "59/243"),
    ("(13|31)", "112/6561"),
    ("(22|33)", "83/512"),
    ("(23|32)", "15/512"),
    ("(33|33)", "501/2560"),
    ("(33|44)", "447/2560"),
    ("(34|43)", "27/2560"),
]

labels = st.integers(min_value=1, max_value=5)
symbols = st.builds(IntegralSymbol, labels, labels, labels, labels)


class TestTable:
    def test_matches_printed_values(self):
        assert [(str(s), str(v)) for s, v in INTEGRAL_TABLE.items()] == PRINTED

    def test_examples(self):
        assert exact_value("(11|11)", 1) == Fraction(5, 8)
        assert exact_value("(34|43)", 6) == Fraction(81, 1280)
        assert exact_value("(13|31)") == Fraction(112, 6561)

    def test_csv(self):
        lines = table_csv().splitlines()
        assert lines[0] == "symbol,value,decimal"
        assert len(lines) == 12
        assert lines[-1].startswith("(34|43),27/2560,")

    def test_unknown_integral(self):
        with pytest.raises(UnknownIntegralError):
            exact_value("(11|12)")

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            IntegralSymbol.parse("(16|11)")


class TestCanonicalization:
    def test_axis_relabeling(self):
        assert canonical_symbol("(24|42)") == IntegralSymbol.parse("(23|32)")
        assert canonical_symbol("(55|44)") == IntegralSymbol.parse("(33|44)")
        assert canonical_symbol("(31|13)") == IntegralSymbol.parse("(13|31)")

    def test_exchange_form(self):
        assert str(canonical_symbol("(12|12)")) == "(12|21)"
        assert is_exchange(IntegralSymbol.parse("(45|54)"))
        assert not is_exchange(IntegralSymbol.parse("(44|55)"))

    @given(symbols)
    def test_idempotent_and_invariant(self, sym):
        c = sym.canonical()
        assert c.canonical() == c
        for v in sym.variants():
            assert v.canonical() == c

    @given(symbols)
    def test_vanishing_is_class_invariant(self, sym):
        assert all(v.vanishes_by_symmetry() == sym.vanishes_by_symmetry() for v in sym.variants())

    @given(symbols)
    def test_every_nonvanishing_two_index_class_is_tabulated(self, sym):
        # Classes built from two spatial labels in the pattern (aa|bb) or (ab|ba) are all in the table.
        a, b = sym.a, sym.b
        for s in (IntegralSymbol(a, a, b, b), IntegralSymbol(a, b, b, a)):
            assert s.canonical() in INTEGRAL_TABLE

    def test_odd_symbols_vanish(self):
        assert exact_value("(13|11)") == 0
        assert exact_value("(34|55)") == 0
        assert derived_value("(13|11)") == 0


class TestThreeRoutes:
    @pytest.mark.parametrize("Z", [1, 6, 20])
    def test_derived_equals_table_exactly(self, Z):
        for sym, v in INTEGRAL_TABLE.items():
            assert derived_value(sym, Z) == v * Z

    @pytest.mark.parametrize("Z", [1, 6, 20])
    def test_oracle_agrees(self, Z):
        for sym, v in INTEGRAL_TABLE.items():
            numeric = oracle_value(sym, Z)
            assert abs(numeric - float(v * Z)) <= 1e-8 * float(v * Z), sym

    def test_oracle_examples(self):
        assert abs(oracle_value("(11|11)") - 0.625) < 1e-9
        assert abs(oracle_value("(23|32)") - 0.029296875) < 1e-9
        assert abs(oracle_value("(33|44)", 2) - 2 * 447 / 2560) < 1e-9

    @given(symbols)
    def test_table_lookup_respects_symmetry(self, sym):
        if sym.vanishes_by_symmetry():
            assert exact_value(sym) == 0
        elif sym.canonical() in INTEGRAL_TABLE:
            assert exact_value(sym) == derived_value(sym)


class TestPhysicalBounds:
    def test_positive(self):
        assert all(v > 0 for v in INTEGRAL_TABLE.values())

    def test_schwarz_inequalities(self):
        pairs = [(a, b) for a, b in product(range(1, 4), repeat=2) if a < b]
        for a, b in pairs:
            aa = exact_value(IntegralSymbol(a, a, a, a))
            bb = exact_value(IntegralSymbol(b, b, b, b))
            coulomb = exact_value(IntegralSymbol(a, a, b, b))
            exchange = exact_value(IntegralSymbol(a, b, b, a))
            assert exchange < coulomb
            assert coulomb * coulomb < aa * bb
            assert exchange * exchange < aa * bb

    def test_p_orbital_hierarchy(self):
        assert exact_value("(33|33)") == exact_value("(33|44)") + 2 * exact_value("(34|43)")


# Hydrogenic orbitals, for the direct real-space transform below.
def _radial(label: int, Z: float):
    if label == 1:
        return lambda r: math.sqrt(Z**3 / math.pi) * math.exp(-Z * r), 0
    if label == 2:
        return lambda r: math.sqrt(Z**3 / (32 * math.pi)) * (2 - Z * r) * math.exp(-Z * r / 2), 0
    return lambda r: math.sqrt(Z**5 / (32 * math.pi)) * r * math.exp(-Z * r / 2), 1


_AXIS_OF_LABEL = {3: 2, 4: 0, 5: 1}


def _bessel_transform(a: int, b: int, k: tuple[float, float, float], Z: float) -> complex:
    """``integral phi_a phi_b exp(-i k.x)`` by a radial Bessel integral (s-s, s-p and p-p off-axis)."""
    fa, la = _radial(a, Z)
    fb, lb = _radial(b, Z)
    ell = la + lb
    kn = math.sqrt(sum(c * c for c in k))
    radial, _ = integrate.quad(lambda r: r * r * fa(r) * fb(r) * spherical_jn(ell, kn * r), 0, math.inf, limit=200)
    angular = 1.0
    for label in (a, b):
        if label >= 3:
            angular *= k[_AXIS_OF_LABEL[label]] / kn
    return (-1j) ** ell * 4 * math.pi * radial * angular


class TestFourierProducts:
    @pytest.mark.parametrize("pair", [(a, b) for a in range(1, 6) for b in range(a, 6)])
    def test_orthonormality_at_zero(self, pair):
        value = fourier_product(pair).evaluate((0.0, 0.0, 0.0), Z=1.7)
        assert abs(value - (1 if pair[0] == pair[1] else 0)) < 1e-12

    @pytest.mark.parametrize("pair", [(1, 1), (1, 2), (2, 2), (1, 3), (2, 4), (3, 4), (4, 5)])
    @pytest.mark.parametrize("Z", [1.0, 2.5])
    def test_matches_bessel_transform(self, pair, Z):
        for k in ((0.3, -0.7, 1.1), (1.9, 0.4, 0.2)):
            closed = fourier_product(pair).evaluate(k, Z)
            numeric = _bessel_transform(*pair, k, Z)
            assert abs(closed - numeric) < 1e-9

    def test_sphere_moments(self):
        assert sphere_moment((0, 0, 0)) == 1
        assert sphere_moment((2, 0, 0)) == Fraction(1, 3)
        assert sphere_moment((2, 2, 0)) == Fraction(1, 15)
        assert sphere_moment((4, 0, 0)) == Fraction(1, 5)
        assert sphere_moment((1, 1, 0)) == 0

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from igusa_laurent.rational_qt import RationalQT, divide_by_binomial
from igusa_laurent.series import asymptotic_families, laurent_coefficients, split

Q = Fraction(5)


def geo(e, d):
    return RationalQT.geometric(e, d)


def mono(c, qe, te):
    return RationalQT.monomial(c, qe, te)


def test_arithmetic_and_equality():
    a = mono(1, -1, 2) * geo(1, 2)
    b = geo(1, 2) - RationalQT.constant(1)
    assert a == b
    assert (a - b).reduced().is_zero()
    assert a + b == a * 2


def test_reduced_cancels_factor():
    r = RationalQT({(0, 0, ()): Fraction(1), (-2, 6, ()): Fraction(-1)}, [(1, 3, 1)])
    red = r.reduced()
    assert red.factors() == []
    assert red == RationalQT({(0, 0, ()): Fraction(1), (-1, 3, ()): Fraction(1)})


def test_divide_by_binomial_rejects():
    assert divide_by_binomial({(0, 0, ()): Fraction(1)}, 1, 1) is None


def test_symbols_and_substitute():
    r = RationalQT.symbol("N_a") * geo(1, 1) + RationalQT.symbol("N_b")
    assert r.symbols() == {"N_a", "N_b"}
    s = r.substitute({"N_a": 2, "N_b": 3})
    assert s.symbols() == set()
    assert s.evaluate(Q, Fraction(1, 3)) == Fraction(2) / (1 - Fraction(1, 15)) + 3


def test_json_roundtrip():
    r = (RationalQT.symbol("N_x") * mono(3, -2, 1) + 1) * geo(1, -3) * geo(5, 6)
    assert RationalQT.from_json(r.to_json()) == r


@given(st.integers(-3, 3), st.integers(-4, 4), st.integers(1, 4), st.integers(-3, 3).filter(bool))
def test_evaluate_consistent(qe, te, e, d):
    r = mono(2, qe, te) * geo(e, d)
    q, t = Fraction(7), Fraction(2, 3)
    assert r.evaluate(q, t) == 2 * q**qe * t**te / (1 - q ** (-e) * t**d)


def test_closed_form_expansion():
    # (1-q^-1) q^-2 t^-3 / (1 - q^-1 t^-3) at q = 5
    num = {-3: (1 - 1 / Q) / Q**2}
    coeffs = laurent_coefficients(num, [(1 / Q, -3)], -12, 12)
    for m in range(-12, 13):
        if m < 0 and m % 3 == 0:
            k = -m // 3 - 1
            assert coeffs[m] == (1 - 1 / Q) * Q ** (-2 - k)
        else:
            assert coeffs[m] == 0
    fams = asymptotic_families(num, [(1 / Q, -3)], 5, "neg")
    assert len(fams) == 1
    fam = fams[0]
    assert fam.gamma == Fraction(-1, 3) and fam.period == 3 and fam.degree == 0
    assert all(fam.value(3 * (k + 1)) == coeffs[-3 * (k + 1)] for k in range(4))
    assert asymptotic_families(num, [(1 / Q, -3)], 5, "pos") == []


def test_positive_side_only():
    coeffs = laurent_coefficients({0: Fraction(1)}, [(1 / Q, 1)], -5, 5)
    assert all(coeffs[m] == 0 for m in range(-5, 0))
    assert all(coeffs[m] == Q ** (-m) for m in range(0, 6))


def test_mixed_directions_match_direct_product():
    # 1/((1 - t/5)(1 - 1/(25 t))): coefficient of t^m is sum_j 5^-(m+j) 25^-j
    coeffs = laurent_coefficients({0: Fraction(1)}, [(1 / Q, 1), (1 / Q**2, -1)], -4, 4)
    for m in range(-4, 5):
        j0 = max(0, -m)
        # geometric tail in j, exact closed form
        first = Q ** (-(m + j0)) * Q ** (-2 * j0)
        assert coeffs[m] == first / (1 - Q ** (-3))


def test_double_pole_family_degree():
    fams = asymptotic_families({0: Fraction(1)}, [(1 / Q, 2), (1 / Q, 2)], 5, "pos")
    assert len(fams) == 1 and fams[0].degree == 1
    coeffs = laurent_coefficients({0: Fraction(1)}, [(1 / Q, 2), (1 / Q, 2)], 0, 12)
    for l in range(6):
        assert coeffs[2 * l] == (l + 1) * Q ** (-l)
        assert fams[0].value(2 * l) == coeffs[2 * l]


@given(st.lists(st.tuples(st.integers(1, 3), st.integers(-3, 3).filter(bool)), min_size=1, max_size=3),
       st.dictionaries(st.integers(-3, 3), st.integers(-3, 3).filter(bool), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_families_reproduce_coefficients(factors, num):
    num = {k: Fraction(v) for k, v in num.items()}
    fs = [(Q ** (-e), d) for e, d in factors]
    coeffs = laurent_coefficients(num, fs, -30, 30)
    for side, sign in (("pos", 1), ("neg", -1)):
        fams = asymptotic_families(num, fs, 5, side)
        for m in range(15, 31):
            assert sum((f.value(m) for f in fams), Fraction(0)) == coeffs[sign * m]


def test_split_rejects_shared_root():
    from igusa_laurent.series import SeriesError

    with pytest.raises(SeriesError):
        split({0: Fraction(1)}, [(Fraction(1), 1), (Fraction(1), -1)])

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from igusa_laurent.laurent import parse
from igusa_laurent.rational_qt import RationalQT
from igusa_laurent.zeta import (
    AsymptoticsNotCertified, DegenerateError, L_tau, S_tau, S_tau_shifted, analyse,
    asymptotic_terms, candidate_poles, denominator_real_parts, pole_multiplicities, series_expand,
    zeta_first_quadrant,
)

from conftest import random_nondegenerate

G = parse("x^-3+y^-2+y^4")
F1 = parse("x^-3+y^2+y^4")
# single-cone attainable fan with two edges of equal ratio
DOUBLE = parse("x^-1*y^-1+x+y")

# exact coefficients of the expansion for G at p = 5, keyed by ord f
G_SPECTRUM_P5 = {
    -6: Fraction(36279296136, 953674296875),
    -5: Fraction(500, 12207031),
    -4: Fraction(1172187476, 38146971875),
    -3: Fraction(1171887476, 7629394375),
    -2: Fraction(195312996, 1525878875),
    -1: Fraction(4, 61035155),
    0: Fraction(170898438, 305175775),
    1: Fraction(97656252, 1525878875),
    2: Fraction(97656252, 7629394375),
    6: Fraction(97656252, 4768371484375),
}


def lattice_sum(cone, P, q, t, e=0, R=70):
    total = 0.0
    for a1 in range(R):
        for a2 in range(R):
            a = (a1, a2)
            if a != (0, 0) and min(a) >= e and cone.contains_interior(a):
                total += q ** (-(a1 + a2)) * t ** P.d(a)
    return total


def test_L_tau_forms():
    q, t = Fraction(7), Fraction(1, 3)
    N = 5
    std = L_tau(N).evaluate(q, t)
    assert std == ((q - 1) ** 2 - N * (1 - t) / (1 - t / q)) / q**2
    alternate = L_tau(N, "printed").evaluate(q, t)
    assert alternate - std == ((q**2 - 1) - (q - 1) ** 2) / q**2
    with pytest.raises(ValueError):
        L_tau(N, "other")


def test_rows_of_g():
    Z = zeta_first_quadrant(G, 5)
    assert Z.gamma_N == 2
    got = [(r.cone.generators, r.N) for r in Z.rows]
    assert got == [(((1, 0),), 0), (((2, 3),), 4), (((0, 1),), 0),
                   (((1, 0), (2, 3)), 0), (((2, 3), (0, 1)), 0)]


def test_symbolic_counts_of_g():
    Z = zeta_first_quadrant(G)
    assert Z.total.symbols() == {"N_Gamma", Z.rows[1].N}
    numeric = Z.total.substitute({"N_Gamma": 2, Z.rows[1].N: 4})
    assert numeric == zeta_first_quadrant(G, 5).total


def test_degenerate_prime_rejected():
    with pytest.raises(DegenerateError):
        zeta_first_quadrant(parse("x^-2+2*x^-1*y^-1+y^-2+x"), 7)


def test_frozen_spectrum():
    spec = series_expand(zeta_first_quadrant(G, 5).total, 5, 6)
    for k, v in G_SPECTRUM_P5.items():
        assert spec.coefficients[k] == v
    assert spec.V(3) == G_SPECTRUM_P5[-3]


@pytest.mark.parametrize("ball", [0, 1, 2])
def test_total_mass(ball):
    for f, p in [(G, 5), (F1, 5), (DOUBLE, 2)]:
        Z = zeta_first_quadrant(f, p, ball=ball).total
        assert Z.evaluate(Fraction(p), Fraction(1)) == Fraction(p) ** (-2 * ball)


def test_simple_refinement_same_zeta():
    for f, p in [(G, 5), (F1, 5), (DOUBLE, 2)]:
        P, FA, FP = analyse(f)
        for ball in (0, 1):
            a = zeta_first_quadrant(f, p, ball=ball, fan=FA).total
            b = zeta_first_quadrant(f, p, ball=ball, fan=FP).total
            assert (a - b).reduced().is_zero()


def test_lattice_sums_match_brute_force():
    q = 5.0
    for f in (G, F1, DOUBLE):
        P, FA, FP = analyse(f)
        for F in (FA, FP):
            for cone in F.cones:
                for t in (0.9, 1.1):
                    want = lattice_sum(cone, P, q, t)
                    got = float(S_tau(cone, P).evaluate(q, t))
                    assert got == pytest.approx(want, rel=1e-12, abs=1e-15)
                    for e in (1, 2, 3):
                        want = lattice_sum(cone, P, q, t, e)
                        got = float(S_tau_shifted(cone, P, e).evaluate(q, t))
                        assert got == pytest.approx(want, rel=1e-12, abs=1e-15)


def test_ball1_closed_form():
    q_inv = RationalQT.monomial(1, -1)
    want = (RationalQT.constant(1) - q_inv) * RationalQT.monomial(1, -2, -3) * RationalQT.geometric(1, -3)
    assert zeta_first_quadrant(F1, 5, ball=1).total == want
    assert zeta_first_quadrant(F1, None, ball=1).total == want


def test_poles_of_g():
    P, FA, FP = analyse(G)
    poles, strip = candidate_poles(FA, P)
    assert {x.real_part for x in poles} == {Fraction(1, 3), Fraction(5, 6), Fraction(1, 2), Fraction(-1)}
    assert strip.alpha == Fraction(1, 3) and strip.alpha_max == Fraction(5, 6)
    assert strip.beta == -1 and strip.B == []
    assert pole_multiplicities(FA, P, strip)["beta"] is None
    plus = {x.real_part for x in candidate_poles(FP, P)[0]}
    assert plus - {x.real_part for x in poles} == {Fraction(2, 3), Fraction(3, 4)}
    Z = zeta_first_quadrant(G, 5).total
    assert denominator_real_parts(Z) <= {x.real_part for x in poles}


def test_double_pole():
    P, FA, FP = analyse(DOUBLE)
    _, strip = candidate_poles(FA, P)
    assert pole_multiplicities(FA, P, strip) == {"alpha": 2, "beta": None, "alpha_max": 2}
    Z = zeta_first_quadrant(DOUBLE, 2).total
    assert (1, -1, 2) in Z.factors()
    spec = series_expand(Z, 2, 10)
    q = Fraction(2)
    # ord f = -n exactly when ord x + ord y = n > 0
    for n in range(1, 11):
        assert spec.V(n) == (1 - 1 / q) ** 2 * (n + 1) * q ** (-n)
    fams = asymptotic_terms(Z, 2, "neg")
    assert max(f.degree for f in fams) == 1


def test_asymptotics_gated_on_simple_constant_pole():
    P, FA, FP = analyse(G)
    _, strip = candidate_poles(FA, P)
    Z = zeta_first_quadrant(G, 5).total
    with pytest.raises(AsymptoticsNotCertified):
        asymptotic_terms(Z, 5, "pos", strip=strip, mu_beta=1)
    fams = asymptotic_terms(Z, 5, "neg", strip=strip)
    spec = series_expand(Z, 5, 30)
    for m in range(20, 31):
        assert sum((f.value(m) for f in fams), Fraction(0)) == spec.V(m)


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_random_inputs_structural(seed):
    f, p = random_nondegenerate(random.Random(seed), cap=13)
    P, FA, FP = analyse(f)
    Z = zeta_first_quadrant(f, p).total
    assert Z.evaluate(Fraction(p), Fraction(1)) == 1
    cands = {x.real_part for x in candidate_poles(FA, P)[0]}
    assert denominator_real_parts(Z) <= cands
    spec = series_expand(Z, p, 8)
    assert all(v >= 0 for v in spec.coefficients.values())
    assert sum(spec.coefficients.values()) <= 1

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from igusa_laurent.finite_field import (
    PrimeSearchExhausted, SupportCollapseError, count_torus_zeros, face_count, find_good_prime,
    is_nondegenerate_mod_p, is_prime, next_prime,
)
from igusa_laurent.laurent import BadPrimeError, LaurentPolynomial, parse, reduce_mod_p
from igusa_laurent.polytope import newton_polytope

G = parse("x^-3+y^-2+y^4")


def naive_count(f, p):
    n = 0
    for x, y in itertools.product(range(1, p), repeat=2):
        v = 0
        for (a, b), c in f.items():
            v += c.numerator * pow(c.denominator, -1, p) * pow(x, a, p) * pow(y, b, p)
        n += v % p == 0
    return n


def test_primes():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert next_prime(24) == 29


def test_small_counts():
    assert count_torus_zeros(reduce_mod_p(parse("x^3+y^2"), 7)) == 6
    assert count_torus_zeros(reduce_mod_p(parse("x+y"), 3)) == 2


def test_counts_threads_agree():
    fbar = reduce_mod_p(G, 11)
    assert count_torus_zeros(fbar, threads=1) == count_torus_zeros(fbar, threads=3)


@given(st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(1, 6),
                       min_size=2, max_size=4),
       st.sampled_from([3, 5, 7, 11]))
@settings(max_examples=60)
def test_count_matches_naive(terms, p):
    f = LaurentPolynomial(terms)
    try:
        fbar = reduce_mod_p(f, p)
    except BadPrimeError:
        return
    assert count_torus_zeros(fbar) == naive_count(f, p)


def test_good_prime_skips_exponent_primes():
    # p = 2, 3 divide the clearing exponents 2, 3
    assert find_good_prime(G) == 5
    with pytest.raises(BadPrimeError):
        is_nondegenerate_mod_p(G, 3)


def test_degenerate_witness():
    res = is_nondegenerate_mod_p(parse("x^2+2*x*y+y^2"), 7)
    assert not res
    assert res.face.dim == 1 and res.point == (1, 6)
    assert res.to_json()["witness"]["point"] == [1, 6]


def test_lower_dimensional_support():
    assert is_nondegenerate_mod_p(parse("x*y"), 5)
    assert is_nondegenerate_mod_p(parse("x+y+1"), 2)


def test_support_collapse():
    with pytest.raises(SupportCollapseError):
        is_nondegenerate_mod_p(parse("x + 5y + y^2"), 5)


def test_prime_search_exhausted():
    with pytest.raises(PrimeSearchExhausted):
        find_good_prime(parse("x^2+2*x*y+y^2"), cap=30)


def test_face_counts_of_g():
    P = newton_polytope(G)
    edge = next(F for F in P.faces() if F.dim == 1 and F.normal == (2, 3))
    # x^-3 + y^-2 = 0 has 4 torus solutions mod 5
    assert face_count(G, edge, 5).count == 4
    assert face_count(G, P.full_face(), 5).count == naive_count(G, 5)


def test_degenerate_at_infinity_only():
    # xy + x^6 + y^6 + (x - y)^7: the top edge carries (x - y)^7
    from math import comb

    terms = {(1, 1): 1, (6, 0): 1, (0, 6): 1}
    for k in range(8):
        terms[(k, 7 - k)] = terms.get((k, 7 - k), 0) + comb(7, k) * (-1) ** (7 - k)
    res = is_nondegenerate_mod_p(LaurentPolynomial(terms), 11)
    assert not res
    assert res.face.dim == 1 and res.point[0] == res.point[1]

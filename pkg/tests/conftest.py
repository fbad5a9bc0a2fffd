import random

from igusa_laurent.finite_field import PrimeSearchExhausted, find_good_prime
from igusa_laurent.laurent import LaurentPolynomial
from igusa_laurent.polytope import DegeneratePolytopeError, newton_polytope

ACCEPTANCE_LINES: list[str] = []


def random_laurent(rng: random.Random, n_terms=(3, 5), span=4, coeffs=(1, 2, 3)):
    """Random Laurent polynomial whose Newton polytope is two dimensional."""
    while True:
        n = rng.randint(*n_terms)
        terms = {}
        while len(terms) < n:
            e = (rng.randint(-span, span), rng.randint(-span, span))
            terms[e] = rng.choice(coeffs) * rng.choice((1, -1))
        f = LaurentPolynomial(terms)
        try:
            newton_polytope(f)
        except DegeneratePolytopeError:
            continue
        return f


def random_nondegenerate(rng: random.Random, cap=40, **kw):
    """Random input together with its smallest good prime (<= cap)."""
    while True:
        f = random_laurent(rng, **kw)
        try:
            return f, find_good_prime(f, cap=cap)
        except PrimeSearchExhausted:
            continue


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

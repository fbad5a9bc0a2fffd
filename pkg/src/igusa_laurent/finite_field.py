"""Torus point counts and non-degeneracy over prime fields."""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import BadPrimeError, LaurentPolynomial, ModPolynomial, reduce_mod_p
from .parallel import parallel_map
from .polytope import Face, support_faces


class SupportCollapseError(ValueError):
    pass


class PrimeSearchExhausted(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def next_prime(n: int) -> int:
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


def _count_rows(args) -> int:
    fbar, xs = args
    p = fbar.p
    count = 0
    for x in xs:
        for y in range(1, p):
            if fbar.evaluate(x, y) == 0:
                count += 1
    return count


def count_torus_zeros(fbar: ModPolynomial, p: int | None = None, threads: int = 1) -> int:
    """Number of (x, y) in (F_p^*)^2 where fbar vanishes, by exhaustion."""
    p = fbar.p if p is None else p
    if p != fbar.p:
        raise ValueError("prime mismatch")
    xs = list(range(1, p))
    chunks = [(fbar, xs[i::max(threads, 1)]) for i in range(max(threads, 1))]
    return sum(parallel_map(_count_rows, chunks, threads))


@dataclass
class TorusCount:
    face: Face
    p: int
    count: int

    def to_json(self) -> dict:
        return {"face": self.face.to_json(), "p": self.p, "count": self.count}


@dataclass
class NondegeneracyResult:
    ok: bool
    p: int
    face: Face | None = None
    point: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"p": self.p, "nondegenerate": self.ok}
        if not self.ok:
            out["witness"] = {"face": self.face.to_json(), "point": list(self.point)}
        return out


def singular_torus_points(g: ModPolynomial) -> list[tuple[int, int]]:
    """Common zeros of g, dg/dx, dg/dy on the torus."""
    p = g.p
    gx, gy = g.gradient()
    out = []
    for x in range(1, p):
        for y in range(1, p):
            if g.evaluate(x, y) == 0 and gx.evaluate(x, y) == 0 and gy.evaluate(x, y) == 0:
                out.append((x, y))
    return out


def _hat(g: ModPolynomial) -> tuple[ModPolynomial, int, int]:
    d1 = max(0, -min(e[0] for e in g.terms))
    d2 = max(0, -min(e[1] for e in g.terms))
    return g.shift(d1, d2), d1, d2


def is_nondegenerate_mod_p(f: LaurentPolynomial, p: int) -> NondegeneracyResult:
    """Check every face of the Newton polytope, including the polytope itself.

    The test runs on the denominator-cleared face function; it is rejected when p
    divides a clearing exponent, since the equivalence with the uncleared system
    needs those exponents to be nonzero mod p.
    """
    fbar = reduce_mod_p(f, p)
    if fbar.support() != set(f):
        raise SupportCollapseError(f"support of f collapses modulo {p}")
    for face in support_faces(f):
        g = fbar.restrict(face.points)
        hat, d1, d2 = _hat(g)
        if (d1 and d1 % p == 0) or (d2 and d2 % p == 0):
            raise BadPrimeError(f"p = {p} divides a clearing exponent of face {face.label()}")
        bad = singular_torus_points(hat)
        if bad:
            return NondegeneracyResult(False, p, face, bad[0])
    return NondegeneracyResult(True, p)


def find_good_prime(f: LaurentPolynomial, start: int = 2, cap: int = 1000) -> int:
    p = next_prime(start)
    while p <= cap:
        try:
            if is_nondegenerate_mod_p(f, p):
                return p
        except (BadPrimeError, SupportCollapseError):
            pass
        p = next_prime(p + 1)
    raise PrimeSearchExhausted(f"no prime in [{start}, {cap}] passes the non-degeneracy test")


def face_count(f: LaurentPolynomial, face: Face, p: int, threads: int = 1) -> TorusCount:
    fbar = reduce_mod_p(f, p).restrict(face.points)
    return TorusCount(face, p, count_torus_zeros(fbar, p, threads))

"""Laurent polynomials in two variables with rational coefficients."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Exponent = tuple[int, int]


class ParseError(ValueError):
    """Raised for malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ConstantPolynomialError(ValueError):
    pass


class BadPrimeError(ValueError):
    pass


class LaurentPolynomial:
    """Sparse map from exponent vectors to nonzero Fractions.

    Instances are immutable; arithmetic returns new objects.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for e, c in items:
            e = (int(e[0]), int(e[1]))
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        self._terms = {e: acc[e] for e in sorted(acc) if acc[e] != 0}
        self._hash = None

    @classmethod
    def monomial(cls, e: Exponent, c=1) -> "LaurentPolynomial":
        return cls({e: c})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, e: Exponent) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return LaurentPolynomial(list(self.items()) + list(other.items()))

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return LaurentPolynomial({e: c * other for e, c in self.items()})
        out: dict[Exponent, Fraction] = {}
        for (a1, a2), c in self.items():
            for (b1, b2), d in other.items():
                k = (a1 + b1, a2 + b2)
                out[k] = out.get(k, Fraction(0)) + c * d
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def shift(self, d1: int, d2: int) -> "LaurentPolynomial":
        """Multiply by x^d1 y^d2."""
        return LaurentPolynomial({(e1 + d1, e2 + d2): c for (e1, e2), c in self.items()})

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self._terms)

    def evaluate(self, x, y):
        """Evaluate at a point; x, y may be Fractions or anything supporting ** with ints."""
        total = 0
        for (e1, e2), c in self.items():
            total += c * x**e1 * y**e2
        return total

    def __repr__(self):
        return f"LaurentPolynomial({self})"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class HatDecomposition:
    hat: LaurentPolynomial
    d1: int
    d2: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|(\^|\*\*)|([+\-])|(\*)|(/))")


def parse(text: str) -> LaurentPolynomial:
    """Parse a sum of monomials such as ``x^-3 + 2*y^-2 - 3x y^4``.

    INPUT: text with integer (or ``a/b``) coefficients, variables ``x`` and ``y``,
    exponents introduced by ``^`` or ``**`` and possibly negative.

    OUTPUT: the canonical LaurentPolynomial; raises ParseError with the position of
    the first bad character, or ConstantPolynomialError if the result is constant.
    """
    pos = 0
    n = len(text)
    terms: dict[Exponent, Fraction] = {}

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def read_int() -> int | None:
        nonlocal pos
        skip()
        m = re.match(r"\d+", text[pos:])
        if not m:
            return None
        pos += m.end()
        return int(m.group())

    def read_exponent() -> int:
        nonlocal pos
        skip()
        sign = 1
        if pos < n and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
            skip()
        elif pos < n and text[pos] == "(":
            pos += 1
            value = read_exponent()
            skip()
            if pos >= n or text[pos] != ")":
                raise ParseError("expected ')'", pos)
            pos += 1
            return value
        v = read_int()
        if v is None:
            raise ParseError("expected exponent", pos)
        return sign * v

    skip()
    if pos >= n:
        raise ParseError("empty input", pos)
    first = True
    while True:
        skip()
        if pos >= n:
            break
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ParseError("expected '+' or '-'", pos)
        first = False
        skip()
        coeff = Fraction(sign)
        seen_factor = False
        v = read_int()
        if v is not None:
            coeff *= v
            seen_factor = True
            skip()
            if pos < n and text[pos] == "/":
                pos += 1
                den = read_int()
                if not den:
                    raise ParseError("expected nonzero denominator", pos)
                coeff /= den
        e1 = e2 = 0
        while True:
            skip()
            if pos < n and text[pos] == "*" and not text.startswith("**", pos):
                pos += 1
                skip()
                if pos >= n or text[pos] not in "xy":
                    v = read_int()
                    if v is None:
                        raise ParseError("expected factor after '*'", pos)
                    coeff *= v
                    seen_factor = True
                    continue
            if pos < n and text[pos] in "xy":
                var = text[pos]
                pos += 1
                skip()
                k = 1
                if text.startswith("**", pos):
                    pos += 2
                    k = read_exponent()
                elif pos < n and text[pos] == "^":
                    pos += 1
                    k = read_exponent()
                if var == "x":
                    e1 += k
                else:
                    e2 += k
                seen_factor = True
                continue
            break
        if not seen_factor:
            raise ParseError("expected monomial", pos)
        terms[(e1, e2)] = terms.get((e1, e2), Fraction(0)) + coeff
    f = LaurentPolynomial(terms)
    if not f or f.is_constant():
        raise ConstantPolynomialError("constant/zero polynomial")
    return f


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_text(f: LaurentPolynomial) -> str:
    """Render in the grammar accepted by parse, in canonical term order."""
    if not f:
        return "0"
    parts = []
    for (e1, e2), c in f.items():
        sign = "-" if c < 0 else "+"
        a = abs(c)
        factors = []
        if e1:
            factors.append("x" if e1 == 1 else f"x^{e1}")
        if e2:
            factors.append("y" if e2 == 1 else f"y^{e2}")
        if a != 1 or not factors:
            factors.insert(0, _fmt_coeff(a))
        parts.append((sign, "*".join(factors)))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def support(f: LaurentPolynomial) -> set[Exponent]:
    return set(f)


def face_function(f: LaurentPolynomial, face) -> LaurentPolynomial:
    """Restriction of f to the support points lying on a face of its Newton polytope."""
    from .polytope import newton_polytope

    P = newton_polytope(f)
    if face not in P.faces():
        raise ValueError("face is not a face of the Newton polytope of f")
    return LaurentPolynomial({e: f[e] for e in face.points})


def hat_decomposition(f: LaurentPolynomial) -> HatDecomposition:
    """Write f = hat / (x^d1 y^d2) with hat a polynomial and (d1, d2) minimal."""
    if not f:
        raise ValueError("zero polynomial")
    d1 = max(0, -min(e[0] for e in f))
    d2 = max(0, -min(e[1] for e in f))
    return HatDecomposition(f.shift(d1, d2), d1, d2)


def gradient(f: LaurentPolynomial) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    dx = LaurentPolynomial({(e1 - 1, e2): c * e1 for (e1, e2), c in f.items() if e1})
    dy = LaurentPolynomial({(e1, e2 - 1): c * e2 for (e1, e2), c in f.items() if e2})
    return dx, dy


class ModPolynomial:
    """Laurent polynomial over F_p: exponent -> residue in 1..p-1."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: Mapping[Exponent, int]):
        self.p = p
        self.terms = {e: c % p for e, c in sorted(terms.items()) if c % p}

    def __eq__(self, other):
        return isinstance(other, ModPolynomial) and (self.p, self.terms) == (other.p, other.terms)

    def __repr__(self):
        return f"ModPolynomial(p={self.p}, {self.terms})"

    def support(self) -> set[Exponent]:
        return set(self.terms)

    def restrict(self, points) -> "ModPolynomial":
        pts = set(points)
        return ModPolynomial(self.p, {e: c for e, c in self.terms.items() if e in pts})

    def shift(self, d1: int, d2: int) -> "ModPolynomial":
        return ModPolynomial(self.p, {(a + d1, b + d2): c for (a, b), c in self.terms.items()})

    def gradient(self) -> tuple["ModPolynomial", "ModPolynomial"]:
        p = self.p
        dx = ModPolynomial(p, {(a - 1, b): c * a for (a, b), c in self.terms.items()})
        dy = ModPolynomial(p, {(a, b - 1): c * b for (a, b), c in self.terms.items()})
        return dx, dy

    def evaluate(self, x: int, y: int) -> int:
        """Value at a torus point (x, y nonzero mod p)."""
        p = self.p
        total = 0
        for (a, b), c in self.terms.items():
            total += c * pow(x, a, p) * pow(y, b, p)
        return total % p


def reduce_mod_p(f: LaurentPolynomial, p: int) -> ModPolynomial:
    out = {}
    for e, c in f.items():
        if c.denominator % p == 0:
            raise BadPrimeError(f"bad prime {p}: coefficient {c} has denominator divisible by p")
        out[e] = c.numerator * pow(c.denominator, -1, p)
    fbar = ModPolynomial(p, out)
    if not fbar.terms or set(fbar.terms) == {(0, 0)}:
        raise BadPrimeError(f"reduction of f modulo {p} is constant")
    return fbar


def to_json(f: LaurentPolynomial) -> dict:
    return {"terms": [{"e": [e1, e2], "c": rational_str(c)} for (e1, e2), c in f.items()]}


def from_json(data: dict) -> LaurentPolynomial:
    return LaurentPolynomial({(t["e"][0], t["e"][1]): Fraction(t["c"]) for t in data["terms"]})


def rational_str(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"

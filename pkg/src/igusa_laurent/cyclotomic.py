"""Exact sums of roots of unity, Dirichlet characters mod p^c, Gauss sums.

A root of unity is stored as its angle, a Fraction in [0, 1); a RootSum maps
angles to rational coefficients. Only the final conversion to a complex number
is inexact, and it carries an explicit error bound.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

_ULP = 2.0**-52


@dataclass(frozen=True)
class ComplexValue:
    re: float
    im: float
    err: float = 0.0

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return abs(self.value)

    def __add__(self, other: "ComplexValue") -> "ComplexValue":
        v = self.value + other.value
        return ComplexValue(v.real, v.imag, self.err + other.err + _ULP * abs(v))

    def __sub__(self, other: "ComplexValue") -> "ComplexValue":
        v = self.value - other.value
        return ComplexValue(v.real, v.imag, self.err + other.err + _ULP * abs(v))

    def __mul__(self, other: "ComplexValue") -> "ComplexValue":
        v = self.value * other.value
        err = abs(self) * other.err + abs(other) * self.err + self.err * other.err + 2 * _ULP * abs(v)
        return ComplexValue(v.real, v.imag, err)

    def agrees_with(self, other: "ComplexValue", tol: float = 0.0) -> bool:
        return abs(self.value - other.value) <= self.err + other.err + tol

    def to_json(self) -> dict:
        return {"re": self.re, "im": self.im, "err": self.err}

    @classmethod
    def exact(cls, x) -> "ComplexValue":
        x = Fraction(x)
        return cls(float(x), 0.0, abs(float(x)) * _ULP)


class RootSum:
    """Finite formal sum  sum_a c_a * exp(2 pi i a)  with rational a and c_a."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[Fraction, Fraction] = {}
        for a, c in (terms or {}).items():
            self._add(Fraction(a), Fraction(c))

    def _add(self, angle: Fraction, c: Fraction):
        angle = angle - math.floor(angle)
        v = self.terms.get(angle, Fraction(0)) + c
        if v:
            self.terms[angle] = v
        else:
            self.terms.pop(angle, None)

    def add_term(self, angle, c) -> None:
        self._add(Fraction(angle), Fraction(c))

    def __add__(self, other: "RootSum") -> "RootSum":
        out = RootSum(self.terms)
        for a, c in other.terms.items():
            out._add(a, c)
        return out

    def __neg__(self) -> "RootSum":
        return RootSum({a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "RootSum") -> "RootSum":
        return self + (-other)

    def __mul__(self, other) -> "RootSum":
        if not isinstance(other, RootSum):
            return RootSum({a: c * Fraction(other) for a, c in self.terms.items()})
        out = RootSum()
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                out._add(a + b, c * d)
        return out

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def rational_part(self) -> Fraction:
        return self.terms.get(Fraction(0), Fraction(0))

    def to_complex(self) -> ComplexValue:
        re = im = 0.0
        err = 0.0
        for a, c in sorted(self.terms.items()):
            z = float(c) * cmath.exp(2j * math.pi * float(a))
            re += z.real
            im += z.imag
            err += abs(float(c)) * 8 * _ULP
        return ComplexValue(re, im, err + (abs(re) + abs(im)) * len(self.terms) * _ULP)

    @classmethod
    def rational(cls, x) -> "RootSum":
        return cls({Fraction(0): Fraction(x)})


def fractional_part_p(x: Fraction, p: int) -> Fraction:
    """The p-adic fractional part {x}_p in [0, 1)."""
    x = Fraction(x)
    den = x.denominator
    n = 0
    while den % p == 0:
        den //= p
        n += 1
    if n == 0:
        return Fraction(0)
    mod = p**n
    r = (x.numerator * pow(den, -1, mod)) % mod
    return Fraction(r, mod)


def unit_residue(x: Fraction, p: int, n: int) -> int:
    """x mod p^n for a p-adic integer x given as a Fraction."""
    x = Fraction(x)
    mod = p**n
    return (x.numerator * pow(x.denominator, -1, mod)) % mod


def _is_primitive_root(g: int, p: int, c: int) -> bool:
    mod = p**c
    order = (p - 1) * p ** (c - 1)
    primes = {q for q in range(2, p) if (p - 1) % q == 0 and all(q % r for r in range(2, q))}
    if c > 1:
        primes.add(p)
    return all(pow(g, order // q, mod) != 1 for q in primes)


def smallest_primitive_root(p: int, c: int) -> int:
    if p == 2 and c > 2:
        raise ValueError("(Z/2^c)^* is not cyclic for c >= 3")
    mod = p**c
    for g in range(1, mod):
        if g % p and _is_primitive_root(g, p, c):
            return g
    raise ValueError(f"no primitive root mod {p}^{c}")


_DLOG_CACHE: dict[tuple[int, int], dict[int, int]] = {}


def discrete_log_table(p: int, c: int) -> dict[int, int]:
    key = (p, c)
    if key not in _DLOG_CACHE:
        g = smallest_primitive_root(p, c)
        mod = p**c
        table, x = {}, 1
        for j in range((p - 1) * p ** (c - 1)):
            table[x] = j
            x = x * g % mod
        _DLOG_CACHE[key] = table
    return _DLOG_CACHE[key]


@dataclass(frozen=True)
class CharacterSpec:
    """chi(g^j) = exp(2 pi i index j / phi(p^c)) on (Z/p^c)^*, g the smallest primitive root.

    conductor 0 is the trivial character.
    """

    p: int
    conductor: int
    index: int = 0

    @property
    def modulus(self) -> int:
        return self.p**self.conductor

    @property
    def order_of_group(self) -> int:
        return (self.p - 1) * self.p ** (self.conductor - 1) if self.conductor else 1

    def is_trivial(self) -> bool:
        return self.conductor == 0

    def angle(self, u) -> Fraction:
        """chi(u) as an angle, for a p-adic unit u (int or Fraction)."""
        if self.conductor == 0:
            return Fraction(0)
        r = unit_residue(Fraction(u), self.p, self.conductor)
        if r % self.p == 0:
            raise ValueError("character evaluated at a non-unit")
        j = discrete_log_table(self.p, self.conductor)[r]
        return Fraction(self.index * j % self.order_of_group, self.order_of_group)

    def inverse(self) -> "CharacterSpec":
        if self.conductor == 0:
            return self
        return CharacterSpec(self.p, self.conductor, (-self.index) % self.order_of_group)

    def label(self) -> str:
        return f"chi[c={self.conductor},k={self.index}]"

    def to_json(self) -> dict:
        return {"p": self.p, "conductor": self.conductor, "index": self.index}


def primitive_characters(p: int, c: int) -> list[CharacterSpec]:
    """All characters of conductor exactly c (c = 0 gives the trivial character)."""
    if c == 0:
        return [CharacterSpec(p, 0, 0)]
    n = (p - 1) * p ** (c - 1)
    if c == 1:
        return [CharacterSpec(p, 1, k) for k in range(1, n)]
    return [CharacterSpec(p, c, k) for k in range(n) if k % p]


def character_sum_at_conductor(chi: CharacterSpec) -> RootSum:
    """sum over v in (Z/p^c)^* of chi(v) Psi(v / p^c)."""
    c = chi.conductor
    mod = chi.p**c
    out = RootSum()
    for v in range(1, mod):
        if v % chi.p:
            out.add_term(chi.angle(v) + Fraction(v, mod), 1)
    return out


def gauss_sum(chi: CharacterSpec) -> RootSum:
    """(q - 1)^-1 q^(1 - c) sum_v chi(v) Psi(v / p^c)."""
    q = chi.p
    scale = Fraction(1, q - 1) * Fraction(q) ** (1 - chi.conductor)
    return character_sum_at_conductor(chi) * scale
